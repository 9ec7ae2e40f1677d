// peaks.hpp — Local-maxima detection with a prominence floor

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rabi {

struct Peak {
    std::size_t index{0};
    double value{0.0};
    double prominence{0.0};
};

// A peak is a strict local maximum (plateaus resolve to their first sample).
// Prominence: height above the higher of the two valleys reached before a
// strictly higher sample (or the sequence edge) on each side.
inline std::vector<Peak> find_peaks(std::span<const double> y, double min_height,
                                    double min_prominence) {
    std::vector<Peak> peaks;
    const std::size_t n = y.size();
    for (std::size_t i = 0; i < n; ++i) {
        const bool up = i == 0 || y[i] > y[i - 1];
        const bool down = i + 1 == n || y[i] >= y[i + 1];
        if (!(up && down) || !(y[i] >= min_height)) continue;

        double valley_left = y[i];
        for (std::size_t j = i; j-- > 0;) {
            if (y[j] > y[i]) break;
            if (y[j] < valley_left) valley_left = y[j];
        }
        double valley_right = y[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            if (y[j] > y[i]) break;
            if (y[j] < valley_right) valley_right = y[j];
        }
        const double prom = y[i] - std::max(valley_left, valley_right);
        if (prom >= min_prominence) peaks.push_back(Peak{i, y[i], prom});
    }
    return peaks;
}

} // namespace rabi
