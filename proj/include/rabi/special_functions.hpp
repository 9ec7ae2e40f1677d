// special_functions.hpp — Laguerre polynomials and displacement-operator matrix elements

#pragma once

#include <cmath>
#include <cstdlib>

#include "rabi/errors.hpp"

namespace rabi {

// L_n(x) by the stable upward three-term recurrence.
inline double laguerre(int n, double x) {
    if (n < 0) throw DomainError("laguerre: n must be >= 0");
    if (n == 0) return 1.0;
    double lm = 1.0;
    double l = 1.0 - x;
    for (int k = 1; k < n; ++k) {
        const double lp = ((2.0 * k + 1.0 - x) * l - k * lm) / (k + 1.0);
        lm = l;
        l = lp;
    }
    return l;
}

// Generalized L_n^(a)(x), integer a >= 0.
inline double assoc_laguerre(int n, int a, double x) {
    if (n < 0 || a < 0) throw DomainError("assoc_laguerre: n and a must be >= 0");
    if (n == 0) return 1.0;
    double lm = 1.0;
    double l = 1.0 + a - x;
    for (int k = 1; k < n; ++k) {
        const double lp = ((2.0 * k + 1.0 + a - x) * l - (k + a) * lm) / (k + 1.0);
        lm = l;
        l = lp;
    }
    return l;
}

// 1F1(-n, 1; z) reduces to L_n(z).
inline double kummer_1f1_neg_n(int n, double z) {
    return laguerre(n, z);
}

// <m|D(alpha)|n> for real alpha. Computed on the m >= n branch as
//   sqrt(n!/m!) alpha^{m-n} e^{-alpha^2/2} L_n^{(m-n)}(alpha^2)
// and extended by <m|D|n> = (-1)^{m-n} <n|D|m>.
inline double displacement_element(int m, int n, double alpha) {
    if (m < 0 || n < 0) throw DomainError("displacement_element: m, n must be >= 0");
    if (m < n) {
        const double sg = ((n - m) % 2 == 0) ? 1.0 : -1.0;
        return sg * displacement_element(n, m, alpha);
    }
    if (alpha == 0.0) return (m == n) ? 1.0 : 0.0;
    const double x = alpha * alpha;
    const double log_mag = -0.5 * x + (m - n) * std::log(std::abs(alpha)) +
                           0.5 * (std::lgamma(n + 1.0) - std::lgamma(m + 1.0));
    double sign = 1.0;
    if (alpha < 0.0 && (m - n) % 2 == 1) sign = -1.0;
    return sign * std::exp(log_mag) * assoc_laguerre(n, m - n, x);
}

} // namespace rabi
