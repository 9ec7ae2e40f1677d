// dynamics.hpp — Spectral time evolution, survival probability, collapse-revival profile

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "rabi/eigensolve.hpp"
#include "rabi/errors.hpp"
#include "rabi/peaks.hpp"
#include "rabi/regimes.hpp"
#include "rabi/state.hpp"

namespace rabi {

struct EvolutionPlan {
    Spectrum spectrum;
    JointState initial;
    Eigen::VectorXcd projections; // c_k = <phi_k | psi_0>
    std::vector<double> times;    // units of 1/omega
};

inline std::vector<double> make_time_grid(double t_max, double dt = 0.005) {
    if (!(t_max > 0.0) || !(dt > 0.0)) throw DomainError("make_time_grid: need t_max, dt > 0");
    std::vector<double> times;
    times.reserve(static_cast<std::size_t>(t_max / dt) + 2);
    for (double t = 0.0; t <= t_max + 0.5 * dt; t += dt) times.push_back(t);
    return times;
}

// The spectrum must span the initial state: sum |c_k|^2 >= 1 - tail_tol.
inline EvolutionPlan make_evolution_plan(Spectrum spectrum, JointState initial,
                                         std::vector<double> times) {
    if (spectrum.levels.empty()) throw ContractError("make_evolution_plan: empty spectrum");
    if (initial.amps.size() != spectrum.levels.front().vector.amps.size())
        throw ContractError("make_evolution_plan: state/spectrum dimension mismatch");
    Eigen::VectorXcd c(spectrum.levels.size());
    for (std::size_t k = 0; k < spectrum.levels.size(); ++k)
        c(k) = spectrum.levels[k].vector.overlap(initial);
    const double captured = c.squaredNorm();
    if (captured < 1.0 - spectrum.trunc.tail_tol)
        throw TruncationError("make_evolution_plan: spectrum captures only " +
                              std::to_string(captured) + " of the initial state");
    return EvolutionPlan{std::move(spectrum), std::move(initial), std::move(c), std::move(times)};
}

inline JointState evolve(const EvolutionPlan& plan, double t) {
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(plan.initial.amps.size());
    for (std::size_t k = 0; k < plan.spectrum.levels.size(); ++k) {
        const auto& level = plan.spectrum.levels[k];
        const std::complex<double> phase = std::polar(1.0, -level.energy * t);
        amps += phase * plan.projections(k) * level.vector.amps;
    }
    return JointState(std::move(amps)); // constructor renormalizes the truncation drift
}

// |<psi_0|psi(t)>|^2 = |sum_k |c_k|^2 e^{-i E_k t}|^2
inline double survival_probability(const EvolutionPlan& plan, double t) {
    std::complex<double> z = 0.0;
    for (std::size_t k = 0; k < plan.spectrum.levels.size(); ++k)
        z += std::norm(plan.projections(k)) *
             std::polar(1.0, -plan.spectrum.levels[k].energy * t);
    return std::norm(z);
}

inline std::vector<double> survival_trace(const EvolutionPlan& plan) {
    std::vector<double> out(plan.times.size());
    for (std::size_t i = 0; i < plan.times.size(); ++i)
        out[i] = survival_probability(plan, plan.times[i]);
    return out;
}

struct RevivalPeak {
    double time{0.0};
    double height{0.0};
};

// Local maxima of the survival probability above height 0.2 with prominence
// >= 0.1, excluding t = 0. Requires a grid covering at least [0, 4 pi] with
// step <= 0.01.
inline std::vector<RevivalPeak> revival_profile(const EvolutionPlan& plan) {
    const auto& times = plan.times;
    if (times.size() < 3 || times.front() > 1e-12 ||
        times.back() < 4.0 * std::numbers::pi - 1e-9)
        throw DomainError("revival_profile: time grid must cover [0, 4 pi]");
    for (std::size_t i = 0; i + 1 < times.size(); ++i)
        if (times[i + 1] - times[i] > 0.01 + 1e-12)
            throw DomainError("revival_profile: time step must be <= 0.01");

    const std::vector<double> trace = survival_trace(plan);
    std::vector<RevivalPeak> peaks;
    for (const Peak& p : find_peaks(trace, 0.2, 0.1)) {
        if (p.index == 0) continue;
        peaks.push_back(RevivalPeak{times[p.index], p.value});
    }
    return peaks;
}

// Maximum probability found on the opposite parity chain over the sampled times.
// The initial state must have definite parity.
inline double parity_confinement(const EvolutionPlan& plan) {
    const double pexp = parity_expectation(plan.initial);
    if (std::abs(std::abs(pexp) - 1.0) > 1e-10)
        throw DomainError("parity_confinement: initial state has indefinite parity");
    const int parity = pexp > 0.0 ? +1 : -1;
    double worst = 0.0;
    for (double t : plan.times) {
        const JointState psi = evolve(plan, t);
        worst = std::max(worst, parity_leakage(psi, parity));
    }
    return worst;
}

} // namespace rabi
