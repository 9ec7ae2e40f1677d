// observables.hpp — Static properties: excitations, photon statistics, entanglement
//
// Validator closed forms from the perturbative limits live here as well; they are
// independent checks on the exact-state observables, not used to compute them.

#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "rabi/errors.hpp"
#include "rabi/peaks.hpp"
#include "rabi/special_functions.hpp"
#include "rabi/state.hpp"

namespace rabi {

// <a†a + sigma+ sigma->
inline double total_excitations(const JointState& psi) {
    double val = 0.0;
    for (int n = 0; n <= psi.n_max(); ++n) {
        val += n * (std::norm(psi.amp(Qubit::g, n)) + std::norm(psi.amp(Qubit::e, n)));
        val += std::norm(psi.amp(Qubit::e, n));
    }
    return val;
}

inline Eigen::VectorXd photon_distribution(const JointState& psi) {
    Eigen::VectorXd p(psi.n_max() + 1);
    for (int n = 0; n <= psi.n_max(); ++n)
        p(n) = std::norm(psi.amp(Qubit::g, n)) + std::norm(psi.amp(Qubit::e, n));
    return p;
}

// Fano-Mandel Q = (<n̂²> - <n̂>²)/<n̂> - 1; empty at vacuum (<n̂> < 1e-12).
inline std::optional<double> fano_mandel(const JointState& psi) {
    const Eigen::VectorXd p = photon_distribution(psi);
    double mean = 0.0, second = 0.0;
    for (int n = 0; n < p.size(); ++n) {
        mean += n * p(n);
        second += static_cast<double>(n) * n * p(n);
    }
    if (mean < 1e-12) return std::nullopt;
    return (second - mean * mean) / mean - 1.0;
}

struct QubitDensity {
    Eigen::Matrix2cd rho; // row/col 0 = |g>, 1 = |e>

    std::array<double, 2> eigenvalues() const {
        const double tr = rho(0, 0).real() + rho(1, 1).real();
        const double det = (rho(0, 0) * rho(1, 1) - rho(0, 1) * rho(1, 0)).real();
        const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
        return {0.5 * (tr - disc), 0.5 * (tr + disc)};
    }
};

inline QubitDensity reduced_qubit_density(const JointState& psi) {
    Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
    for (int n = 0; n <= psi.n_max(); ++n) {
        const std::complex<double> g = psi.amp(Qubit::g, n);
        const std::complex<double> e = psi.amp(Qubit::e, n);
        rho(0, 0) += g * std::conj(g);
        rho(1, 1) += e * std::conj(e);
        rho(0, 1) += g * std::conj(e);
        rho(1, 0) += e * std::conj(g);
    }
    const double tr = rho(0, 0).real() + rho(1, 1).real();
    if (std::abs(tr - 1.0) > 1e-10)
        throw ContractError("reduced_qubit_density: state is not normalized");
    return QubitDensity{rho};
}

// Base-2 entropy with 0 log 0 = 0.
inline double von_neumann_entropy(const QubitDensity& rho) {
    double s = 0.0;
    for (double lambda : rho.eigenvalues()) {
        if (lambda > 1e-300) s -= lambda * std::log2(lambda);
    }
    return s;
}

// |<a|b>|^2, insensitive to global phases.
inline double fidelity(const JointState& a, const JointState& b) {
    return std::norm(a.overlap(b));
}

// Prominent local maxima of a photon distribution; the floor suppresses
// truncation ripple.
inline std::vector<Peak> photon_modes(const Eigen::VectorXd& p, double prominence_floor = 1e-3) {
    return find_peaks(std::span<const double>(p.data(), static_cast<std::size_t>(p.size())),
                      0.0, prominence_floor);
}

// ------------------------- perturbative closed forms -------------------------

// Entanglement entropy of the dressed doublets, 1 - n alpha^2 / 8, valid up to
// the first-crossing bound alpha <= 1/sqrt(2(2n+1)).
inline double pusc_entropy_validator(int n, double alpha) {
    if (n < 1) throw DomainError("pusc_entropy_validator: n must be >= 1");
    const double bound = 1.0 / std::sqrt(2.0 * (2.0 * n + 1.0));
    if (alpha < 0.0 || alpha > bound)
        throw DomainError("pusc_entropy_validator: alpha outside [0, 1/sqrt(2(2n+1))]");
    return 1.0 - n * alpha * alpha / 8.0;
}

// Cat-state entanglement entropy, 1 - (1/2) e^{-4 alpha^2} L_n^2(4 alpha^2).
inline double pdsc_entropy_validator(int n, double alpha) {
    if (n < 0) throw DomainError("pdsc_entropy_validator: n must be >= 0");
    const double y = std::exp(-2.0 * alpha * alpha) * laguerre(n, 4.0 * alpha * alpha);
    return 1.0 - 0.5 * y * y;
}

// Sign of <n̂²> - <n̂>² - <n̂> for the dressed doublets:
//   (3/4 - n) ± alpha sqrt(n)/4 - (alpha²/16)(4n³ - 8n² - 13n + 10).
// Negative throughout the validity domain (sub-Poissonian statistics).
inline int pusc_q_sign_validator(int n, double alpha, int branch) {
    if (n < 1) throw DomainError("pusc_q_sign_validator: n must be >= 1");
    if (branch != +1 && branch != -1)
        throw DomainError("pusc_q_sign_validator: branch must be +1 or -1");
    const double bound = 1.0 / std::sqrt(2.0 * (2.0 * n + 1.0));
    if (alpha < 0.0 || alpha > bound)
        throw DomainError("pusc_q_sign_validator: alpha outside [0, 1/sqrt(2(2n+1))]");
    const double cubic = 4.0 * std::pow(n, 3) - 8.0 * std::pow(n, 2) - 13.0 * n + 10.0;
    const double val = (0.75 - n) + branch * alpha * std::sqrt(static_cast<double>(n)) / 4.0 -
                       alpha * alpha / 16.0 * cubic;
    return val > 0.0 ? 1 : (val < 0.0 ? -1 : 0);
}

} // namespace rabi
