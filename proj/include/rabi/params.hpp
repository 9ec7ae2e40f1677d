// params.hpp — Physical parameters of the quantum Rabi model and truncation control

#pragma once

#include <cmath>

#include "rabi/errors.hpp"

namespace rabi {

// H = omega a†a + (omega_q/2) sigma_z + g0 sigma_x (a + a†),  hbar = 1.
struct ModelParams {
    double omega{1.0};    // cavity frequency, > 0
    double omega_q{1.0};  // qubit frequency, >= 0
    double g0{0.0};       // coupling strength, >= 0

    double detuning() const noexcept { return omega_q - omega; }       // delta
    double frequency_sum() const noexcept { return omega_q + omega; }  // Sigma
    double alpha() const noexcept { return g0 / omega; }               // g0/omega

    void validate() const {
        if (!(omega > 0.0)) throw DomainError("ModelParams: omega must be > 0");
        if (omega_q < 0.0) throw DomainError("ModelParams: omega_q must be >= 0");
        if (g0 < 0.0) throw DomainError("ModelParams: g0 must be >= 0");
    }
};

inline ModelParams resonant(double g0_over_omega, double omega = 1.0) {
    return ModelParams{omega, omega, g0_over_omega * omega};
}

struct Truncation {
    int n_max{1};           // photon-number cutoff, >= 1
    double tail_tol{1e-10}; // max allowed probability on the top two Fock levels

    int dim() const noexcept { return 2 * (n_max + 1); }

    void validate() const {
        if (n_max < 1) throw DomainError("Truncation: n_max must be >= 1");
        if (!(tail_tol > 0.0 && tail_tol < 1.0))
            throw DomainError("Truncation: tail_tol must be in (0,1)");
    }
};

// Cutoff heuristic: covers the displaced-state support alpha^2 plus several widths.
inline int default_n_max(const ModelParams& p) {
    const double a = p.alpha();
    return static_cast<int>(std::ceil(a * a + 10.0 * a + 30.0));
}

inline Truncation default_truncation(const ModelParams& p) {
    return Truncation{default_n_max(p), 1e-10};
}

} // namespace rabi
