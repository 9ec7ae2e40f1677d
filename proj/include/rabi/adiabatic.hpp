// adiabatic.hpp — Displaced-oscillator (adiabatic) spectrum and cat-like eigenstates
//
// E_{n,±} = (n - alpha^2) omega ± (Omega/2) e^{-2 alpha^2} L_n(4 alpha^2), ground = (0,-);
// |phi_{±,n}> = (|+> D(-alpha)|n> ± |-> D(alpha)|n>)/sqrt(2), |±> = (|e> ± |g>)/sqrt(2).
// Branch ± carries parity ∓(-1)^n (at alpha -> 0 the + branch becomes |e,n>).

#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "rabi/params.hpp"
#include "rabi/special_functions.hpp"
#include "rabi/state.hpp"

namespace rabi {

inline double adiabatic_energy(const ModelParams& p, int n, int branch) {
    p.validate();
    if (n < 0) throw DomainError("adiabatic_energy: n must be >= 0");
    if (branch != +1 && branch != -1)
        throw DomainError("adiabatic_energy: branch must be +1 or -1");
    const double a = p.alpha();
    const double x = 4.0 * a * a;
    return (n - a * a) * p.omega +
           0.5 * branch * p.omega_q * std::exp(-2.0 * a * a) * laguerre(n, x);
}

// |E_+ - E_-| / omega at fixed n; the left side of the quasi-degeneracy condition.
inline double adiabatic_splitting_over_omega(const ModelParams& p, int n) {
    p.validate();
    if (n < 0) throw DomainError("adiabatic_splitting_over_omega: n must be >= 0");
    const double a = p.alpha();
    return (p.omega_q / p.omega) * std::exp(-2.0 * a * a) * std::abs(laguerre(n, 4.0 * a * a));
}

inline JointState adiabatic_state(const ModelParams& p, int n, int branch, const Truncation& t) {
    p.validate();
    t.validate();
    if (n < 0) throw DomainError("adiabatic_state: n must be >= 0");
    if (branch != +1 && branch != -1)
        throw DomainError("adiabatic_state: branch must be +1 or -1");
    const double a = p.alpha();
    if (a * a + 6.0 * a + n > t.n_max)
        throw TruncationError("adiabatic_state: need alpha^2 + 6 alpha + n <= n_max");
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(t.dim());
    for (int m = 0; m <= t.n_max; ++m) {
        const double dm_neg = displacement_element(m, n, -a);
        const double dm_pos = displacement_element(m, n, a);
        amps(basis_index(Qubit::g, m)) = 0.5 * (dm_neg - branch * dm_pos);
        amps(basis_index(Qubit::e, m)) = 0.5 * (dm_neg + branch * dm_pos);
    }
    return JointState(std::move(amps));
}

} // namespace rabi
