// state.hpp — Joint qubit ⊗ Fock states, basis ordering, and parity bookkeeping
//
// Basis ordering is fixed throughout the library: index = 2n + (q == e ? 1 : 0),
// so |g,n> sits at 2n and |e,n> at 2n+1.

#pragma once

#include <complex>
#include <cmath>

#include <Eigen/Dense>

#include "rabi/errors.hpp"

namespace rabi {

enum class Qubit : int { g = 0, e = 1 };

inline int basis_index(Qubit q, int n) noexcept {
    return 2 * n + (q == Qubit::e ? 1 : 0);
}

// Parity operator Pi = -sigma_z (-1)^{a†a}: (-1)^n on |g,n>, (-1)^{n+1} on |e,n>.
inline int parity_of_basis_state(Qubit q, int n) {
    if (n < 0) throw DomainError("parity_of_basis_state: n must be >= 0");
    const int base = (n % 2 == 0) ? +1 : -1;
    return q == Qubit::g ? base : -base;
}

struct JointState {
    Eigen::VectorXcd amps; // size 2*(n_max+1)

    JointState() = default;
    explicit JointState(Eigen::VectorXcd a) : amps(std::move(a)) {
        if (amps.size() == 0 || amps.size() % 2 != 0)
            throw ContractError("JointState: amplitude vector must have even positive size");
        normalize();
    }

    int n_max() const noexcept { return static_cast<int>(amps.size()) / 2 - 1; }

    static JointState basis(Qubit q, int n, int n_max) {
        if (n < 0 || n > n_max) throw DomainError("JointState::basis: n outside [0, n_max]");
        Eigen::VectorXcd a = Eigen::VectorXcd::Zero(2 * (n_max + 1));
        a(basis_index(q, n)) = 1.0;
        return JointState(std::move(a));
    }

    std::complex<double> amp(Qubit q, int n) const { return amps(basis_index(q, n)); }

    double norm() const { return amps.norm(); }

    void normalize() {
        const double nrm = amps.norm();
        if (!(nrm > 0.0)) throw ContractError("JointState: cannot normalize zero vector");
        amps /= nrm;
    }

    // <this|other>
    std::complex<double> overlap(const JointState& other) const {
        if (amps.size() != other.amps.size())
            throw ContractError("JointState::overlap: dimension mismatch");
        return amps.dot(other.amps);
    }
};

inline double parity_expectation(const JointState& psi) {
    double val = 0.0;
    for (int n = 0; n <= psi.n_max(); ++n) {
        const double sg = (n % 2 == 0) ? 1.0 : -1.0;
        val += sg * std::norm(psi.amp(Qubit::g, n));
        val -= sg * std::norm(psi.amp(Qubit::e, n));
    }
    return val;
}

// Probability carried by the chain of parity opposite to `parity`.
inline double parity_leakage(const JointState& psi, int parity) {
    double leak = 0.0;
    for (int n = 0; n <= psi.n_max(); ++n) {
        if (parity_of_basis_state(Qubit::g, n) != parity)
            leak += std::norm(psi.amp(Qubit::g, n));
        if (parity_of_basis_state(Qubit::e, n) != parity)
            leak += std::norm(psi.amp(Qubit::e, n));
    }
    return leak;
}

} // namespace rabi
