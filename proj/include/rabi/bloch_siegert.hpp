// bloch_siegert.hpp — Bloch-Siegert spectra (second and third order) and dressed states
//
// Second order: E_0 = -Omega/2 - w_BS and
//   E_{n,±} = (n - 1/2) omega - w_BS ± (1/2) sqrt(Delta_n^2 + 4 g0^2 n),
// with w_BS = g0^2/(omega+Omega) and Delta_n = delta + 2 w_BS n.
// Third order replaces the coupling by g(n̂) = g0 (1 - n̂ w_BS / 2 omega); the
// excitation block {|e,n-1>, |g,n>} then carries g0 sqrt(n) (1 - (n-1) w_BS / 2 omega).

#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "rabi/eigensolve.hpp"
#include "rabi/params.hpp"
#include "rabi/state.hpp"

namespace rabi {

inline double bs_shift(const ModelParams& p) {
    return p.g0 * p.g0 / p.frequency_sum();
}

// n = 0 is the ground level (branch ignored); branch = ±1 selects the doublet member.
inline double bs_energy(const ModelParams& p, int n, int branch) {
    p.validate();
    if (n < 0) throw DomainError("bs_energy: n must be >= 0");
    const double wbs = bs_shift(p);
    if (n == 0) return -0.5 * p.omega_q - wbs;
    if (branch != +1 && branch != -1) throw DomainError("bs_energy: branch must be +1 or -1");
    const double dn = p.detuning() + 2.0 * wbs * n;
    return (n - 0.5) * p.omega - wbs +
           0.5 * branch * std::sqrt(dn * dn + 4.0 * p.g0 * p.g0 * n);
}

inline double bs_mixing_angle(const ModelParams& p, int n) {
    p.validate();
    if (n < 1) throw DomainError("bs_mixing_angle: n must be >= 1");
    const double dn = p.detuning() + 2.0 * bs_shift(p) * n;
    return std::atan2(2.0 * p.g0 * std::sqrt(static_cast<double>(n)), dn);
}

inline double bs3_energy(const ModelParams& p, int n, int branch) {
    p.validate();
    if (n < 0) throw DomainError("bs3_energy: n must be >= 0");
    const double wbs = bs_shift(p);
    if (n == 0) return -0.5 * p.omega_q - wbs;
    if (branch != +1 && branch != -1) throw DomainError("bs3_energy: branch must be +1 or -1");
    const double dn = p.detuning() + 2.0 * wbs * n;
    const double cn = p.g0 * std::sqrt(static_cast<double>(n)) *
                      (1.0 - (n - 1) * wbs / (2.0 * p.omega));
    return (n - 0.5) * p.omega - wbs + 0.5 * branch * std::sqrt(dn * dn + 4.0 * cn * cn);
}

// Dressed kets |+,n> = cos(t/2)|e,n-1> + sin(t/2)|g,n>, |-,n> = sin(t/2)|e,n-1> - cos(t/2)|g,n>.
inline JointState bs_bare_ket(const ModelParams& p, int n, int branch, const Truncation& t) {
    t.validate();
    if (n < 0 || n > t.n_max) throw DomainError("bs_bare_ket: n outside truncation");
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(t.dim());
    if (n == 0) {
        amps(basis_index(Qubit::g, 0)) = 1.0;
    } else {
        if (branch != +1 && branch != -1)
            throw DomainError("bs_bare_ket: branch must be +1 or -1");
        const double half = 0.5 * bs_mixing_angle(p, n);
        if (branch == +1) {
            amps(basis_index(Qubit::e, n - 1)) = std::cos(half);
            amps(basis_index(Qubit::g, n)) = std::sin(half);
        } else {
            amps(basis_index(Qubit::e, n - 1)) = std::sin(half);
            amps(basis_index(Qubit::g, n)) = -std::cos(half);
        }
    }
    return JointState(std::move(amps));
}

// Anti-Hermitian generator of U: Lambda (a s- - a† s+) + xi (a² - a†²) sigma_z,
// real antisymmetric in the product basis; it commutes with the parity operator.
inline Eigen::MatrixXd bs_generator(const ModelParams& p, const Truncation& t) {
    p.validate();
    t.validate();
    const double lambda = p.g0 / p.frequency_sum();
    const double xi = p.g0 * lambda / (2.0 * p.omega);
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(t.dim(), t.dim());
    for (int n = 0; n < t.n_max; ++n) {
        const double c = lambda * std::sqrt(n + 1.0);
        g(basis_index(Qubit::g, n), basis_index(Qubit::e, n + 1)) += c;
        g(basis_index(Qubit::e, n + 1), basis_index(Qubit::g, n)) -= c;
    }
    for (int n = 0; n + 2 <= t.n_max; ++n) {
        const double c = xi * std::sqrt((n + 1.0) * (n + 2.0));
        g(basis_index(Qubit::g, n), basis_index(Qubit::g, n + 2)) -= c; // sigma_z = -1 on |g>
        g(basis_index(Qubit::g, n + 2), basis_index(Qubit::g, n)) += c;
        g(basis_index(Qubit::e, n), basis_index(Qubit::e, n + 2)) += c;
        g(basis_index(Qubit::e, n + 2), basis_index(Qubit::e, n)) -= c;
    }
    return g;
}

// The unitary U of the Bloch-Siegert frame, exponentiated exactly on the
// truncated basis. Build once and reuse across manifolds.
struct BlochSiegertTransform {
    ModelParams params;
    Truncation trunc;
    Eigen::MatrixXd u;

    BlochSiegertTransform(const ModelParams& p, const Truncation& t)
        : params(p), trunc(t), u(expm_antisymmetric(bs_generator(p, t))) {}

    JointState eigenstate(int n, int branch) const {
        if (n + 4 > trunc.n_max)
            throw TruncationError("BlochSiegertTransform: need n + 4 <= n_max");
        const JointState bare = bs_bare_ket(params, n, branch, trunc);
        return JointState(u * bare.amps);
    }
};

inline JointState bs_eigenstate(const ModelParams& p, int n, int branch, const Truncation& t) {
    return BlochSiegertTransform(p, t).eigenstate(n, branch);
}

// Dense third-order Hamiltonian; the photon-dependent coupling multiplies on the
// annihilated side so the matrix is symmetric and excitation-preserving.
inline Eigen::MatrixXd build_bs3_dense(const ModelParams& p, const Truncation& t) {
    p.validate();
    t.validate();
    const double wbs = bs_shift(p);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(t.dim(), t.dim());
    for (int n = 0; n <= t.n_max; ++n) {
        // w_BS sigma_z a†a + w_BS sigma_z/2 - w_BS/2 with sigma_z = -1 on |g>, +1 on |e>
        h(basis_index(Qubit::g, n), basis_index(Qubit::g, n)) =
            p.omega * n - 0.5 * p.omega_q - wbs * (n + 1.0);
        h(basis_index(Qubit::e, n), basis_index(Qubit::e, n)) =
            p.omega * n + 0.5 * p.omega_q + wbs * n;
    }
    for (int n = 1; n <= t.n_max; ++n) {
        // g(n̂) a sigma+ |g,n> = g0 (1 - (n-1) w_BS / 2 omega) sqrt(n) |e,n-1>
        const double c =
            p.g0 * std::sqrt(static_cast<double>(n)) * (1.0 - (n - 1) * wbs / (2.0 * p.omega));
        h(basis_index(Qubit::e, n - 1), basis_index(Qubit::g, n)) = c;
        h(basis_index(Qubit::g, n), basis_index(Qubit::e, n - 1)) = c;
    }
    return h;
}

} // namespace rabi
