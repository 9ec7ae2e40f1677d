// hamiltonian.hpp — Quantum Rabi Hamiltonian in the product basis and as parity chains
//
// The parity operator Pi = -sigma_z (-1)^{a†a} commutes with H, splitting the
// Hilbert space into two chains that are exactly tridiagonal in the relabeled
// basis b = sigma_x a.

#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "rabi/params.hpp"
#include "rabi/state.hpp"

namespace rabi {

inline Eigen::MatrixXd build_dense_hamiltonian(const ModelParams& p, const Truncation& t) {
    p.validate();
    t.validate();
    const int dim = t.dim();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (int n = 0; n <= t.n_max; ++n) {
        h(basis_index(Qubit::g, n), basis_index(Qubit::g, n)) = p.omega * n - 0.5 * p.omega_q;
        h(basis_index(Qubit::e, n), basis_index(Qubit::e, n)) = p.omega * n + 0.5 * p.omega_q;
    }
    for (int n = 0; n < t.n_max; ++n) {
        const double c = p.g0 * std::sqrt(n + 1.0);
        h(basis_index(Qubit::g, n), basis_index(Qubit::e, n + 1)) = c;
        h(basis_index(Qubit::e, n + 1), basis_index(Qubit::g, n)) = c;
        h(basis_index(Qubit::e, n), basis_index(Qubit::g, n + 1)) = c;
        h(basis_index(Qubit::g, n + 1), basis_index(Qubit::e, n)) = c;
    }
    return h;
}

// One symmetry sector: diag[n] = omega n - (omega_q/2)(-1)^n p, offdiag[n] = g0 sqrt(n+1).
// Chain p=+1 traverses |g,0>,|e,1>,|g,2>,...; chain p=-1 traverses |e,0>,|g,1>,|e,2>,...
struct ParityChain {
    int parity{+1};
    Eigen::VectorXd diag;
    Eigen::VectorXd offdiag; // one shorter than diag
};

inline ParityChain build_parity_chain(const ModelParams& p, const Truncation& t, int parity) {
    p.validate();
    t.validate();
    if (parity != +1 && parity != -1)
        throw DomainError("build_parity_chain: parity must be +1 or -1");
    ParityChain chain;
    chain.parity = parity;
    chain.diag.resize(t.n_max + 1);
    chain.offdiag.resize(t.n_max);
    for (int n = 0; n <= t.n_max; ++n) {
        const double sg = (n % 2 == 0) ? 1.0 : -1.0;
        chain.diag(n) = p.omega * n - 0.5 * p.omega_q * sg * parity;
    }
    for (int n = 0; n < t.n_max; ++n) chain.offdiag(n) = p.g0 * std::sqrt(n + 1.0);
    return chain;
}

// Chain index n hosts |g,n> when (-1)^n = p, else |e,n>.
inline Qubit chain_qubit(int chain_index, int parity) {
    const int sg = (chain_index % 2 == 0) ? +1 : -1;
    return sg == parity ? Qubit::g : Qubit::e;
}

inline JointState embed_chain_state(const Eigen::VectorXd& chain_vector, int parity) {
    if (parity != +1 && parity != -1)
        throw DomainError("embed_chain_state: parity must be +1 or -1");
    const int len = static_cast<int>(chain_vector.size());
    if (len < 2) throw ContractError("embed_chain_state: chain vector too short");
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(2 * len);
    for (int j = 0; j < len; ++j)
        amps(basis_index(chain_qubit(j, parity), j)) = chain_vector(j);
    return JointState(std::move(amps));
}

// H|psi> without materializing the dense matrix; result is not normalized.
inline Eigen::VectorXcd apply_hamiltonian(const ModelParams& p, const JointState& psi) {
    p.validate();
    const int n_max = psi.n_max();
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(psi.amps.size());
    for (int n = 0; n <= n_max; ++n) {
        out(basis_index(Qubit::g, n)) += (p.omega * n - 0.5 * p.omega_q) * psi.amp(Qubit::g, n);
        out(basis_index(Qubit::e, n)) += (p.omega * n + 0.5 * p.omega_q) * psi.amp(Qubit::e, n);
    }
    for (int n = 0; n < n_max; ++n) {
        const double c = p.g0 * std::sqrt(n + 1.0);
        out(basis_index(Qubit::g, n)) += c * psi.amp(Qubit::e, n + 1);
        out(basis_index(Qubit::e, n + 1)) += c * psi.amp(Qubit::g, n);
        out(basis_index(Qubit::e, n)) += c * psi.amp(Qubit::g, n + 1);
        out(basis_index(Qubit::g, n + 1)) += c * psi.amp(Qubit::e, n);
    }
    return out;
}

} // namespace rabi
