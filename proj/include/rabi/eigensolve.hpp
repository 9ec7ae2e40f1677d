// eigensolve.hpp — Self-contained symmetric eigensolvers and truncation convergence
//
// Tridiagonal kernel: implicit-shift QL with Wilkinson shift, rotations optionally
// accumulated for eigenvectors. Dense path: Householder reduction to tridiagonal
// with transformation accumulation, then the same QL kernel.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "rabi/errors.hpp"
#include "rabi/hamiltonian.hpp"
#include "rabi/params.hpp"
#include "rabi/state.hpp"

namespace rabi {

namespace detail {

// In-place QL sweep over d (diagonal) and e (subdiagonal, e[i] couples i and i+1;
// e must have the same length as d with the last entry used as scratch).
// If z is non-null its columns are rotated along; initialize to identity for
// eigenvectors of the tridiagonal matrix itself.
inline void ql_implicit_shift(std::vector<double>& d, std::vector<double>& e,
                              Eigen::MatrixXd* z, int max_iter = 64) {
    const int n = static_cast<int>(d.size());
    if (n == 0) return;
    e.back() = 0.0;
    const double eps = std::numeric_limits<double>::epsilon();
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m = l;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == max_iter)
                    throw SolverError(l, "tridiag_eigen: QL failed to converge at index " +
                                             std::to_string(l));
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g)); // Wilkinson shift
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) { // recover from underflow by deflating
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (z != nullptr) {
                        for (int k = 0; k < static_cast<int>(z->rows()); ++k) {
                            f = (*z)(k, i + 1);
                            (*z)(k, i + 1) = s * (*z)(k, i) + c * f;
                            (*z)(k, i) = c * (*z)(k, i) - s * f;
                        }
                    }
                }
                if (!underflow) {
                    d[l] -= p;
                    e[l] = g;
                    e[m] = 0.0;
                }
            }
        } while (m != l);
    }
}

inline void sort_ascending(std::vector<double>& d, Eigen::MatrixXd* z) {
    const int n = static_cast<int>(d.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });
    std::vector<double> ds(n);
    for (int i = 0; i < n; ++i) ds[i] = d[order[i]];
    d = std::move(ds);
    if (z != nullptr) {
        Eigen::MatrixXd zs(z->rows(), z->cols());
        for (int i = 0; i < n; ++i) zs.col(i) = z->col(order[i]);
        *z = std::move(zs);
    }
}

// Householder reduction A = Q T Q^T; on return `a` holds Q, d the diagonal and
// e the subdiagonal of T (e[0] unused).
inline void householder_tridiagonalize(Eigen::MatrixXd& a, std::vector<double>& d,
                                       std::vector<double>& e) {
    const int n = static_cast<int>(a.rows());
    d.assign(n, 0.0);
    e.assign(n, 0.0);
    for (int i = n - 1; i >= 1; --i) {
        const int l = i - 1;
        double h = 0.0, scale = 0.0;
        if (l > 0) {
            for (int k = 0; k <= l; ++k) scale += std::abs(a(i, k));
            if (scale == 0.0) {
                e[i] = a(i, l);
            } else {
                for (int k = 0; k <= l; ++k) {
                    a(i, k) /= scale;
                    h += a(i, k) * a(i, k);
                }
                double f = a(i, l);
                double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                a(i, l) = f - g;
                f = 0.0;
                for (int j = 0; j <= l; ++j) {
                    a(j, i) = a(i, j) / h;
                    g = 0.0;
                    for (int k = 0; k <= j; ++k) g += a(j, k) * a(i, k);
                    for (int k = j + 1; k <= l; ++k) g += a(k, j) * a(i, k);
                    e[j] = g / h;
                    f += e[j] * a(i, j);
                }
                const double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    f = a(i, j);
                    e[j] = g = e[j] - hh * f;
                    for (int k = 0; k <= j; ++k) a(j, k) -= f * e[k] + g * a(i, k);
                }
            }
        } else {
            e[i] = a(i, l);
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for (int i = 0; i < n; ++i) {
        const int l = i - 1;
        if (d[i] != 0.0) {
            for (int j = 0; j <= l; ++j) {
                double g = 0.0;
                for (int k = 0; k <= l; ++k) g += a(i, k) * a(k, j);
                for (int k = 0; k <= l; ++k) a(k, j) -= g * a(k, i);
            }
        }
        d[i] = a(i, i);
        a(i, i) = 1.0;
        for (int j = 0; j <= l; ++j) {
            a(j, i) = 0.0;
            a(i, j) = 0.0;
        }
    }
}

} // namespace detail

struct SymmetricEigenResult {
    Eigen::VectorXd values;  // ascending
    Eigen::MatrixXd vectors; // orthonormal columns; empty unless requested
};

inline SymmetricEigenResult tridiag_eigen(const Eigen::VectorXd& diag,
                                          const Eigen::VectorXd& offdiag,
                                          bool want_vectors) {
    const int n = static_cast<int>(diag.size());
    if (n == 0) throw ContractError("tridiag_eigen: empty matrix");
    if (offdiag.size() != n - 1)
        throw ContractError("tridiag_eigen: offdiag length must be diag length - 1");
    std::vector<double> d(diag.data(), diag.data() + n);
    std::vector<double> e(n, 0.0);
    for (int i = 0; i + 1 < n; ++i) e[i] = offdiag(i);
    SymmetricEigenResult res;
    if (want_vectors) {
        res.vectors = Eigen::MatrixXd::Identity(n, n);
        detail::ql_implicit_shift(d, e, &res.vectors);
        detail::sort_ascending(d, &res.vectors);
    } else {
        detail::ql_implicit_shift(d, e, nullptr);
        detail::sort_ascending(d, nullptr);
    }
    res.values = Eigen::Map<Eigen::VectorXd>(d.data(), n);
    return res;
}

inline SymmetricEigenResult dense_sym_eigen(const Eigen::MatrixXd& matrix, bool want_vectors) {
    const int n = static_cast<int>(matrix.rows());
    if (n == 0 || matrix.cols() != n) throw ContractError("dense_sym_eigen: matrix must be square");
    const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
    if ((matrix - matrix.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw ContractError("dense_sym_eigen: matrix is not symmetric to 1e-12");

    Eigen::MatrixXd q = matrix;
    std::vector<double> d, e;
    detail::householder_tridiagonalize(q, d, e);
    std::vector<double> esub(n, 0.0);
    for (int i = 1; i < n; ++i) esub[i - 1] = e[i];

    SymmetricEigenResult res;
    if (want_vectors) {
        detail::ql_implicit_shift(d, esub, &q);
        detail::sort_ascending(d, &q);
        res.vectors = std::move(q);
    } else {
        detail::ql_implicit_shift(d, esub, nullptr);
        detail::sort_ascending(d, nullptr);
    }
    res.values = Eigen::Map<Eigen::VectorXd>(d.data(), n);
    return res;
}

// exp(A) for real antisymmetric A by scaling-and-squaring with a Taylor kernel
// converged to machine precision; the result is orthogonal.
inline Eigen::MatrixXd expm_antisymmetric(const Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.rows());
    if (a.cols() != n) throw ContractError("expm_antisymmetric: matrix must be square");
    if ((a + a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff()))
        throw ContractError("expm_antisymmetric: matrix is not antisymmetric");

    const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    double factor = 1.0;
    while (norm * factor > 0.5) {
        factor *= 0.5;
        ++squarings;
    }
    const Eigen::MatrixXd b = a * factor;
    Eigen::MatrixXd result = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
    for (int k = 1; k <= 32; ++k) {
        term = (term * b) / static_cast<double>(k);
        result += term;
        if (term.cwiseAbs().maxCoeff() < 1e-18) break;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

// --------------------------- converged spectra -------------------------------

struct SpectrumLevel {
    double energy{0.0};
    int parity{+1};
    int chain_index{0}; // position within its parity chain
    JointState vector;
};

struct Spectrum {
    std::vector<SpectrumLevel> levels; // ascending energy; ties: parity +1 first
    ModelParams params;
    Truncation trunc; // truncation actually used
};

struct SpectrumOptions {
    double energy_tol{0.0}; // 0 -> 1e-8 * omega
    int initial_n_max{0};   // 0 -> default_n_max heuristic
    int n_max_cap{4096};
    double tail_tol{1e-10};
};

namespace detail {

inline Eigen::VectorXd chain_values(const ModelParams& p, int n_max, int parity) {
    const ParityChain c = build_parity_chain(p, Truncation{n_max, 0.5}, parity);
    return tridiag_eigen(c.diag, c.offdiag, false).values;
}

// Re-orthogonalize clusters of quasi-degenerate columns (modified Gram-Schmidt).
inline void reorthogonalize_clusters(const Eigen::VectorXd& values, Eigen::MatrixXd& vectors,
                                     int count, double gap_tol) {
    int start = 0;
    while (start < count) {
        int end = start + 1;
        while (end < count && values(end) - values(end - 1) < gap_tol) ++end;
        for (int i = start + 1; i < end; ++i) {
            for (int j = start; j < i; ++j)
                vectors.col(i) -= vectors.col(j).dot(vectors.col(i)) * vectors.col(j);
            vectors.col(i).normalize();
        }
        start = end;
    }
}

} // namespace detail

// Lowest k_levels of each parity chain, recomputed with n_max doubled until every
// requested eigenvalue moves less than energy_tol and the eigenvector tails pass
// tail_tol; the merged, sorted, parity-labeled lowest k_levels are returned.
inline Spectrum converged_spectrum(const ModelParams& p, int k_levels,
                                   const SpectrumOptions& opts = {}) {
    p.validate();
    if (k_levels < 1) throw DomainError("converged_spectrum: k_levels must be >= 1");
    const double tol = opts.energy_tol > 0.0 ? opts.energy_tol : 1e-8 * p.omega;

    int n_max = opts.initial_n_max > 0 ? opts.initial_n_max : default_n_max(p);
    n_max = std::max(n_max, k_levels + 16);
    if (n_max > opts.n_max_cap)
        throw TruncationError("converged_spectrum: initial n_max exceeds cap");

    Eigen::VectorXd prev_p = detail::chain_values(p, n_max, +1);
    Eigen::VectorXd prev_m = detail::chain_values(p, n_max, -1);

    while (true) {
        const int next = 2 * n_max;
        if (next > opts.n_max_cap)
            throw TruncationError("converged_spectrum: n_max cap " +
                                  std::to_string(opts.n_max_cap) +
                                  " reached without convergence");
        Eigen::VectorXd cur_p = detail::chain_values(p, next, +1);
        Eigen::VectorXd cur_m = detail::chain_values(p, next, -1);
        double move = 0.0;
        for (int k = 0; k < k_levels; ++k) {
            move = std::max(move, std::abs(cur_p(k) - prev_p(k)));
            move = std::max(move, std::abs(cur_m(k) - prev_m(k)));
        }
        if (move < tol) {
            const Truncation trunc{next, opts.tail_tol};
            bool tails_ok = true;
            std::vector<SpectrumLevel> merged;
            for (int parity : {+1, -1}) {
                const ParityChain c = build_parity_chain(p, trunc, parity);
                SymmetricEigenResult r = tridiag_eigen(c.diag, c.offdiag, true);
                detail::reorthogonalize_clusters(r.values, r.vectors, k_levels,
                                                 std::max(tol, 1e-12));
                for (int k = 0; k < k_levels; ++k) {
                    const Eigen::VectorXd v = r.vectors.col(k);
                    const double tail = v(next) * v(next) + v(next - 1) * v(next - 1);
                    if (tail > opts.tail_tol) {
                        tails_ok = false;
                        break;
                    }
                    merged.push_back(SpectrumLevel{r.values(k), parity, k,
                                                   embed_chain_state(v, parity)});
                }
                if (!tails_ok) break;
            }
            if (tails_ok) {
                std::stable_sort(merged.begin(), merged.end(),
                                 [](const SpectrumLevel& a, const SpectrumLevel& b) {
                                     if (a.energy != b.energy) return a.energy < b.energy;
                                     return a.parity > b.parity;
                                 });
                merged.resize(k_levels);
                return Spectrum{std::move(merged), p, trunc};
            }
        }
        prev_p = std::move(cur_p);
        prev_m = std::move(cur_m);
        n_max = next;
    }
}

} // namespace rabi
