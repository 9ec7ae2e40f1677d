// regimes.hpp — Coupling-regime boundaries and classification in the (g0/omega, E/omega) plane
//
// Three regions: perturbative ultrastrong (below the inverted-crossing energy curve,
// g <= 1/sqrt(6)), perturbative deep-strong (beyond the quasi-degeneracy crossings,
// below the fitted quadratic), and the non-perturbative remainder.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "rabi/eigensolve.hpp"
#include "rabi/errors.hpp"
#include "rabi/hamiltonian.hpp"
#include "rabi/params.hpp"
#include "rabi/special_functions.hpp"
#include "rabi/state.hpp"

namespace rabi {

// First crossing of the dressed doublets: g/omega = 1/sqrt(2(2n+1)).
inline double first_juddian_approx(int n) {
    if (n < 1) throw DomainError("first_juddian_approx: n must be >= 1");
    return 1.0 / std::sqrt(2.0 * (2.0 * n + 1.0));
}

// Energy boundary of the perturbative ultrastrong region, defined on (0, 1/sqrt(2)].
inline double pusc_boundary_energy(double g_over_omega) {
    const double g = g_over_omega;
    if (!(g > 0.0) || g > 1.0 / std::sqrt(2.0) + 1e-15)
        throw DomainError("pusc_boundary_energy: requires 0 < g/omega <= 1/sqrt(2)");
    const double g2 = g * g;
    const double inner = std::max(0.0, (5.0 - 2.0 * g2) * (1.0 - 2.0 * g2));
    return 0.25 / g2 * (1.0 - 2.0 * g2 * g2) - 1.0 + 0.25 * std::sqrt(inner);
}

// ------------------------- quasi-degeneracy crossings ------------------------

namespace detail {

// Largest zero of L_n as the top eigenvalue of its Jacobi matrix.
inline double laguerre_largest_zero(int n) {
    if (n == 1) return 1.0;
    Eigen::VectorXd diag(n), off(n - 1);
    for (int k = 0; k < n; ++k) diag(k) = 2.0 * k + 1.0;
    for (int k = 0; k + 1 < n; ++k) off(k) = k + 1.0;
    return tridiag_eigen(diag, off, false).values(n - 1);
}

} // namespace detail

// Largest alpha solving (Omega/omega) e^{-2 alpha^2} |L_n(4 alpha^2)| = delta_th,
// bracketed beyond the last extremum of the left side and bisected.
inline double pdsc_crossing(int n, double delta_th, double omega_q_over_omega = 1.0) {
    if (n < 1) throw DomainError("pdsc_crossing: n must be >= 1");
    if (!(delta_th > 0.0 && delta_th < 1.0))
        throw DomainError("pdsc_crossing: delta_th must be in (0,1)");
    if (!(omega_q_over_omega > 0.0))
        throw DomainError("pdsc_crossing: omega_q/omega must be > 0");
    const double target = delta_th / omega_q_over_omega;
    const auto f = [n](double a) {
        return std::exp(-2.0 * a * a) * std::abs(laguerre(n, 4.0 * a * a));
    };
    // climb from the largest zero of L_n(4 a^2) to the final extremum
    const double zero = 0.5 * std::sqrt(detail::laguerre_largest_zero(n));
    double a = zero;
    const double step = 0.02;
    while (f(a + step) > f(a)) a += step;
    // refine the extremum; f is unimodal on [zero, inf)
    double plo = std::max(zero, a - step), phi = a + step;
    while (phi - plo > 1e-9) {
        const double m1 = plo + (phi - plo) / 3.0;
        const double m2 = phi - (phi - plo) / 3.0;
        if (f(m1) < f(m2)) plo = m1; else phi = m2;
    }
    const double peak_alpha = 0.5 * (plo + phi);
    if (f(peak_alpha) < target)
        throw ThresholdError(n, "pdsc_crossing: threshold " + std::to_string(delta_th) +
                                    " exceeds the last extremum for n = " + std::to_string(n));
    double lo = peak_alpha;
    double hi = lo;
    do {
        lo = hi;
        hi += 0.1;
    } while (f(hi) > target);
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// First-order change of the largest root under delta -> delta + d_delta. The sign
// of L_n at the root ((-1)^n for the largest one) keeps the derivative of |L_n|
// correct for odd n.
inline double delta_sensitivity(int n, double alpha_delta, double d_delta) {
    if (n < 1) throw DomainError("delta_sensitivity: n must be >= 1");
    if (!(alpha_delta > 0.0)) throw DomainError("delta_sensitivity: alpha must be > 0");
    const double x = 4.0 * alpha_delta * alpha_delta;
    const double ln = laguerre(n, x);
    const double denom = 4.0 * alpha_delta * (ln + 2.0 * assoc_laguerre(n - 1, 1, x));
    if (std::abs(denom) < 1e-300 || ln == 0.0)
        throw SensitivityError("delta_sensitivity: vanishing denominator");
    const double sign_ln = ln > 0.0 ? 1.0 : -1.0;
    return -sign_ln * std::exp(2.0 * alpha_delta * alpha_delta) * d_delta / denom;
}

// ------------------------------ boundary fit ---------------------------------

struct FitCoeffs {
    double a{0.0};
    double b{0.0};
    double c{0.0};
};

// Ordinary least squares of E/omega + (g/omega)^2 on (g^2, g, 1); normal
// equations solved directly.
inline FitCoeffs fit_pdsc_boundary(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) throw FitError("fit_pdsc_boundary: need at least 3 points");
    double m[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    double r[3] = {0, 0, 0};
    for (const auto& [g, energy] : points) {
        const double basis[3] = {g * g, g, 1.0};
        const double t = energy + g * g;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) m[i][j] += basis[i] * basis[j];
            r[i] += basis[i] * t;
        }
    }
    // Gaussian elimination with partial pivoting on the 3x3 system
    int perm[3] = {0, 1, 2};
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int row = col + 1; row < 3; ++row)
            if (std::abs(m[perm[row]][col]) > std::abs(m[perm[piv]][col])) piv = row;
        std::swap(perm[col], perm[piv]);
        const double diag = m[perm[col]][col];
        if (std::abs(diag) < 1e-12 * std::max(1.0, std::abs(m[0][0])))
            throw FitError("fit_pdsc_boundary: rank-deficient design (collinear g values)");
        for (int row = col + 1; row < 3; ++row) {
            const double f = m[perm[row]][col] / diag;
            for (int j = col; j < 3; ++j) m[perm[row]][j] -= f * m[perm[col]][j];
            r[perm[row]] -= f * r[perm[col]];
        }
    }
    double x[3];
    for (int col = 2; col >= 0; --col) {
        double acc = r[perm[col]];
        for (int j = col + 1; j < 3; ++j) acc -= m[perm[col]][j] * x[j];
        x[col] = acc / m[perm[col]][col];
    }
    return FitCoeffs{x[0], x[1], x[2]};
}

// ------------------------------ classification -------------------------------

enum class Regime { PerturbativeUSC, NonPerturbative, PerturbativeDSC };

inline const char* regime_name(Regime r) {
    switch (r) {
        case Regime::PerturbativeUSC: return "PerturbativeUSC";
        case Regime::NonPerturbative: return "NonPerturbative";
        case Regime::PerturbativeDSC: return "PerturbativeDSC";
    }
    return "?";
}

struct BoundaryCurves {
    double pusc_g_max{0.0};            // 1/sqrt(6)
    FitCoeffs pdsc_fit;                // (a, b, c)
    double delta_th{0.1};              // quasi-degeneracy threshold
    double pdsc_g_min{0.0};            // first crossing at delta_th
    std::vector<double> crossings;     // crossings[k] = pdsc_crossing(k+1, delta_th)
    int fit_n_max{30};

    double pdsc_boundary_energy(double g_over_omega) const {
        const double g = g_over_omega;
        return (pdsc_fit.a - 1.0) * g * g + pdsc_fit.b * g + pdsc_fit.c;
    }

    // The twelve-crossing table underestimates the quadratic's tail; fitting
    // through n_max = 30 reproduces the asymptotic boundary. The last extremum
    // of the left side decreases with n, so for larger delta_th the crossings
    // stop existing at some n; the fitted curve extends the boundary past them.
    static BoundaryCurves build(double delta_th = 0.1, int fit_n_max = 30) {
        if (fit_n_max < 3) throw DomainError("BoundaryCurves: fit_n_max must be >= 3");
        BoundaryCurves curves;
        curves.pusc_g_max = 1.0 / std::sqrt(6.0);
        curves.delta_th = delta_th;
        curves.fit_n_max = fit_n_max;
        std::vector<std::pair<double, double>> pts;
        pts.reserve(fit_n_max);
        for (int n = 1; n <= fit_n_max; ++n) {
            double g = 0.0;
            try {
                g = pdsc_crossing(n, delta_th);
            } catch (const ThresholdError&) {
                if (n == 1) throw;
                break; // extrema decrease with n; later ones fail as well
            }
            curves.crossings.push_back(g);
            pts.emplace_back(g, n - g * g); // midpoint energy (E+ + E-)/2 at the crossing
        }
        curves.pdsc_g_min = curves.crossings.front();
        curves.pdsc_fit = fit_pdsc_boundary(pts);
        return curves;
    }
};

struct RegimeMargins {
    double pusc_coupling{0.0};               // pusc_g_max - g
    std::optional<double> pusc_energy{};     // boundary(g) - E, when g <= pusc_g_max
    double pdsc_coupling{0.0};               // g - pdsc_g_min
    double pdsc_energy{0.0};                 // boundary(g) - E
};

struct RegimeLabel {
    Regime region{Regime::NonPerturbative};
    RegimeMargins margins;
};

// Boundaries are inclusive toward the perturbative regions.
inline RegimeLabel classify(double g_over_omega, double mean_energy_over_omega,
                            const BoundaryCurves& curves) {
    if (!(g_over_omega >= 0.0)) throw DomainError("classify: g/omega must be >= 0");
    const double g = g_over_omega;
    const double energy = mean_energy_over_omega;

    RegimeMargins margins;
    margins.pusc_coupling = curves.pusc_g_max - g;
    bool pusc = false;
    if (g == 0.0) { // boundary diverges as g -> 0; the decoupled limit is perturbative
        margins.pusc_energy = std::numeric_limits<double>::infinity();
        pusc = true;
    } else if (g <= curves.pusc_g_max) {
        const double bound = pusc_boundary_energy(g);
        margins.pusc_energy = bound - energy;
        pusc = energy <= bound;
    }
    const double pdsc_bound = curves.pdsc_boundary_energy(g);
    margins.pdsc_coupling = g - curves.pdsc_g_min;
    margins.pdsc_energy = pdsc_bound - energy;
    const bool pdsc = g >= curves.pdsc_g_min && energy <= pdsc_bound;

    if (pusc && pdsc)
        throw ConsistencyError("classify: point satisfies both perturbative conditions");
    RegimeLabel label;
    label.margins = margins;
    label.region = pusc ? Regime::PerturbativeUSC
                        : (pdsc ? Regime::PerturbativeDSC : Regime::NonPerturbative);
    return label;
}

// <psi|H|psi> in the state's own truncation.
inline double mean_energy(const JointState& psi, const ModelParams& p) {
    const Eigen::VectorXcd h_psi = apply_hamiltonian(p, psi);
    return psi.amps.dot(h_psi).real();
}

// --------------------------- numeric level crossings --------------------------

enum class JuddianMethod { ApproxFirstOrder, Numeric };

struct JuddianPoint {
    int n{0};                  // crossing label; chain level index for first crossings
    double g_cross{0.0};       // in units of omega
    double energy{0.0};        // in units of omega
    JuddianMethod method{JuddianMethod::Numeric};
    int plus_index{0};         // level index within the p = +1 chain
    int minus_index{0};        // level index within the p = -1 chain
};

struct GRange {
    double g_min{0.0};
    double g_max{0.0};
    int steps{2};
};

// Scans converged spectra over the grid, detects sign changes of
// E^{+}_i(g) - E^{-}_j(g) for adjacent-in-energy opposite-parity pairs and
// refines each crossing by bisection to 1e-6 in g (units of omega).
inline std::vector<JuddianPoint> juddian_points_numeric(const GRange& range, int n_levels,
                                                        double omega_q_over_omega = 1.0,
                                                        int n_max = 0) {
    if (!(range.g_min > 0.0) || !(range.g_max >= range.g_min))
        throw DomainError("juddian_points_numeric: need 0 < g_min <= g_max");
    if (range.steps < 2) throw DomainError("juddian_points_numeric: need at least 2 grid points");
    if (n_levels < 1) throw DomainError("juddian_points_numeric: n_levels must be >= 1");

    const ModelParams at_max{1.0, omega_q_over_omega, range.g_max};
    const int dim_n = n_max > 0 ? n_max : default_n_max(at_max) + 2 * n_levels;

    const auto values = [&](double g, int parity) {
        const ModelParams p{1.0, omega_q_over_omega, g};
        return detail::chain_values(p, dim_n, parity);
    };

    std::vector<double> grid(range.steps);
    for (int i = 0; i < range.steps; ++i)
        grid[i] = range.g_min + (range.g_max - range.g_min) * i / (range.steps - 1.0);

    std::vector<Eigen::VectorXd> vp(range.steps), vm(range.steps);
    for (int i = 0; i < range.steps; ++i) {
        vp[i] = values(grid[i], +1);
        vm[i] = values(grid[i], -1);
    }

    // candidate (i, j) pairs: adjacent in energy at either end of an interval
    const auto adjacent_pairs = [&](int gi) {
        std::vector<std::pair<int, int>> pairs;
        std::vector<std::pair<double, int>> sorted; // (energy, ±(index+1))
        for (int k = 0; k < n_levels; ++k) {
            sorted.emplace_back(vp[gi](k), k + 1);
            sorted.emplace_back(vm[gi](k), -(k + 1));
        }
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t s = 0; s + 1 < sorted.size(); ++s) {
            const int a = sorted[s].second, b = sorted[s + 1].second;
            if ((a > 0) != (b > 0))
                pairs.emplace_back(std::abs(a > 0 ? a : b) - 1, std::abs(a > 0 ? b : a) - 1);
        }
        return pairs;
    };

    std::vector<JuddianPoint> points;
    for (int seg = 0; seg + 1 < range.steps; ++seg) {
        auto pairs = adjacent_pairs(seg);
        const auto more = adjacent_pairs(seg + 1);
        pairs.insert(pairs.end(), more.begin(), more.end());
        std::sort(pairs.begin(), pairs.end());
        pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
        for (const auto& [i, j] : pairs) {
            const double d_lo = vp[seg](i) - vm[seg](j);
            const double d_hi = vp[seg + 1](i) - vm[seg + 1](j);
            if (d_lo == 0.0 || d_lo * d_hi > 0.0) continue;
            double lo = grid[seg], hi = grid[seg + 1];
            double f_lo = d_lo;
            while (hi - lo > 1e-6) {
                const double mid = 0.5 * (lo + hi);
                const double f_mid = values(mid, +1)(i) - values(mid, -1)(j);
                if (f_mid == 0.0 || f_mid * f_lo < 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    f_lo = f_mid;
                }
            }
            const double g_cross = 0.5 * (lo + hi);
            JuddianPoint pt;
            pt.n = (i == j) ? i : std::min(i, j);
            pt.g_cross = g_cross;
            pt.energy = values(g_cross, +1)(i);
            pt.method = JuddianMethod::Numeric;
            pt.plus_index = i;
            pt.minus_index = j;
            points.push_back(pt);
        }
    }
    std::stable_sort(points.begin(), points.end(),
                     [](const JuddianPoint& a, const JuddianPoint& b) {
                         return a.g_cross < b.g_cross;
                     });
    return points;
}

} // namespace rabi
