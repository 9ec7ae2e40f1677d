// Acceptance suite: one pass/fail line per criterion, exit code = number failed.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "rabi/rabi.hpp"

using namespace rabi;

namespace {

struct Checker {
    bool ok{true};
    std::ostringstream detail;

    void require(bool cond, const std::string& msg) {
        if (!cond) {
            if (!ok) detail << "; ";
            ok = false;
            detail << msg;
        }
    }
    void note(const std::string& msg) {
        if (ok && detail.tellp() == 0) detail << msg;
    }
};

int g_criterion = 0;
int g_failures = 0;

void run(const std::string& name, const std::function<void(Checker&)>& body) {
    ++g_criterion;
    Checker c;
    try {
        body(c);
    } catch (const std::exception& e) {
        c.require(false, std::string("exception: ") + e.what());
    }
    if (!c.ok) ++g_failures;
    std::printf("[%s] criterion %d: %s%s%s\n", c.ok ? "PASS" : "FAIL", g_criterion,
                name.c_str(), c.detail.tellp() > 0 ? " — " : "",
                c.detail.str().c_str());
    std::fflush(stdout);
}

std::vector<double> sorted_bs_levels(const ModelParams& p, int count, bool third_order) {
    std::vector<double> all{third_order ? bs3_energy(p, 0, +1) : bs_energy(p, 0, +1)};
    for (int n = 1; n <= count + 3; ++n) {
        for (int b : {-1, +1})
            all.push_back(third_order ? bs3_energy(p, n, b) : bs_energy(p, n, b));
    }
    std::sort(all.begin(), all.end());
    all.resize(count);
    return all;
}

double entropy_of(const JointState& psi) {
    return von_neumann_entropy(reduced_qubit_density(psi));
}

} // namespace

int main() {
    const double table_one[12] = {1.473, 1.778, 2.035, 2.261, 2.466, 2.655,
                                  2.832, 2.998, 3.155, 3.304, 3.447, 3.584};

    run("quasi-degeneracy crossings n = 1..12 at threshold 0.1 within 0.001", [&](Checker& c) {
        double worst = 0.0;
        for (int n = 1; n <= 12; ++n) {
            const double g = pdsc_crossing(n, 0.1);
            worst = std::max(worst, std::abs(g - table_one[n - 1]));
            c.require(std::abs(g - table_one[n - 1]) <= 1e-3,
                      "n=" + std::to_string(n) + " off by " +
                          std::to_string(std::abs(g - table_one[n - 1])));
        }
        c.note("max deviation " + std::to_string(worst));
    });

    run("boundary fit coefficients within (0.02, 0.02, 0.05) of (1.0425, -0.054478, -1.1987)",
        [&](Checker& c) {
            std::vector<std::pair<double, double>> pts;
            for (int n = 1; n <= 30; ++n) {
                const double g = pdsc_crossing(n, 0.1);
                pts.emplace_back(g, n - g * g);
            }
            const FitCoeffs f = fit_pdsc_boundary(pts);
            c.require(std::abs(f.a - 1.0425) <= 0.02, "a = " + std::to_string(f.a));
            c.require(std::abs(f.b + 0.054478) <= 0.02, "b = " + std::to_string(f.b));
            c.require(std::abs(f.c + 1.1987) <= 0.05, "c = " + std::to_string(f.c));
            c.note("a=" + std::to_string(f.a) + " b=" + std::to_string(f.b) +
                   " c=" + std::to_string(f.c));
        });

    run("first numeric crossing within 10% of 1/sqrt(6); crossings decrease for n = 1..4",
        [&](Checker& c) {
            const auto pts = juddian_points_numeric(GRange{0.2, 0.6, 17}, 5);
            double first[5] = {0, 0, 0, 0, 0};
            for (const auto& pt : pts) {
                if (pt.plus_index == pt.minus_index && pt.plus_index >= 1 &&
                    pt.plus_index <= 4 && first[pt.plus_index] == 0.0)
                    first[pt.plus_index] = pt.g_cross;
            }
            c.require(first[1] > 0.0, "no (1,1) crossing found");
            if (first[1] > 0.0) {
                const double est = 1.0 / std::sqrt(6.0);
                c.require(std::abs(first[1] - est) / est <= 0.10,
                          "first crossing " + std::to_string(first[1]));
                c.note("g_cross(1) = " + std::to_string(first[1]));
            }
            for (int n = 1; n <= 3; ++n) {
                c.require(first[n] > 0.0 && first[n + 1] > 0.0,
                          "missing crossing n=" + std::to_string(n + 1));
                if (first[n] > 0.0 && first[n + 1] > 0.0)
                    c.require(first[n + 1] < first[n],
                              "crossings not decreasing at n=" + std::to_string(n));
            }
        });

    run("second-order energies within 0.02 for g <= 0.3 (lowest 8); third order at least "
        "as accurate for >= 80% of pairs",
        [&](Checker& c) {
            double worst2 = 0.0;
            double worst_g = 0.0;
            int at_least = 0, total = 0;
            for (double g : {0.05, 0.10, 0.15, 0.20, 0.25, 0.30}) {
                const ModelParams p{1.0, 1.0, g};
                const Spectrum s = converged_spectrum(p, 8);
                const auto e2 = sorted_bs_levels(p, 8, false);
                const auto e3 = sorted_bs_levels(p, 8, true);
                for (int k = 0; k < 8; ++k) {
                    const double d2 = std::abs(e2[k] - s.levels[k].energy);
                    const double d3 = std::abs(e3[k] - s.levels[k].energy);
                    if (d2 > worst2) {
                        worst2 = d2;
                        worst_g = g;
                    }
                    ++total;
                    if (d3 <= d2 + 1e-14) ++at_least;
                }
            }
            c.require(worst2 <= 0.02, "max |E_bs2 - E_exact| = " + std::to_string(worst2) +
                                          " at g = " + std::to_string(worst_g) +
                                          " (levels beyond their first crossings)");
            c.require(at_least >= static_cast<int>(0.8 * total),
                      "third order better for only " + std::to_string(at_least) + "/" +
                          std::to_string(total));
            c.note("bs3 at least as accurate for " + std::to_string(at_least) + "/" +
                   std::to_string(total));
        });

    run("cat states past the crossings: fidelity >= 0.99 and energies within 0.05",
        [&](Checker& c) {
            double worst_fid = 1.0, worst_de = 0.0;
            for (int n = 0; n <= 3; ++n) {
                const double gx = pdsc_crossing(std::max(n, 1), 0.1);
                for (double extra : {0.5, 1.0}) {
                    const ModelParams p{1.0, 1.0, gx + extra};
                    const Spectrum s = converged_spectrum(p, 2 * n + 6);
                    for (int branch : {+1, -1}) {
                        const JointState cat =
                            adiabatic_state(p, n, branch, Truncation{s.trunc.n_max});
                        double best = 0.0;
                        double e_best = 0.0;
                        for (const auto& level : s.levels) {
                            const double f = fidelity(cat, level.vector);
                            if (f > best) {
                                best = f;
                                e_best = level.energy;
                            }
                        }
                        const double de = std::abs(adiabatic_energy(p, n, branch) - e_best);
                        worst_fid = std::min(worst_fid, best);
                        worst_de = std::max(worst_de, de);
                        c.require(best >= 0.99, "fidelity " + std::to_string(best) + " at n=" +
                                                    std::to_string(n) + " g=" +
                                                    std::to_string(p.g0));
                        c.require(de <= 0.05, "energy gap " + std::to_string(de) + " at n=" +
                                                  std::to_string(n));
                    }
                }
            }
            c.note("min fidelity " + std::to_string(worst_fid) + ", max |dE| " +
                   std::to_string(worst_de));
        });

    run("total excitations of quasi-degenerate pairs within 0.1 of alpha^2 + n + 1/2",
        [&](Checker& c) {
            double worst = 0.0;
            for (double alpha : {3.0, 4.0, 5.0}) {
                const Spectrum s = converged_spectrum(ModelParams{1.0, 1.0, alpha}, 8);
                for (int n = 0; n <= 3; ++n) {
                    for (int member : {2 * n, 2 * n + 1}) {
                        const double dev =
                            std::abs(total_excitations(s.levels[member].vector) -
                                     alpha * alpha - (n + 0.5));
                        worst = std::max(worst, dev);
                        c.require(dev <= 0.1, "deviation " + std::to_string(dev) + " at alpha=" +
                                                  std::to_string(alpha) + " n=" +
                                                  std::to_string(n));
                    }
                }
            }
            c.note("max deviation " + std::to_string(worst));
        });

    run("photon statistics: Q < 0 at the sub-crossing samples, Q > 0 in the deep region, "
        "cat moments exact",
        [&](Checker& c) {
            for (int n = 1; n <= 4; ++n) {
                const double alpha = 0.8 * first_juddian_approx(n);
                const Spectrum s = converged_spectrum(ModelParams{1.0, 1.0, alpha}, 2 * n + 2);
                for (int member : {2 * n - 1, 2 * n}) {
                    const auto q = fano_mandel(s.levels[member].vector);
                    c.require(q.has_value() && *q < 0.0,
                              "Q not negative at n=" + std::to_string(n));
                }
            }
            const Spectrum deep = converged_spectrum(ModelParams{1.0, 1.0, 3.0}, 10);
            for (int n = 1; n <= 4; ++n) {
                for (int member : {2 * n, 2 * n + 1}) {
                    const auto q = fano_mandel(deep.levels[member].vector);
                    c.require(q.has_value() && *q > 0.0,
                              "Q not positive at n=" + std::to_string(n));
                }
            }
            const ModelParams p{1.0, 1.0, 3.0};
            const Truncation t{default_n_max(p)};
            for (int n = 1; n <= 4; ++n) {
                const Eigen::VectorXd dist =
                    photon_distribution(adiabatic_state(p, n, +1, t));
                double mean = 0.0, second = 0.0;
                for (int m = 0; m < dist.size(); ++m) {
                    mean += m * dist(m);
                    second += static_cast<double>(m) * m * dist(m);
                }
                const double lhs = second - mean * mean - mean;
                const double rhs = n * (2.0 * 9.0 - 1.0);
                c.require(std::abs(lhs - rhs) <= 1e-6 * rhs,
                          "cat moment identity off at n=" + std::to_string(n));
            }
        });

    run("entanglement entropy: dressed states within 5e-3 of 1 - n alpha^2/8; "
        "pair entropy >= 0.995 past the crossings",
        [&](Checker& c) {
            double worst_bs = 0.0;
            for (int n = 1; n <= 3; ++n) {
                const double bound = first_juddian_approx(n);
                for (double frac : {0.25, 0.45}) {
                    const ModelParams p{1.0, 1.0, frac * bound};
                    const BlochSiegertTransform tr(p, Truncation{40});
                    for (int branch : {+1, -1}) {
                        const double s = entropy_of(tr.eigenstate(n, branch));
                        const double dev = std::abs(s - (1.0 - n * p.g0 * p.g0 / 8.0));
                        worst_bs = std::max(worst_bs, dev);
                        c.require(dev <= 5e-3, "dressed-state entropy off by " +
                                                   std::to_string(dev) + " at n=" +
                                                   std::to_string(n));
                    }
                }
            }
            double worst_pair = 1.0;
            for (int n = 1; n <= 3; ++n) {
                const double gx = pdsc_crossing(n, 0.1);
                for (double factor : {1.4, 1.7}) {
                    const Spectrum s =
                        converged_spectrum(ModelParams{1.0, 1.0, factor * gx}, 2 * n + 4);
                    for (int member : {2 * n, 2 * n + 1}) {
                        const double se = entropy_of(s.levels[member].vector);
                        worst_pair = std::min(worst_pair, se);
                        c.require(se >= 1.0 - 0.5 * 0.1 * 0.1,
                                  "pair entropy " + std::to_string(se) + " at n=" +
                                      std::to_string(n) + " g=" + std::to_string(factor * gx));
                    }
                }
            }
            c.note("max dressed deviation " + std::to_string(worst_bs) + ", min pair entropy " +
                   std::to_string(worst_pair));
        });

    run("photon distributions at g0 = 5: total variation <= 0.05, center within 2 of 25",
        [&](Checker& c) {
            const Spectrum s = converged_spectrum(ModelParams{1.0, 1.0, 5.0}, 8);
            double worst_tvd = 0.0;
            for (int n = 0; n <= 3; ++n) {
                for (int member : {2 * n, 2 * n + 1}) {
                    const Eigen::VectorXd dist = photon_distribution(s.levels[member].vector);
                    double tvd = 0.0;
                    for (int m = 0; m <= s.trunc.n_max; ++m) {
                        const double d = displacement_element(m, n, 5.0);
                        tvd += std::abs(dist(m) - d * d);
                    }
                    tvd *= 0.5;
                    worst_tvd = std::max(worst_tvd, tvd);
                    c.require(tvd <= 0.05,
                              "TVD " + std::to_string(tvd) + " at n=" + std::to_string(n));
                    const auto modes = photon_modes(dist, 1e-3);
                    c.require(!modes.empty(), "no modes found");
                    if (!modes.empty()) {
                        const double center =
                            0.5 * (static_cast<double>(modes.front().index) +
                                   static_cast<double>(modes.back().index));
                        c.require(std::abs(center - 25.0) <= 2.0,
                                  "center " + std::to_string(center) + " at n=" +
                                      std::to_string(n));
                    }
                }
            }
            c.note("max TVD " + std::to_string(worst_tvd));
        });

    run("dynamics: steady vacuum at g = 0.1, cos^2 flopping for one photon, revival at "
        "2 pi for g = 5, leakage <= 1e-8",
        [&](Checker& c) {
            {
                const ModelParams p{1.0, 1.0, 0.1};
                const Spectrum s = converged_spectrum(p, 24);
                const EvolutionPlan plan = make_evolution_plan(
                    s, JointState::basis(Qubit::g, 0, s.trunc.n_max), make_time_grid(13.0));
                const auto trace = survival_trace(plan);
                const double min_p = *std::min_element(trace.begin(), trace.end());
                c.require(min_p >= 0.98, "vacuum survival dropped to " + std::to_string(min_p));
                c.require(parity_confinement(plan) <= 1e-8, "vacuum leakage above 1e-8");
            }
            {
                const ModelParams p{1.0, 1.0, 0.1};
                const Spectrum s = converged_spectrum(p, 24);
                const EvolutionPlan plan = make_evolution_plan(
                    s, JointState::basis(Qubit::g, 1, s.trunc.n_max),
                    make_time_grid(100.0, 0.01));
                const auto trace = survival_trace(plan);
                double rss = 0.0;
                for (std::size_t i = 0; i < plan.times.size(); ++i) {
                    const double ref = std::pow(std::cos(0.1 * plan.times[i]), 2);
                    rss += (trace[i] - ref) * (trace[i] - ref);
                }
                const double rms = std::sqrt(rss / plan.times.size());
                c.require(rms <= 0.02, "cos^2 fit RMS " + std::to_string(rms));
                c.require(parity_confinement(plan) <= 1e-8, "one-photon leakage above 1e-8");
            }
            {
                const ModelParams p{1.0, 1.0, 5.0};
                const Spectrum s = converged_spectrum(p, 160);
                const EvolutionPlan plan = make_evolution_plan(
                    s, JointState::basis(Qubit::g, 0, s.trunc.n_max), make_time_grid(13.0));
                const auto peaks = revival_profile(plan);
                c.require(!peaks.empty(), "no revival peak found");
                if (!peaks.empty()) {
                    c.require(std::abs(peaks.front().time - 2.0 * std::numbers::pi) <= 0.3,
                              "first revival at " + std::to_string(peaks.front().time));
                    c.require(peaks.front().height >= 0.5,
                              "revival height " + std::to_string(peaks.front().height));
                    c.note("revival at " + std::to_string(peaks.front().time) + ", height " +
                           std::to_string(peaks.front().height));
                }
                c.require(parity_confinement(plan) <= 1e-8, "deep-coupling leakage above 1e-8");
            }
        });

    run("structure: parity blocks, chain/dense union, orthonormal residuals, displacement "
        "unitarity and exponential route, scale-invariant labels",
        [&](Checker& c) {
            {
                const ModelParams p{1.0, 0.8, 0.9};
                const Truncation t{16};
                const Eigen::MatrixXd h = build_dense_hamiltonian(p, t);
                double off_block = 0.0;
                for (int i = 0; i < t.dim(); ++i) {
                    for (int j = 0; j < t.dim(); ++j) {
                        const int pi = parity_of_basis_state(i % 2 ? Qubit::e : Qubit::g, i / 2);
                        const int pj = parity_of_basis_state(j % 2 ? Qubit::e : Qubit::g, j / 2);
                        if (pi != pj) off_block = std::max(off_block, std::abs(h(i, j)));
                    }
                }
                c.require(off_block == 0.0, "parity block structure violated");
            }
            {
                const ModelParams p{1.0, 1.0, 1.0};
                const Truncation t{200};
                const Eigen::VectorXd dense =
                    dense_sym_eigen(build_dense_hamiltonian(p, t), false).values;
                std::vector<double> merged;
                for (int parity : {+1, -1}) {
                    const ParityChain ch = build_parity_chain(p, t, parity);
                    const auto r = tridiag_eigen(ch.diag, ch.offdiag, false);
                    merged.insert(merged.end(), r.values.data(),
                                  r.values.data() + r.values.size());
                }
                std::sort(merged.begin(), merged.end());
                double worst = 0.0;
                for (int i = 0; i < dense.size(); ++i)
                    worst = std::max(worst, std::abs(merged[i] - dense(i)));
                c.require(worst <= 1e-9, "chain/dense union deviation " + std::to_string(worst));
            }
            {
                const ModelParams p{1.0, 1.0, 1.5};
                const Truncation t{150};
                const ParityChain ch = build_parity_chain(p, t, +1);
                const auto r = tridiag_eigen(ch.diag, ch.offdiag, true);
                const int n = static_cast<int>(ch.diag.size());
                const Eigen::MatrixXd gram = r.vectors.transpose() * r.vectors;
                c.require((gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-8,
                          "eigenvectors lost orthonormality");
                const double scale = std::max(ch.diag.cwiseAbs().maxCoeff(),
                                              ch.offdiag.cwiseAbs().maxCoeff());
                for (int k = 0; k < n; k += 17) {
                    Eigen::VectorXd tv = ch.diag.cwiseProduct(r.vectors.col(k));
                    for (int i = 0; i + 1 < n; ++i) {
                        tv(i) += ch.offdiag(i) * r.vectors.col(k)(i + 1);
                        tv(i + 1) += ch.offdiag(i) * r.vectors.col(k)(i);
                    }
                    c.require((tv - r.values(k) * r.vectors.col(k)).norm() <=
                                  1e-10 * scale * n,
                              "residual bound violated at k=" + std::to_string(k));
                }
            }
            {
                double unit_worst = 0.0;
                for (double a : {1.0, 2.0, 3.0}) {
                    const int m_top = static_cast<int>(a * a + 10.0 * a + 20.0);
                    for (int n = 0; n <= 5; ++n) {
                        double sum = 0.0;
                        for (int m = 0; m <= m_top; ++m) {
                            const double d = displacement_element(m, n, a);
                            sum += d * d;
                        }
                        unit_worst = std::max(unit_worst, std::abs(sum - 1.0));
                    }
                }
                c.require(unit_worst <= 1e-10,
                          "displacement unitarity deficit " + std::to_string(unit_worst));

                const int inner = 40, outer = 80;
                Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(outer, outer);
                for (int n = 0; n + 1 < outer; ++n) {
                    gen(n + 1, n) = 1.5 * std::sqrt(n + 1.0);
                    gen(n, n + 1) = -1.5 * std::sqrt(n + 1.0);
                }
                const Eigen::MatrixXd d = expm_antisymmetric(gen);
                double exp_worst = 0.0;
                for (int m = 0; m < inner; ++m)
                    for (int n = 0; n < inner; ++n)
                        exp_worst = std::max(
                            exp_worst, std::abs(d(m, n) - displacement_element(m, n, 1.5)));
                c.require(exp_worst <= 1e-8,
                          "exponential route deviates by " + std::to_string(exp_worst));
            }
            {
                const BoundaryCurves curves = BoundaryCurves::build(0.1, 30);
                for (auto [g, n] : std::vector<std::pair<double, int>>{
                         {0.1, 0}, {1.0, 1}, {5.0, 0}}) {
                    Regime reference{};
                    bool first = true;
                    for (double scale : {1.0, 4.0, 0.25}) {
                        const ModelParams p{scale, scale, g * scale};
                        const JointState psi = JointState::basis(Qubit::g, n, 24);
                        const Regime region =
                            classify(p.g0 / p.omega, mean_energy(psi, p) / p.omega, curves)
                                .region;
                        if (first) {
                            reference = region;
                            first = false;
                        }
                        c.require(region == reference, "label changed under rescaling");
                    }
                }
            }
        });

    std::printf("%d of %d criteria passed\n", g_criterion - g_failures, g_criterion);
    return g_failures;
}
