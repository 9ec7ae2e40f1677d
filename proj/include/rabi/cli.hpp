// cli.hpp — Scan configuration, per-command table builders, and output rendering
//
// The CLI emits plot-ready data only. Grid points are evaluated concurrently
// (RABI_REGIMES_THREADS caps the pool) and assembled in grid order, so output
// is deterministic. Exit convention: 0 success, 1 computation failure, 2 usage.

#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rabi/adiabatic.hpp"
#include "rabi/bloch_siegert.hpp"
#include "rabi/dynamics.hpp"
#include "rabi/eigensolve.hpp"
#include "rabi/observables.hpp"
#include "rabi/parallel.hpp"
#include "rabi/params.hpp"
#include "rabi/regimes.hpp"
#include "rabi/table.hpp"

namespace rabi::cli {

struct UsageError : RabiError {
    using RabiError::RabiError;
};

struct ScanConfig {
    double g_min{0.0};
    double g_max{0.0};
    int g_steps{1};
    double g{0.0};                 // single-point commands (classify, dynamics, dump)
    double omega_q_over_omega{1.0};
    int levels{8};
    double delta_th{0.1};
    int n_max{0};                  // 0 = automatic cutoff
    std::string state;             // basis ket "g0"/"e3" or a JSON amplitude file
    std::optional<double> energy;
    std::string format{"csv"};
    std::string out;
    double t_max{13.0};
    double dt{0.005};
    bool dump_distribution{false};
    int level{0};
    int fit_n_max{30};
};

struct CommandOutput {
    Table table;
    nlohmann::json config;
    nlohmann::json summary; // null unless the command produces one
    bool any_failure{false};
};

namespace cli_detail {

inline constexpr double kModeProminenceFloor = 1e-3;

inline std::vector<double> g_grid(const ScanConfig& cfg) {
    if (cfg.g_steps < 1) throw UsageError("g-steps must be >= 1");
    if (cfg.g_min < 0.0 || cfg.g_max < cfg.g_min)
        throw UsageError("require 0 <= g-min <= g-max");
    std::vector<double> grid(cfg.g_steps);
    for (int i = 0; i < cfg.g_steps; ++i) {
        grid[i] = cfg.g_steps == 1
                      ? cfg.g_min
                      : cfg.g_min + (cfg.g_max - cfg.g_min) * i / (cfg.g_steps - 1.0);
    }
    return grid;
}

inline ModelParams params_at(const ScanConfig& cfg, double g) {
    return ModelParams{1.0, cfg.omega_q_over_omega, g};
}

inline SpectrumOptions spectrum_options(const ScanConfig& cfg) {
    SpectrumOptions opts;
    if (cfg.n_max > 0) opts.initial_n_max = cfg.n_max;
    return opts;
}

// Lowest `count` of a two-branch ladder plus its ground level, sorted.
template <typename EnergyFn>
inline std::vector<double> sorted_ladder(EnergyFn&& energy, int count) {
    std::vector<double> all;
    all.push_back(energy(0, +1));
    for (int n = 1; n <= count + 2; ++n) {
        all.push_back(energy(n, -1));
        all.push_back(energy(n, +1));
    }
    std::sort(all.begin(), all.end());
    all.resize(count);
    return all;
}

inline std::vector<double> sorted_adiabatic(const ModelParams& p, int count) {
    std::vector<double> all;
    for (int n = 0; n <= count + 2; ++n) {
        all.push_back(adiabatic_energy(p, n, -1));
        all.push_back(adiabatic_energy(p, n, +1));
    }
    std::sort(all.begin(), all.end());
    all.resize(count);
    return all;
}

inline JointState pad_state(const JointState& psi, int n_max) {
    if (psi.n_max() > n_max) throw ContractError("pad_state: shrinking not supported");
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(2 * (n_max + 1));
    amps.head(psi.amps.size()) = psi.amps;
    return JointState(std::move(amps));
}

} // namespace cli_detail

// "g<N>"/"e<N>" basis kets, or a path to a JSON array of [re, im] pairs in the
// fixed index = 2n + qubit ordering.
inline JointState parse_state_spec(const std::string& spec, int n_max_hint = 8) {
    if (spec.empty()) throw UsageError("state spec is empty");
    if ((spec[0] == 'g' || spec[0] == 'e') && spec.size() > 1 &&
        spec.find_first_not_of("0123456789", 1) == std::string::npos) {
        const int n = std::stoi(spec.substr(1));
        const int n_max = std::max(n_max_hint, n + 4);
        return JointState::basis(spec[0] == 'g' ? Qubit::g : Qubit::e, n, n_max);
    }
    std::ifstream in(spec);
    if (!in) throw UsageError("state spec '" + spec + "' is neither a basis ket nor a readable file");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("state file '" + spec + "': " + e.what());
    }
    if (!doc.is_array() || doc.size() < 2 || doc.size() % 2 != 0)
        throw UsageError("state file must hold a flat array of [re, im] pairs, one per basis index");
    Eigen::VectorXcd amps(doc.size());
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& cell = doc[i];
        if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() || !cell[1].is_number())
            throw UsageError("state file entries must be [re, im] pairs");
        amps(static_cast<Eigen::Index>(i)) =
            std::complex<double>(cell[0].get<double>(), cell[1].get<double>());
    }
    if (amps.norm() <= 0.0) throw UsageError("state file holds a zero vector");
    return JointState(std::move(amps));
}

inline nlohmann::json base_config(const ScanConfig& cfg, const std::string& command) {
    nlohmann::json j;
    j["command"] = command;
    j["omega_q_over_omega"] = cfg.omega_q_over_omega;
    j["format"] = cfg.format;
    return j;
}

// ------------------------------- spectrum ------------------------------------

inline CommandOutput cmd_spectrum(const ScanConfig& cfg) {
    const std::vector<double> grid = cli_detail::g_grid(cfg);
    if (cfg.levels < 1) throw UsageError("levels must be >= 1");

    CommandOutput out;
    out.config = base_config(cfg, "spectrum");
    out.config["g_min"] = cfg.g_min;
    out.config["g_max"] = cfg.g_max;
    out.config["g_steps"] = cfg.g_steps;
    out.config["levels"] = cfg.levels;
    out.config["n_max"] = cfg.n_max;
    out.table.columns = {"g_over_omega", "level",        "parity",
                         "E_exact",      "E_bs",         "E_bs3",
                         "E_adiabatic",  "E_rescaled",   "status"};

    std::vector<std::vector<std::vector<std::string>>> chunks(grid.size());
    std::vector<char> failed(grid.size(), 0);
    parallel_for(grid.size(), [&](std::size_t i) {
        const double g = grid[i];
        const ModelParams p = cli_detail::params_at(cfg, g);
        try {
            const Spectrum spec = converged_spectrum(p, cfg.levels, cli_detail::spectrum_options(cfg));
            const auto bs = cli_detail::sorted_ladder(
                [&](int n, int b) { return bs_energy(p, n, b); }, cfg.levels);
            const auto bs3 = cli_detail::sorted_ladder(
                [&](int n, int b) { return bs3_energy(p, n, b); }, cfg.levels);
            const auto ad = cli_detail::sorted_adiabatic(p, cfg.levels);
            for (int k = 0; k < cfg.levels; ++k) {
                const SpectrumLevel& level = spec.levels[k];
                std::vector<std::string> row(out.table.columns.size());
                row[0] = format_number(g);
                row[1] = format_number(k);
                row[2] = format_number(level.parity);
                row[3] = format_number(level.energy);
                row[4] = format_number(bs[k]);
                row[5] = format_number(bs3[k]);
                row[6] = format_number(ad[k]);
                row[7] = g > 0.0 ? format_number(level.energy / (g * g)) : std::string{};
                row[8] = "ok";
                chunks[i].push_back(std::move(row));
            }
        } catch (const RabiError& e) {
            std::vector<std::string> row(out.table.columns.size());
            row[0] = format_number(g);
            row[8] = std::string("error: ") + e.what();
            chunks[i].push_back(std::move(row));
            failed[i] = 1;
        }
    });
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out.any_failure |= failed[i] != 0;
        for (auto& row : chunks[i]) out.table.rows.push_back(std::move(row));
    }
    return out;
}

// ------------------------------ boundaries -----------------------------------

inline CommandOutput cmd_boundaries(const ScanConfig& cfg) {
    CommandOutput out;
    out.config = base_config(cfg, "boundaries");
    out.config["delta_th"] = cfg.delta_th;
    out.config["fit_n_max"] = cfg.fit_n_max;
    out.table.columns = {"kind", "n", "g_over_omega", "energy_over_omega",
                         "a",    "b", "c",            "status"};

    // the twelve tabulated crossings at delta_th
    for (int n = 1; n <= 12; ++n) {
        auto& row = out.table.add_row();
        row[0] = "crossing";
        row[1] = format_number(n);
        try {
            const double g = pdsc_crossing(n, cfg.delta_th, cfg.omega_q_over_omega);
            row[2] = format_number(g);
            row[3] = format_number(n - g * g);
            row[7] = "ok";
        } catch (const RabiError& e) {
            row[7] = std::string("error: ") + e.what();
            out.any_failure = true;
        }
    }

    BoundaryCurves curves;
    try {
        curves = BoundaryCurves::build(cfg.delta_th, cfg.fit_n_max);
    } catch (const RabiError& e) {
        auto& row = out.table.add_row();
        row[0] = "fit";
        row[7] = std::string("error: ") + e.what();
        out.any_failure = true;
        return out;
    }
    {
        auto& row = out.table.add_row();
        row[0] = "fit";
        row[1] = format_number(static_cast<int>(curves.crossings.size()));
        row[4] = format_number(curves.pdsc_fit.a);
        row[5] = format_number(curves.pdsc_fit.b);
        row[6] = format_number(curves.pdsc_fit.c);
        row[7] = "ok";
    }

    const double g_lo = cfg.g_max > 0.0 ? cfg.g_min : 0.02;
    const double g_hi = cfg.g_max > 0.0 ? cfg.g_max : 1.0 / std::sqrt(2.0);
    const int steps = cfg.g_max > 0.0 ? cfg.g_steps : 36;
    for (int i = 0; i < steps; ++i) {
        const double g = steps == 1 ? g_lo : g_lo + (g_hi - g_lo) * i / (steps - 1.0);
        if (!(g > 0.0) || g > 1.0 / std::sqrt(2.0)) continue;
        auto& row = out.table.add_row();
        row[0] = "pusc_curve";
        row[2] = format_number(g);
        row[3] = format_number(pusc_boundary_energy(g));
        row[7] = "ok";
    }
    const double pd_hi = std::max(6.0, curves.pdsc_g_min + 1.0);
    for (int i = 0; i < 41; ++i) {
        const double g = curves.pdsc_g_min + (pd_hi - curves.pdsc_g_min) * i / 40.0;
        auto& row = out.table.add_row();
        row[0] = "pdsc_curve";
        row[2] = format_number(g);
        row[3] = format_number(curves.pdsc_boundary_energy(g));
        row[7] = "ok";
    }
    return out;
}

// ------------------------------- classify ------------------------------------

inline nlohmann::json cmd_classify(const ScanConfig& cfg) {
    if (!(cfg.g >= 0.0)) throw UsageError("classify: --g must be >= 0");
    if (!cfg.energy.has_value() && cfg.state.empty())
        throw UsageError("classify: provide --energy or --state");

    double energy = 0.0;
    if (cfg.energy.has_value()) {
        energy = *cfg.energy;
    } else {
        const JointState psi = parse_state_spec(cfg.state, cfg.n_max > 0 ? cfg.n_max : 8);
        const ModelParams p = cli_detail::params_at(cfg, cfg.g);
        energy = mean_energy(psi, p) / p.omega;
    }

    const BoundaryCurves curves = BoundaryCurves::build(cfg.delta_th, cfg.fit_n_max);
    const RegimeLabel label = classify(cfg.g, energy, curves);

    nlohmann::json j;
    j["schema"] = kSchemaVersion;
    nlohmann::json config = base_config(cfg, "classify");
    config["g"] = cfg.g;
    config["delta_th"] = cfg.delta_th;
    config["fit_n_max"] = cfg.fit_n_max;
    if (!cfg.state.empty()) config["state"] = cfg.state;
    j["config"] = config;
    j["inputs"] = {{"g_over_omega", cfg.g}, {"mean_energy_over_omega", energy}};
    j["label"] = regime_name(label.region);
    nlohmann::json margins;
    margins["pusc_coupling"] = label.margins.pusc_coupling;
    if (label.margins.pusc_energy.has_value() && std::isfinite(*label.margins.pusc_energy))
        margins["pusc_energy"] = *label.margins.pusc_energy;
    else
        margins["pusc_energy"] = nullptr;
    margins["pdsc_coupling"] = label.margins.pdsc_coupling;
    margins["pdsc_energy"] = label.margins.pdsc_energy;
    j["margins"] = margins;
    nlohmann::json bounds;
    bounds["pusc_g_max"] = curves.pusc_g_max;
    bounds["pdsc_g_min"] = curves.pdsc_g_min;
    bounds["pdsc_energy_at_g"] = curves.pdsc_boundary_energy(cfg.g);
    if (cfg.g > 0.0 && cfg.g <= curves.pusc_g_max)
        bounds["pusc_energy_at_g"] = pusc_boundary_energy(cfg.g);
    else
        bounds["pusc_energy_at_g"] = nullptr;
    bounds["boundary_rule"] = "boundaries inclusive toward the perturbative regions";
    j["boundaries"] = bounds;
    return j;
}

// ------------------------------ observables ----------------------------------

inline CommandOutput cmd_observables(const ScanConfig& cfg) {
    if (cfg.levels < 1) throw UsageError("levels must be >= 1");
    CommandOutput out;

    if (cfg.dump_distribution) {
        const double g = cfg.g > 0.0 ? cfg.g : cfg.g_min;
        if (cfg.level < 0) throw UsageError("dump mode: --level must be >= 0");
        out.config = base_config(cfg, "observables-dump");
        out.config["g"] = g;
        out.config["level"] = cfg.level;
        const ModelParams p = cli_detail::params_at(cfg, g);
        const Spectrum spec = converged_spectrum(p, std::max(cfg.levels, cfg.level + 1),
                                                 cli_detail::spectrum_options(cfg));
        const SpectrumLevel& level = spec.levels[cfg.level];
        const Eigen::VectorXd dist = photon_distribution(level.vector);

        // best cat-state label (n, ±) by fidelity
        int best_n = 0, best_branch = +1;
        double best_fid = -1.0;
        for (int n = 0; n <= cfg.level + 2; ++n) {
            for (int branch : {+1, -1}) {
                const JointState cat = adiabatic_state(p, n, branch, spec.trunc);
                const double fid = fidelity(cat, level.vector);
                if (fid > best_fid) {
                    best_fid = fid;
                    best_n = n;
                    best_branch = branch;
                }
            }
        }
        out.table.columns = {"m", "p_m", "p_m_cat"};
        for (int m = 0; m <= spec.trunc.n_max; ++m) {
            auto& row = out.table.add_row();
            row[0] = format_number(m);
            row[1] = format_number(dist(m));
            const double d = displacement_element(m, best_n, p.alpha());
            row[2] = format_number(d * d);
        }
        const auto modes = photon_modes(dist, cli_detail::kModeProminenceFloor);
        nlohmann::json summary;
        summary["matched_n"] = best_n;
        summary["matched_branch"] = best_branch;
        summary["fidelity"] = best_fid;
        summary["mode_count"] = modes.size();
        summary["prominence_floor"] = cli_detail::kModeProminenceFloor;
        if (!modes.empty())
            summary["center_bin"] =
                0.5 * (static_cast<double>(modes.front().index) +
                       static_cast<double>(modes.back().index));
        else
            summary["center_bin"] = nullptr;
        out.summary = summary;
        return out;
    }

    const std::vector<double> grid = cli_detail::g_grid(cfg);
    out.config = base_config(cfg, "observables");
    out.config["g_min"] = cfg.g_min;
    out.config["g_max"] = cfg.g_max;
    out.config["g_steps"] = cfg.g_steps;
    out.config["levels"] = cfg.levels;
    out.table.columns = {"g_over_omega", "level", "parity", "n_e", "Q", "S", "status"};

    std::vector<std::vector<std::vector<std::string>>> chunks(grid.size());
    std::vector<char> failed(grid.size(), 0);
    parallel_for(grid.size(), [&](std::size_t i) {
        const double g = grid[i];
        const ModelParams p = cli_detail::params_at(cfg, g);
        try {
            const Spectrum spec = converged_spectrum(p, cfg.levels, cli_detail::spectrum_options(cfg));
            for (int k = 0; k < cfg.levels; ++k) {
                const SpectrumLevel& level = spec.levels[k];
                std::vector<std::string> row(out.table.columns.size());
                row[0] = format_number(g);
                row[1] = format_number(k);
                row[2] = format_number(level.parity);
                row[3] = format_number(total_excitations(level.vector));
                const auto q = fano_mandel(level.vector);
                row[4] = q.has_value() ? format_number(*q) : std::string{};
                row[5] = format_number(von_neumann_entropy(reduced_qubit_density(level.vector)));
                row[6] = "ok";
                chunks[i].push_back(std::move(row));
            }
        } catch (const RabiError& e) {
            std::vector<std::string> row(out.table.columns.size());
            row[0] = format_number(g);
            row[6] = std::string("error: ") + e.what();
            chunks[i].push_back(std::move(row));
            failed[i] = 1;
        }
    });
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out.any_failure |= failed[i] != 0;
        for (auto& row : chunks[i]) out.table.rows.push_back(std::move(row));
    }
    return out;
}

// ------------------------------- dynamics ------------------------------------

inline CommandOutput cmd_dynamics(const ScanConfig& cfg) {
    if (!(cfg.g >= 0.0)) throw UsageError("dynamics: --g must be >= 0");
    const std::string spec_str = cfg.state.empty() ? std::string("g0") : cfg.state;
    const ModelParams p = cli_detail::params_at(cfg, cfg.g);

    JointState seed = parse_state_spec(spec_str, cfg.n_max > 0 ? cfg.n_max : 8);
    const double pexp = parity_expectation(seed);
    if (std::abs(std::abs(pexp) - 1.0) > 1e-10)
        throw UsageError("dynamics: initial state must have definite parity");

    // enough levels per chain to span the initial state's displaced support
    const double a = p.alpha();
    const int per_chain =
        std::max(cfg.levels, static_cast<int>(std::ceil(a * a + 8.0 * a + 24.0)) + seed.n_max());
    SpectrumOptions opts = cli_detail::spectrum_options(cfg);
    const int base = opts.initial_n_max > 0 ? opts.initial_n_max : default_n_max(p);
    opts.initial_n_max = std::max(base, seed.n_max() + 8);
    const Spectrum spectrum = converged_spectrum(p, 2 * per_chain, opts);
    const JointState initial = cli_detail::pad_state(seed, spectrum.trunc.n_max);
    const EvolutionPlan plan =
        make_evolution_plan(spectrum, initial, make_time_grid(cfg.t_max, cfg.dt));

    CommandOutput out;
    out.config = base_config(cfg, "dynamics");
    out.config["g"] = cfg.g;
    out.config["state"] = spec_str;
    out.config["t_max"] = cfg.t_max;
    out.config["dt"] = cfg.dt;
    out.config["levels"] = 2 * per_chain;
    out.table.columns = {"omega_t", "survival", "leakage"};

    const int parity = pexp > 0.0 ? +1 : -1;
    std::vector<std::vector<std::string>> rows(plan.times.size());
    parallel_for(plan.times.size(), [&](std::size_t i) {
        const double t = plan.times[i];
        const JointState psi = evolve(plan, t);
        rows[i] = {format_number(t), format_number(survival_probability(plan, t)),
                   format_number(parity_leakage(psi, parity))};
    });
    out.table.rows = std::move(rows);

    if (plan.times.back() >= 4.0 * std::numbers::pi - 1e-9 && cfg.dt <= 0.01) {
        nlohmann::json peaks = nlohmann::json::array();
        for (const RevivalPeak& pk : revival_profile(plan))
            peaks.push_back({{"omega_t", pk.time}, {"height", pk.height}});
        out.summary = nlohmann::json{{"revival_peaks", peaks},
                                     {"min_height", 0.2},
                                     {"min_prominence", 0.1}};
    } else {
        out.summary = nlohmann::json{
            {"revival_peaks", nullptr},
            {"note", "time grid does not cover [0, 4*pi] at step <= 0.01"}};
    }
    return out;
}

// -------------------------------- rendering ----------------------------------

inline std::string render(const CommandOutput& out, const std::string& format) {
    if (format == "csv") return render_csv(out.table, out.config, out.summary);
    if (format == "json") return render_json(out.table, out.config, out.summary);
    throw UsageError("format must be csv or json");
}

inline void write_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw RabiError("cannot open output file: " + out_path);
    f << text;
}

} // namespace rabi::cli
