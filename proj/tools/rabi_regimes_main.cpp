// rabi-regimes — command-line front end for quantum Rabi regime analysis

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "rabi/cli.hpp"

namespace {

void add_common(CLI::App* cmd, rabi::cli::ScanConfig& cfg) {
    cmd->add_option("--omega-q", cfg.omega_q_over_omega, "Qubit frequency in units of omega");
    cmd->add_option("--nmax", cfg.n_max, "Initial photon-number cutoff (0 = automatic)");
    cmd->add_option("--format", cfg.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", cfg.out, "Output path (default: stdout)");
}

void add_grid(CLI::App* cmd, rabi::cli::ScanConfig& cfg) {
    cmd->add_option("--g-min", cfg.g_min, "Lowest coupling g0/omega");
    cmd->add_option("--g-max", cfg.g_max, "Highest coupling g0/omega");
    cmd->add_option("--g-steps", cfg.g_steps, "Number of grid points");
    cmd->add_option("--levels", cfg.levels, "Number of levels per grid point");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectra, regime boundaries, observables, and dynamics of the quantum Rabi model"};
    app.require_subcommand(1);

    rabi::cli::ScanConfig cfg;

    CLI::App* spectrum = app.add_subcommand(
        "spectrum", "Exact and perturbative energy levels over a coupling grid");
    add_grid(spectrum, cfg);
    add_common(spectrum, cfg);

    CLI::App* boundaries = app.add_subcommand(
        "boundaries", "Quasi-degeneracy crossings, boundary curves, and the quadratic fit");
    boundaries->add_option("--delta-th", cfg.delta_th, "Degeneracy threshold (default 0.1)");
    boundaries->add_option("--fit-n-max", cfg.fit_n_max, "Highest crossing index used in the fit");
    add_grid(boundaries, cfg);
    add_common(boundaries, cfg);

    CLI::App* classify = app.add_subcommand(
        "classify", "Label a (g0/omega, mean energy) point; emits JSON");
    classify->add_option("--g", cfg.g, "Coupling g0/omega")->required();
    classify->add_option("--state", cfg.state, "Basis ket (g0, e3, ...) or amplitude file");
    classify->add_option("--energy", cfg.energy, "Mean energy in units of omega");
    classify->add_option("--delta-th", cfg.delta_th, "Degeneracy threshold (default 0.1)");
    classify->add_option("--fit-n-max", cfg.fit_n_max, "Highest crossing index used in the fit");
    add_common(classify, cfg);

    CLI::App* observables = app.add_subcommand(
        "observables", "Excitations, photon statistics, and entropy per eigenstate");
    add_grid(observables, cfg);
    observables->add_flag("--dump-distribution", cfg.dump_distribution,
                          "Emit the photon distribution of one (g, level)");
    observables->add_option("--g", cfg.g, "Coupling for dump mode");
    observables->add_option("--level", cfg.level, "Level index for dump mode");
    add_common(observables, cfg);

    CLI::App* dynamics = app.add_subcommand(
        "dynamics", "Survival probability and parity leakage of an initial state");
    dynamics->add_option("--g", cfg.g, "Coupling g0/omega")->required();
    dynamics->add_option("--state", cfg.state, "Initial state (default g0)");
    dynamics->add_option("--t-max", cfg.t_max, "Trace length in units of 1/omega");
    dynamics->add_option("--dt", cfg.dt, "Time step in units of 1/omega");
    dynamics->add_option("--levels", cfg.levels, "Minimum levels per parity chain");
    add_common(dynamics, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(classify)) {
            rabi::cli::write_text(rabi::cli::cmd_classify(cfg).dump(2) + "\n", cfg.out);
            return 0;
        }
        rabi::cli::CommandOutput out;
        if (app.got_subcommand(spectrum)) out = rabi::cli::cmd_spectrum(cfg);
        else if (app.got_subcommand(boundaries)) out = rabi::cli::cmd_boundaries(cfg);
        else if (app.got_subcommand(observables)) out = rabi::cli::cmd_observables(cfg);
        else out = rabi::cli::cmd_dynamics(cfg);
        rabi::cli::write_text(rabi::cli::render(out, cfg.format), cfg.out);
        return out.any_failure ? 1 : 0;
    } catch (const rabi::cli::UsageError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const rabi::RabiError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
