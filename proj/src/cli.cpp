#include "semzk/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "semzk/config.hpp"
#include "semzk/scenarios.hpp"
#include "semzk/snapshot.hpp"
#include "semzk/spectral.hpp"

#ifndef SEMZK_VERSION
#define SEMZK_VERSION "unknown"
#endif
#ifndef SEMZK_BUILD_TYPE
#define SEMZK_BUILD_TYPE "unknown"
#endif

namespace semzk {

namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Defaults of each subcommand, applied before the config file and flags.
RunConfig defaults_for(const std::string& command) {
    RunConfig c;
    if (command == "soliton-bench") {
        c.output = "soliton-bench";
    } else if (command == "instability") {
        c.equation = "sem_on_soliton";
        c.initial = "zero";
        c.nx = 128;
        c.ny = 16;
        c.lx = 80.0;
        c.perturbation.shape = PerturbationShape::sinusoidal_y;
        c.perturbation.amplitude = 1e-4;
        c.perturbation.ky = 0.2;
        c.ly = kTwoPi / c.perturbation.ky;
        c.T = 800.0;
        c.dt = 0.05;
        c.diagnostics_stride = 200;
        c.output = "instability";
    } else if (command == "picard") {
        c.equation = "sem";
        c.initial = "random";
        c.nx = c.ny = 32;
        c.lx = c.ly = kTwoPi;
        c.T = 0.1;
        c.amplitude = 0.01;
        c.band = 3;
        c.output = "picard";
    } else if (command == "probe-linear") {
        c.nx = c.ny = 32;
        c.lx = c.ly = kTwoPi;
        c.T = 1.0;
        c.trials = 20;
        c.band = 3;
        c.output = "probe-linear";
    } else if (command == "probe-bilinear") {
        c.nx = c.ny = 32;
        c.lx = c.ly = kTwoPi;
        c.T = kTwoPi;
        c.nt = 8192;
        c.trials = 10;
        c.refine = false;
        c.output = "probe-bilinear";
    } else if (command == "probe-nonlinear") {
        c.nx = c.ny = 16;
        c.lx = c.ly = kTwoPi;
        c.T = kTwoPi;
        c.nt = 256;
        c.trials = 30;
        c.band = 3;
        c.probe_kind = "nonlinear";
        c.output = "probe-nonlinear";
    }
    return c;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
    if (!out) throw Error("cannot write " + path.string());
}

fs::path prepare_output(const RunConfig& cfg, bool snapshots) {
    const fs::path dir(cfg.output);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (snapshots) fs::create_directories(dir / "snapshots", ec);
    if (ec || !fs::is_directory(dir)) throw Error("cannot create output directory " + dir.string());
    write_file(dir / "config.toml", cfg.to_text());
    return dir;
}

std::string simulation_summary(const SimulationResult& r, const RunConfig& cfg) {
    ojson j;
    j["scenario"] = "simulate";
    j["t_begin"] = r.t_begin;
    j["t_end"] = r.t_end;
    j["steps"] = r.steps;
    j["dt_used"] = r.dt_used;
    j["I1_drift"] = r.max_drift_I1();
    j["I2_drift"] = r.max_drift_I2();
    const DiagnosticsRecord& last = r.diagnostics.back();
    j["final"] = {{"I1", last.I1}, {"I2", last.I2}};
    for (const auto& [k, v] : last.hs) j["final"][k] = v;
    j["config"] = ojson::parse(cfg.to_json());
    return j.dump(2) + "\n";
}

int run_command(const std::string& command, const RunConfig& cfg, std::ostream& out) {
    if (command == "simulate") {
        cfg.validate();
        const fs::path dir = prepare_output(cfg, true);
        const SimulationResult r = simulate(cfg, dir / "snapshots");
        write_file(dir / "diagnostics.csv", r.diagnostics_csv());
        write_file(dir / "summary.json", simulation_summary(r, cfg));
        out << "simulate: " << r.steps << " steps to t = " << r.t_end << ", I2 drift " << r.max_drift_I2() << "\n";
    } else if (command == "soliton-bench") {
        cfg.validate();
        const fs::path dir = prepare_output(cfg, true);
        const SolitonBenchReport r = run_soliton_benchmark(cfg, dir / "snapshots");
        write_file(dir / "diagnostics.csv", r.run.diagnostics_csv());
        write_file(dir / "summary.json", r.summary_json(cfg));
        out << "soliton-bench: shape error " << r.shape_error << ", crest error " << r.crest_error << " ("
            << r.crest_error / r.cell << " cells), I2 drift " << r.run.max_drift_I2() << "\n";
    } else if (command == "instability") {
        cfg.validate();
        const fs::path dir = prepare_output(cfg, true);
        const InstabilityReport r = run_instability(cfg, dir / "snapshots");
        write_file(dir / "diagnostics.csv", r.run.diagnostics_csv());
        write_file(dir / "growth.csv", r.series_csv());
        write_file(dir / "summary.json", r.summary_json(cfg));
        out << "instability: ky = " << r.ky << ", sigma = ";
        if (r.sigma) {
            out << *r.sigma << " +- " << r.sigma_std_error;
        } else {
            out << "n/a";
        }
        out << (r.left_linear_regime ? " (left linear regime)" : "") << "\n";
    } else if (command == "picard") {
        cfg.validate();
        const fs::path dir = prepare_output(cfg, true);
        const PicardDemoReport r = run_picard_demo(cfg);
        write_file(dir / "iterations.csv", r.iterations_csv());
        write_file(dir / "sweep.csv", r.sweep_csv());
        SimulationResult path_diag{r.path.fields.back(), r.path.t_begin(), r.path.t_end(), 0, 0.0, {}};
        for (std::size_t m = 0; m < r.path.size(); ++m) {
            path_diag.diagnostics.push_back(make_diagnostics(r.path.times[m], r.path.fields[m], cfg.sobolev));
        }
        write_file(dir / "diagnostics.csv", path_diag.diagnostics_csv());
        write_snapshot(dir / "snapshots" / "final.bin", r.path.fields.back(), r.path.t_end(), cfg.make_equation().tag);
        write_file(dir / "summary.json", r.summary_json(cfg));
        out << "picard: " << r.report.iterates << " iterates, converged = " << (r.report.converged ? "true" : "false")
            << ", existence window T = " << r.existence_window << "\n";
    } else {
        ProbeRun run = [&] {
            if (command == "probe-linear") return run_probe_linear(cfg);
            if (command == "probe-bilinear") return run_probe_bilinear(cfg);
            return run_probe_nonlinear(cfg);
        }();
        const fs::path dir = prepare_output(cfg, false);
        write_file(dir / "trials.csv", run.base.csv());
        if (run.refined) write_file(dir / "trials_refined.csv", run.refined->csv());
        write_file(dir / "summary.json", run.summary_json(cfg));
        out << command << " (" << run.base.estimate << "): " << run.base.trials.size() << " trials, max ratio "
            << run.base.max_ratio();
        if (run.refined) out << ", refined " << run.refined->max_ratio();
        out << "\n";
        for (const ScalingFit& f : run.base.fits) {
            out << "  fit " << f.regime << " " << f.variable << ": exponent " << f.exponent << " +- " << f.std_error
                << "\n";
        }
    }
    return 0;
}

void print_info(std::ostream& out) {
    out << "semzk " << SEMZK_VERSION << "\n"
        << "build type: " << SEMZK_BUILD_TYPE << "\n"
        << "compiler: " << __VERSION__ << "\n"
        << "fft backend: FFTW3 (double precision)\n"
        << "grid limits: nx, ny even, 8 <= n <= 8192\n"
        << "dealiasing: two-thirds rule (fraction " << kDefaultDealiasFraction << ")\n"
        << "snapshot format: SEMZK1 version " << kSnapshotVersion << ", little-endian\n"
        << "equations: zk, sem, sem_on_soliton, linear\n";
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app("Pseudo-spectral solver and estimate probes for ZK-type equations", "semzk");
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(SEMZK_VERSION));

    const std::vector<std::string> commands = {"simulate",     "soliton-bench",  "instability",    "picard",
                                               "probe-linear", "probe-bilinear", "probe-nonlinear"};
    std::string config_path;
    std::vector<std::string> sets;
    std::map<std::string, std::map<std::string, std::string>> flags;
    for (const std::string& name : commands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config,-c", config_path, "key = value config file");
        sub->add_option("--set", sets, "override as key=value (repeatable)");
        for (const ConfigKey& key : config_keys()) sub->add_option("--" + key.name, flags[name][key.name], key.help);
    }
    app.add_subcommand("info", "print version, build configuration and grid limits");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(argv_rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << SEMZK_VERSION << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 2;
    }

    CLI::App* chosen = app.get_subcommands().front();
    const std::string command = chosen->get_name();
    if (command == "info") {
        print_info(out);
        return 0;
    }

    RunConfig cfg;
    try {
        cfg = defaults_for(command);
        if (!config_path.empty()) cfg = load_config(config_path, cfg);
        for (const std::string& s : sets) {
            const auto eq = s.find('=');
            if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + s + "'");
            apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
        }
        for (const ConfigKey& key : config_keys()) {
            if (chosen->count("--" + key.name) > 0) apply_setting(cfg, key.name, flags[command][key.name]);
        }
        cfg.validate();
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        return run_command(command, cfg, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int cli_main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return cli_main(args, std::cout, std::cerr);
}

}  // namespace semzk
