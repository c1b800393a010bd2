#include "semzk/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include <json.hpp>

#include "semzk/error.hpp"
#include "semzk/snapshot.hpp"

namespace semzk {

namespace {

using ojson = nlohmann::ordered_json;

ojson config_object(const RunConfig& cfg) { return ojson::parse(cfg.to_json()); }

ojson optional_number(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

double drift(double value, double reference) { return std::abs(value - reference) / std::max(1.0, std::abs(reference)); }

std::string step_name(int step) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "step_%08d.bin", step);
    return buf;
}

RealField base_field(const RunConfig& cfg, const Grid2D& grid) {
    if (cfg.initial == "zero") return RealField(grid);
    if (cfg.initial == "soliton") return soliton_profile(*cfg.soliton(), cfg.t0, grid);
    if (cfg.initial == "random") {
        const SpectralField s = random_band_limited(grid, cfg.band, cfg.seed);
        RealField u = inverse_transform(s);
        const double h1 = sobolev_norm(s, 1.0);
        if (h1 > 0.0) u *= cfg.amplitude / h1;
        return u;
    }
    throw ConfigError("initial = " + cfg.initial + " has no generated field");
}

// Restart data and the start time it carries.
std::pair<RealField, double> restart_field(const RunConfig& cfg) {
    Snapshot snap = [&] {
        try {
            return read_snapshot(cfg.restart);
        } catch (const Error& e) {
            throw ConfigError(e.what());
        }
    }();
    if (!(snap.field.grid() == cfg.grid())) {
        throw ConfigError("snapshot grid does not match nx, ny, lx, ly of the config: " + cfg.restart);
    }
    if (snap.equation != cfg.make_equation().tag) {
        throw ConfigError("snapshot equation tag does not match equation = " + cfg.equation);
    }
    return {std::move(snap.field), snap.time};
}

double start_time(const RunConfig& cfg) {
    return cfg.initial == "snapshot" ? restart_field(cfg).second : cfg.t0;
}

}  // namespace

RealField perturbation_field(const RunConfig& cfg, const Grid2D& grid) {
    const PerturbationSpec& p = cfg.perturbation;
    RealField v(grid);
    if (p.shape == PerturbationShape::none || p.amplitude == 0.0) return v;
    const SolitonParams sol = *cfg.soliton();
    const double t = start_time(cfg);
    for (int i = 0; i < grid.nx(); ++i) {
        const double s = soliton_coordinate(sol, t, grid.x(i), grid.lx());
        for (int j = 0; j < grid.ny(); ++j) {
            const double y = grid.y(j);
            if (p.shape == PerturbationShape::sinusoidal_y) {
                const double c = 1.0 / std::cosh(sol.width_rate() * s);
                v(i, j) = p.amplitude * c * c * std::cos(p.ky * y);
            } else {
                const double dy = y - 0.5 * grid.ly();
                v(i, j) = p.amplitude * std::exp(-(s * s + dy * dy) / (p.width * p.width));
            }
        }
    }
    return v;
}

RealField initial_field(const RunConfig& cfg) {
    cfg.validate();
    const Grid2D grid = cfg.grid();
    // A restart resumes the stored state as is.
    if (cfg.initial == "snapshot") return restart_field(cfg).first;
    RealField u = base_field(cfg, grid);
    u += perturbation_field(cfg, grid);
    if (cfg.mean_zero) {
        const double mean = conserved_I1(u) / grid.area();
        for (double& x : u.values()) x -= mean;
    }
    return u;
}

std::string SimulationResult::diagnostics_csv() const {
    if (diagnostics.empty()) return {};
    std::string out;
    const auto header = diagnostics.front().csv_header();
    for (std::size_t k = 0; k < header.size(); ++k) out += (k ? "," : "") + header[k];
    out += "\n";
    for (const DiagnosticsRecord& r : diagnostics) out += r.csv_row() + "\n";
    return out;
}

double SimulationResult::max_drift_I1() const {
    double m = 0.0;
    for (const DiagnosticsRecord& r : diagnostics) m = std::max(m, drift(r.I1, diagnostics.front().I1));
    return m;
}

double SimulationResult::max_drift_I2() const {
    double m = 0.0;
    for (const DiagnosticsRecord& r : diagnostics) m = std::max(m, drift(r.I2, diagnostics.front().I2));
    return m;
}

SimulationResult simulate(const RunConfig& cfg, const std::optional<std::filesystem::path>& snapshot_dir) {
    const RealField u0 = initial_field(cfg);
    const Equation eq = cfg.make_equation();
    const double t0 = start_time(cfg);

    EvolveOptions opts;
    opts.t0 = t0;
    opts.sample_stride = cfg.diagnostics_stride;
    if (snapshot_dir && cfg.snapshot_stride > 0) {
        opts.callbacks.push_back({cfg.snapshot_stride, [&](int step, double t, const RealField& u) {
                                      write_snapshot(*snapshot_dir / step_name(step), u, t, eq.tag);
                                  }});
    }
    const TrajectoryPath path = evolve(u0, eq, cfg.T, cfg.dt, opts);

    SimulationResult r{path.fields.back(), t0, path.t_end(), 0, 0.0, {}};
    r.steps = cfg.T == 0.0 ? 0 : static_cast<int>(std::ceil(std::abs(cfg.T) / cfg.dt - 1e-9));
    r.dt_used = r.steps == 0 ? 0.0 : cfg.T / r.steps;
    for (std::size_t m = 0; m < path.size(); ++m) {
        r.diagnostics.push_back(make_diagnostics(path.times[m], path.fields[m], cfg.sobolev));
    }
    if (snapshot_dir) write_snapshot(*snapshot_dir / "final.bin", r.final_state, r.t_end, eq.tag);
    return r;
}

// ---------------------------------------------------------------------------

double crest_position(const RealField& u) {
    const Grid2D& g = u.grid();
    std::vector<double> profile(static_cast<std::size_t>(g.nx()), 0.0);
    for (int i = 0; i < g.nx(); ++i) {
        for (int j = 0; j < g.ny(); ++j) profile[i] += u(i, j) / g.ny();
    }
    const auto top = std::max_element(profile.begin(), profile.end()) - profile.begin();
    const int n = g.nx();
    const double a = profile[(top + n - 1) % n], b = profile[top], c = profile[(top + 1) % n];
    const double denom = a - 2.0 * b + c;
    const double shift = denom < 0.0 ? 0.5 * (a - c) / denom : 0.0;
    const double x = (static_cast<double>(top) + shift) * g.dx();
    return std::fmod(x + g.lx(), g.lx());
}

std::string SolitonBenchReport::summary_json(const RunConfig& cfg) const {
    ojson j;
    j["scenario"] = "soliton-bench";
    j["omega"] = cfg.omega;
    j["T"] = cfg.T;
    j["steps"] = run.steps;
    j["dt_used"] = run.dt_used;
    j["shape_error"] = shape_error;
    j["crest_position"] = crest_position;
    j["expected_crest"] = expected_crest;
    j["crest_error"] = crest_error;
    j["crest_error_cells"] = crest_error / cell;
    j["I1_drift"] = run.max_drift_I1();
    j["I2_drift"] = run.max_drift_I2();
    j["I1_per_length_t0"] = mass_per_length;
    j["I2_per_length_t0"] = energy_per_length;
    j["config"] = config_object(cfg);
    return j.dump(2) + "\n";
}

SolitonBenchReport run_soliton_benchmark(const RunConfig& cfg, const std::optional<std::filesystem::path>& snapshot_dir) {
    cfg.validate();
    const Equation::Tag tag = cfg.make_equation().tag;
    if (tag != Equation::Tag::zk && tag != Equation::Tag::sem) {
        throw ConfigError("soliton-bench runs equation = zk or sem");
    }
    if (cfg.initial != "soliton") throw ConfigError("soliton-bench needs initial = soliton");
    const Grid2D grid = cfg.grid();
    const SolitonParams p = *cfg.soliton();
    check_soliton_domain(p, grid);

    SolitonBenchReport rep{simulate(cfg, snapshot_dir)};
    const RealField exact = soliton_profile(p, rep.run.t_end, grid);
    rep.shape_error = l2_norm(rep.run.final_state - exact) / l2_norm(exact);
    rep.cell = grid.dx();
    rep.crest_position = crest_position(rep.run.final_state);
    rep.expected_crest = std::fmod(std::fmod(p.x0 + p.omega * rep.run.t_end, grid.lx()) + grid.lx(), grid.lx());
    const double d = std::abs(rep.crest_position - rep.expected_crest);
    rep.crest_error = std::min(d, grid.lx() - d);
    rep.mass_per_length = rep.run.diagnostics.front().I1 / grid.ly();
    rep.energy_per_length = rep.run.diagnostics.front().I2 / grid.ly();
    return rep;
}

// ---------------------------------------------------------------------------

GrowthFit fit_growth(const std::vector<std::pair<double, double>>& series, double low, double high) {
    GrowthFit fit;
    std::vector<std::vector<double>> x;
    std::vector<double> y;
    // The growth run ends where the norm first leaves through the top of the
    // window and starts after its last visit below the bottom.
    std::size_t end = 0;
    while (end < series.size() && !(series[end].second > high)) ++end;
    std::size_t begin = end;
    while (begin > 0 && series[begin - 1].second >= low && series[begin - 1].second > 0.0) --begin;
    for (std::size_t k = begin; k < end; ++k) {
        x.push_back({series[k].first});
        y.push_back(std::log(series[k].second));
    }
    fit.samples = y.size();
    if (y.size() < 3) return fit;
    fit.t_begin = x.front()[0];
    fit.t_end = x.back()[0];
    const auto coef = least_squares_fit(x, y);
    fit.sigma = coef[0].first;
    fit.std_error = coef[0].second;
    return fit;
}

std::string InstabilityReport::series_csv() const {
    std::string out = "time,norm\n";
    for (const auto& [t, v] : series) out += format_double(t) + "," + format_double(v) + "\n";
    return out;
}

std::string InstabilityReport::summary_json(const RunConfig& cfg) const {
    ojson j;
    j["scenario"] = "instability";
    j["ky"] = ky;
    j["epsilon"] = cfg.perturbation.amplitude;
    j["sigma"] = optional_number(sigma);
    j["sigma_std_error"] = sigma_std_error;
    j["fit_window_norms"] = {window_low, window_high};
    j["fit_window_times"] = {fit_t_begin, fit_t_end};
    j["fit_samples"] = fit_samples;
    j["initial_norm"] = series.empty() ? 0.0 : series.front().second;
    j["final_norm"] = series.empty() ? 0.0 : series.back().second;
    j["left_linear_regime"] = left_linear_regime;
    j["steps"] = run.steps;
    j["notes"] = notes;
    j["config"] = config_object(cfg);
    return j.dump(2) + "\n";
}

InstabilityReport run_instability(const RunConfig& cfg, const std::optional<std::filesystem::path>& snapshot_dir) {
    cfg.validate();
    if (cfg.make_equation().tag != Equation::Tag::sem_on_soliton) {
        throw ConfigError("instability runs equation = sem_on_soliton");
    }
    if (cfg.perturbation.shape == PerturbationShape::none) {
        throw ConfigError("instability needs perturbation.shape = sinusoidal-y or gaussian");
    }
    const Grid2D grid = cfg.grid();
    const SolitonParams p = *cfg.soliton();
    check_soliton_domain(p, grid);
    const double phi_norm = l2_norm(soliton_profile(p, 0.0, grid));

    // Norm series at every step via a hook; diagnostics follow the configured stride.
    std::vector<std::pair<double, double>> series;
    const RealField v0 = initial_field(cfg);
    const Equation eq = cfg.make_equation();
    const double t0 = start_time(cfg);
    EvolveOptions opts;
    opts.t0 = t0;
    opts.sample_stride = cfg.diagnostics_stride;
    opts.callbacks.push_back({1, [&](int, double t, const RealField& v) { series.emplace_back(t, l2_norm(v)); }});
    if (snapshot_dir && cfg.snapshot_stride > 0) {
        opts.callbacks.push_back({cfg.snapshot_stride, [&](int step, double t, const RealField& u) {
                                      write_snapshot(*snapshot_dir / step_name(step), u, t, eq.tag);
                                  }});
    }
    const TrajectoryPath path = evolve(v0, eq, cfg.T, cfg.dt, opts);
    InstabilityReport rep{SimulationResult{path.fields.back(), t0, path.t_end(), 0, 0.0, {}}};
    rep.ky = cfg.perturbation.ky;
    rep.series = std::move(series);
    rep.run.steps = static_cast<int>(rep.series.size()) - 1;
    rep.run.dt_used = rep.run.steps == 0 ? 0.0 : cfg.T / rep.run.steps;
    for (std::size_t m = 0; m < path.size(); ++m) {
        rep.run.diagnostics.push_back(make_diagnostics(path.times[m], path.fields[m], cfg.sobolev));
    }
    if (snapshot_dir) write_snapshot(*snapshot_dir / "final.bin", rep.run.final_state, rep.run.t_end, eq.tag);

    const double n0 = rep.series.front().second;
    rep.window_low = cfg.fit_lower * n0;
    rep.window_high = cfg.fit_upper * phi_norm;
    for (const auto& [t, n] : rep.series) {
        if (n > 0.5 * phi_norm) rep.left_linear_regime = true;
    }
    if (rep.left_linear_regime) rep.notes.push_back("left linear regime: ||v|| exceeded 0.5 ||phi||");
    if (n0 == 0.0) {
        rep.notes.push_back("zero perturbation: no growth window");
        return rep;
    }
    if (rep.window_low >= rep.window_high) {
        rep.notes.push_back("empty fit window: fit.lower * ||v(0)|| >= fit.upper * ||phi||");
        return rep;
    }
    const GrowthFit fit = fit_growth(rep.series, rep.window_low, rep.window_high);
    rep.sigma = fit.sigma;
    rep.sigma_std_error = fit.std_error;
    rep.fit_t_begin = fit.t_begin;
    rep.fit_t_end = fit.t_end;
    rep.fit_samples = fit.samples;
    if (!fit.sigma) rep.notes.push_back("fewer than 3 samples inside the fit window; extend T");
    return rep;
}

// ---------------------------------------------------------------------------

std::string PicardDemoReport::iterations_csv() const {
    std::string out = "iterate,distance,ratio\n";
    for (std::size_t k = 0; k < report.distances.size(); ++k) {
        out += std::to_string(k + 1) + "," + format_double(report.distances[k]) + ",";
        out += (k >= 1 ? format_double(report.ratios[k - 1]) : std::string()) + "\n";
    }
    return out;
}

std::string PicardDemoReport::sweep_csv() const {
    std::string out = "T,iterates,max_ratio,final_distance,converged,diverged\n";
    for (const PicardSweepEntry& e : sweep) {
        out += format_double(e.T) + "," + std::to_string(e.iterates) + "," + format_double(e.max_ratio) + "," +
               format_double(e.final_distance) + "," + (e.converged ? "1" : "0") + "," + (e.diverged ? "1" : "0") + "\n";
    }
    return out;
}

std::string PicardDemoReport::summary_json(const RunConfig& cfg) const {
    ojson j;
    j["scenario"] = "picard";
    j["iterates"] = report.iterates;
    j["converged"] = report.converged;
    j["distances"] = report.distances;
    j["ratios"] = report.ratios;
    j["max_ratio"] = sweep.empty() ? 0.0 : sweep.front().max_ratio;
    j["existence_window"] = existence_window;
    ojson s = ojson::array();
    for (const PicardSweepEntry& e : sweep) {
        s.push_back({{"T", e.T}, {"iterates", e.iterates}, {"max_ratio", e.max_ratio},
                     {"final_distance", e.final_distance}, {"converged", e.converged}, {"diverged", e.diverged}});
    }
    j["sweep"] = s;
    j["config"] = config_object(cfg);
    return j.dump(2) + "\n";
}

PicardDemoReport run_picard_demo(const RunConfig& cfg) {
    const RealField u0 = initial_field(cfg);
    const Equation eq = cfg.make_equation();
    PicardOptions opts;
    opts.tol = cfg.picard_tol;
    opts.max_iter = cfg.picard_max_iter;

    auto entry = [](double T, const PicardReport& r) {
        PicardSweepEntry e;
        e.T = T;
        e.iterates = r.iterates;
        e.converged = r.converged;
        e.final_distance = r.distances.empty() ? 0.0 : r.distances.back();
        for (double q : r.ratios) e.max_ratio = std::max(e.max_ratio, q);
        return e;
    };
    auto [path, report] = picard_solve(u0, eq, cfg.T, cfg.picard_nodes, opts);
    PicardDemoReport demo{report, std::move(path), {entry(cfg.T, report)}, 0.0};
    auto contracts = [](const PicardSweepEntry& e) { return e.converged && e.max_ratio < 1.0; };
    if (contracts(demo.sweep.front())) demo.existence_window = cfg.T;

    double T = cfg.T;
    for (int k = 0; k < cfg.picard_sweep; ++k) {
        T *= 2.0;
        // Keep the node spacing of the base run.
        const int nodes = (cfg.picard_nodes - 1) * (1 << (k + 1)) + 1;
        PicardSweepEntry e;
        try {
            e = entry(T, picard_solve(u0, eq, T, nodes, opts).second);
        } catch (const Error&) {
            e.T = T;
            e.diverged = true;
        }
        demo.sweep.push_back(e);
        if (!contracts(e)) break;
        demo.existence_window = T;
    }
    return demo;
}

// ---------------------------------------------------------------------------

namespace {

std::optional<double> change(const ProbeReport& a, const ProbeReport& b) {
    if (a.max_ratio() <= 0.0) return std::nullopt;
    return std::abs(b.max_ratio() / a.max_ratio() - 1.0);
}

ojson report_object(const ProbeReport& r) {
    ojson j = ojson::parse(r.summary_json());
    j.erase("config");
    return j;
}

}  // namespace

std::string ProbeRun::summary_json(const RunConfig& cfg) const {
    ojson j;
    j["scenario"] = "probe-" + base.estimate;
    j["base"] = report_object(base);
    j["refined"] = refined ? report_object(*refined) : ojson(nullptr);
    j["refinement_change"] = optional_number(refinement_change);
    j["config"] = config_object(cfg);
    return j.dump(2) + "\n";
}

ProbeRun run_probe_linear(const RunConfig& cfg) {
    cfg.validate();
    LinearEstimate kind{};
    try {
        kind = parse_linear_estimate(cfg.probe_kind);
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    if (!(cfg.T > 0.0)) throw ConfigError("probe-linear needs T > 0");
    LinearProbeOptions opts;
    opts.band_limit = cfg.band;
    opts.time_nodes = cfg.time_nodes;
    ProbeRun run{probe_linear_estimates(kind, cfg.trials, cfg.grid(), cfg.T, cfg.seed, opts), std::nullopt, std::nullopt};
    if (cfg.refine) {
        const Grid2D fine(2 * cfg.nx, 2 * cfg.ny, cfg.lx, cfg.ly);
        run.refined = probe_linear_estimates(kind, cfg.trials, fine, cfg.T, cfg.seed, opts);
        run.refinement_change = change(run.base, *run.refined);
    }
    return run;
}

ProbeRun run_probe_bilinear(const RunConfig& cfg) {
    cfg.validate();
    if (!(cfg.T > 0.0)) throw ConfigError("probe-bilinear needs T > 0 (the time box)");
    std::vector<int> dyadics;
    for (double d : cfg.dyadics) dyadics.push_back(static_cast<int>(d));
    const SpaceTimeLattice lattice(cfg.grid(), cfg.T, cfg.nt);
    ProbeRun run{probe_bilinear_scan(lattice, dyadics, cfg.trials, cfg.seed), std::nullopt, std::nullopt};
    if (cfg.refine) {
        const SpaceTimeLattice fine(Grid2D(2 * cfg.nx, 2 * cfg.ny, cfg.lx, cfg.ly), cfg.T, 2 * cfg.nt);
        run.refined = probe_bilinear_scan(fine, dyadics, cfg.trials, cfg.seed);
        run.refinement_change = change(run.base, *run.refined);
    }
    return run;
}

ProbeRun run_probe_nonlinear(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.probe_kind != "nonlinear" && cfg.probe_kind != "l4") {
        throw ConfigError("probe-nonlinear needs probe.kind = nonlinear or l4");
    }
    if (!(cfg.T > 0.0)) throw ConfigError("probe-nonlinear needs T > 0 (the time box)");
    if (cfg.probe_kind == "nonlinear" && !(cfg.probe_s > 0.5)) throw ConfigError("probe.s must exceed 1/2");
    NonlinearProbeOptions opts;
    opts.delta = cfg.delta;
    opts.band_limit = cfg.band;
    auto probe = [&](const SpaceTimeLattice& lat) {
        return cfg.probe_kind == "l4" ? probe_l4_estimate(cfg.trials, lat, cfg.seed, opts)
                                      : probe_nonlinear_estimate(cfg.trials, cfg.probe_s, lat, cfg.seed, opts);
    };
    ProbeRun run{probe(SpaceTimeLattice(cfg.grid(), cfg.T, cfg.nt)), std::nullopt, std::nullopt};
    if (cfg.refine) {
        run.refined = probe(SpaceTimeLattice(Grid2D(2 * cfg.nx, 2 * cfg.ny, cfg.lx, cfg.ly), cfg.T, 2 * cfg.nt));
        run.refinement_change = change(run.base, *run.refined);
    }
    return run;
}

}  // namespace semzk
