#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "semzk/config.hpp"
#include "semzk/integrators.hpp"
#include "semzk/norms.hpp"
#include "semzk/probes.hpp"

namespace semzk {

/// Initial data of a run: the base field chosen by cfg.initial plus the
/// perturbation, with the mean removed when cfg.mean_zero is set. Snapshot
/// data is returned unchanged.
RealField initial_field(const RunConfig& cfg);
/// The perturbation alone (zero when the shape is none).
RealField perturbation_field(const RunConfig& cfg, const Grid2D& grid);

struct SimulationResult {
    RealField final_state;
    double t_begin = 0.0;
    double t_end = 0.0;
    int steps = 0;
    double dt_used = 0.0;
    std::vector<DiagnosticsRecord> diagnostics;

    std::string diagnostics_csv() const;
    double max_drift_I1() const;  ///< max |I1(t) - I1(t0)| / max(1, |I1(t0)|) over the records
    double max_drift_I2() const;
};

/// Evolves cfg's initial data over [t0, t0 + T]. With a snapshot directory,
/// writes step_NNNNNNNN.bin every snapshot_stride steps and final.bin.
SimulationResult simulate(const RunConfig& cfg, const std::optional<std::filesystem::path>& snapshot_dir = {});

struct SolitonBenchReport {
    explicit SolitonBenchReport(SimulationResult r) : run(std::move(r)) {}

    SimulationResult run;
    double shape_error = 0.0;     ///< ||u(T) - phi(. - omega T)|| / ||phi||
    double crest_position = 0.0;
    double expected_crest = 0.0;
    double crest_error = 0.0;     ///< periodic distance, in length units
    double cell = 0.0;            ///< dx
    double mass_per_length = 0.0;    ///< I1(0) / ly
    double energy_per_length = 0.0;  ///< I2(0) / ly

    std::string summary_json(const RunConfig& cfg) const;
};

/// Soliton data under zk or sem, compared with the exact traveling wave at T.
SolitonBenchReport run_soliton_benchmark(const RunConfig& cfg,
                                         const std::optional<std::filesystem::path>& snapshot_dir = {});

/// Crest of the y-averaged profile, refined by a parabola through the
/// largest sample and its neighbours.
double crest_position(const RealField& u);

struct InstabilityReport {
    explicit InstabilityReport(SimulationResult r) : run(std::move(r)) {}

    SimulationResult run;
    double ky = 0.0;
    std::vector<std::pair<double, double>> series;  ///< (t, ||v(t)||)
    double window_low = 0.0;   ///< norm bounds of the fit window
    double window_high = 0.0;
    double fit_t_begin = 0.0;
    double fit_t_end = 0.0;
    std::size_t fit_samples = 0;
    std::optional<double> sigma;  ///< fitted growth rate; empty when the window holds < 3 samples
    double sigma_std_error = 0.0;
    bool left_linear_regime = false;  ///< ||v|| exceeded 0.5 ||phi||
    std::vector<std::string> notes;

    std::string series_csv() const;
    std::string summary_json(const RunConfig& cfg) const;
};

/// Perturbation growth about the traveling soliton under sem_on_soliton dynamics.
InstabilityReport run_instability(const RunConfig& cfg, const std::optional<std::filesystem::path>& snapshot_dir = {});

/// Least-squares growth rate of log(norm) against t over the contiguous run of
/// samples with norm in [low, high] that ends where the norm first exceeds high
/// (or at the end of the series).
struct GrowthFit {
    std::optional<double> sigma;
    double std_error = 0.0;
    double t_begin = 0.0;
    double t_end = 0.0;
    std::size_t samples = 0;
};
GrowthFit fit_growth(const std::vector<std::pair<double, double>>& series, double low, double high);

struct PicardSweepEntry {
    double T = 0.0;
    int iterates = 0;
    double max_ratio = 0.0;
    double final_distance = 0.0;
    bool converged = false;
    bool diverged = false;
};

struct PicardDemoReport {
    PicardReport report;
    TrajectoryPath path;
    std::vector<PicardSweepEntry> sweep;  ///< base run first, then each doubling
    double existence_window = 0.0;        ///< largest T that converged with every ratio < 1

    std::string iterations_csv() const;
    std::string sweep_csv() const;
    std::string summary_json(const RunConfig& cfg) const;
};

PicardDemoReport run_picard_demo(const RunConfig& cfg);

struct ProbeRun {
    ProbeReport base;
    std::optional<ProbeReport> refined;
    /// |max ratio refined / max ratio base - 1| when a refined run exists.
    std::optional<double> refinement_change;

    std::string summary_json(const RunConfig& cfg) const;
};

/// probe.kind in {strichartz, kato, maximal} on cfg's grid over [0, T];
/// the refinement doubles nx and ny at the same band limit.
ProbeRun run_probe_linear(const RunConfig& cfg);
/// Scan over probe.dyadics on the lattice (grid, T_box = T, probe.nt).
ProbeRun run_probe_bilinear(const RunConfig& cfg);
/// probe.kind in {nonlinear, l4}; the refinement doubles nx, ny and nt.
ProbeRun run_probe_nonlinear(const RunConfig& cfg);

}  // namespace semzk
