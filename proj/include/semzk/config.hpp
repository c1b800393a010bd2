#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "semzk/dynamics.hpp"
#include "semzk/error.hpp"

namespace semzk {

/// Invalid configuration or command line; the CLI maps it to exit code 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

enum class PerturbationShape { none, sinusoidal_y, gaussian };

/// Added to the initial data. sinusoidal_y is
///   amplitude * sech^2(sqrt(omega)/2 (x - x0)) * cos(ky y),
/// a transverse modulation riding on the soliton crest. gaussian is
///   amplitude * exp(-((x - x0)^2 + (y - ly/2)^2) / width^2).
struct PerturbationSpec {
    PerturbationShape shape = PerturbationShape::none;
    double amplitude = 0.0;
    double ky = 1.0;
    double width = 1.0;
};

/// Everything a run needs. Keys in the text format are listed by config_keys().
struct RunConfig {
    std::string equation = "zk";
    int nx = 256;
    int ny = 16;
    double lx = 80.0;
    double ly = 6.283185307179586;
    double T = 1.0;
    double dt = 0.01;
    double t0 = 0.0;

    /// soliton | random | zero | snapshot
    std::string initial = "soliton";
    double omega = 1.0;
    double x0 = 20.0;
    int band = 4;              ///< random data: |mode| <= band
    double amplitude = 0.01;   ///< random data: H^1 norm
    bool mean_zero = false;    ///< subtract the mean from the initial data
    std::string restart;       ///< snapshot file when initial = snapshot

    PerturbationSpec perturbation;

    int diagnostics_stride = 10;
    int snapshot_stride = 0;   ///< 0: final snapshot only
    std::vector<double> sobolev = {0.0, 2.0};
    std::string output = "semzk-run";
    std::uint64_t seed = 1;

    double fit_lower = 3.0;    ///< growth window starts at fit_lower * ||v(0)||
    double fit_upper = 0.1;    ///< and ends at fit_upper * ||phi||

    int picard_nodes = 101;
    double picard_tol = 1e-10;
    int picard_max_iter = 50;
    int picard_sweep = 0;      ///< number of T doublings to try after the base run

    std::string probe_kind = "strichartz";
    int trials = 10;
    double probe_s = 0.75;
    double delta = 0.01;
    int nt = 256;
    int time_nodes = 129;
    std::vector<double> dyadics = {1.0, 2.0, 4.0, 8.0};
    bool refine = true;

    /// Checks ranges and cross-field consistency; throws ConfigError.
    void validate() const;
    Grid2D grid() const;
    std::optional<SolitonParams> soliton() const;
    Equation make_equation() const;

    /// Resolved configuration in the text format, one key per line, every key present.
    std::string to_text() const;
    /// Same content as a JSON object.
    std::string to_json() const;
};

struct ConfigKey {
    std::string name;
    std::string help;
};
const std::vector<ConfigKey>& config_keys();

/// Assigns one key from its text form; throws ConfigError on an unknown key or bad value.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Parses "key = value" lines. '#' starts a comment, blank lines are ignored,
/// strings may be bare or double-quoted, lists are written [a, b, c] and a
/// "[section]" line prefixes the following keys with "section.".
RunConfig parse_config(const std::string& text, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

}  // namespace semzk
