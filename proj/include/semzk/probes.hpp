#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "semzk/integrators.hpp"
#include "semzk/spacetime.hpp"

namespace semzk {

/// One randomized evaluation of an estimate: ratio = lhs / rhs, or 0 when
/// the left side vanishes.
struct ProbeTrial {
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, double>> params;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
};

/// Least-squares exponent of log(ratio) against log(variable).
struct ScalingFit {
    std::string variable;
    double exponent = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
    std::string regime;  ///< which trials entered the fit
};

struct ProbeReport {
    std::string estimate;
    std::vector<ProbeTrial> trials;
    std::vector<ScalingFit> fits;
    std::vector<std::string> notes;

    /// Largest positive ratio; zero-ratio trials are excluded.
    double max_ratio() const;
    bool all_finite() const;
    const ScalingFit* fit(const std::string& variable, const std::string& regime) const;

    /// One row per trial: seed, parameters, lhs, rhs, ratio.
    std::string csv() const;
    /// Max ratio, fits, seeds and notes; config_json (a JSON object text) is embedded verbatim.
    std::string summary_json(const std::string& config_json = "{}") const;
};

/// Multiple regression of y on the columns of x with an intercept. Returns
/// one (coefficient, standard error) per column, intercept excluded.
std::vector<std::pair<double, double>> least_squares_fit(const std::vector<std::vector<double>>& x,
                                                         const std::vector<double>& y);

// ---------------------------------------------------------------------------
// Bilinear block estimates

/// Frequencies count as separated when one exceeds the other by a factor of 4.
bool frequencies_separated(int n1, int n2);

/// (N1 ^ N2)(L1 ^ L2)^{1/2} in general and, for separated frequencies,
/// (N1 ^ N2)^{1/2} (N1 v N2)^{-1} (L1 v L2)^{1/2} (L1 ^ L2)^{1/2}.
double bilinear_bound(int n1, int l1, int n2, int l2);

/// ||(P_N1 Q_L1 u)(P_N2 Q_L2 v)||_{L2} against bound * ||P Q u|| ||P Q v||.
ProbeTrial bilinear_trial(const SpaceTimeField& u, const SpaceTimeField& v, int n1, int l1, int n2, int l2);

ProbeReport probe_block_bilinear(const SpaceTimeLattice& lattice, int n1, int l1, int n2, int l2, int trials,
                                 std::uint64_t seed);

/// All (N1, L1, N2, L2) combinations over `dyadics`, `trials` seeds each, with
/// exponent fits of the ratio against N1 v N2 (separated regime and all trials).
ProbeReport probe_bilinear_scan(const SpaceTimeLattice& lattice, const std::vector<int>& dyadics, int trials,
                                std::uint64_t seed);

/// Default lattice for the bilinear probes: 32x32 on a 2pi cell, 2pi time box.
SpaceTimeLattice default_bilinear_lattice();

// ---------------------------------------------------------------------------
// Linear estimates of the free flow

enum class LinearEstimate { strichartz, kato, maximal };

LinearEstimate parse_linear_estimate(const std::string& name);
std::string to_string(LinearEstimate e);

struct LinearProbeOptions {
    int band_limit = 3;       ///< |mode| <= band_limit in each direction
    int time_nodes = 129;     ///< uniform nodes on [0, T]
    double sobolev_s = 0.8;   ///< H^s index on the right of the maximal estimate
};

/// Gaussian coefficients on |mode_x|, |mode_y| <= band_limit, mean zero, drawn
/// in mode-number order so the same seed gives the same data on any grid.
SpectralField random_band_limited(const Grid2D& grid, int band_limit, std::uint64_t seed);

/// Free evolution U(t)u0 sampled on a uniform path.
TrajectoryPath free_path(const SpectralField& u0, double T, int nodes);

ProbeTrial linear_trial(LinearEstimate kind, const SpectralField& u0, double T, const LinearProbeOptions& opts);

ProbeReport probe_linear_estimates(LinearEstimate kind, int trials, const Grid2D& grid, double T, std::uint64_t seed,
                                   const LinearProbeOptions& opts = {});

// ---------------------------------------------------------------------------
// Nonlinear and L4 estimates on the space-time lattice

struct NonlinearProbeOptions {
    double delta = 0.01;
    int band_limit = 3;
};

/// Real, time-localized superposition of free waves: a Gaussian envelope of
/// width t_box / 12 centred in the box times random plane waves on
/// |mode| <= band_limit, sampled on the lattice and normalized in L2.
/// Throws when the temporal resolution cannot hold the packet.
SpaceTimeField random_wave_packet(const SpaceTimeLattice& lattice, int band_limit, std::uint64_t seed);

/// u u_x + u_x dxL(u) + u_y dyL(u) on lattice.doubled().
SpaceTimeField sem_nonlinearity(const SpaceTimeField& u);

/// ||N(u)||_{X^{s,-1/2+2 delta}} against ||u||^2_{X^{s,1/2+delta}}.
ProbeTrial nonlinear_trial(const SpaceTimeField& u, double s, double delta);

ProbeReport probe_nonlinear_estimate(int trials, double s, const SpaceTimeLattice& lattice, std::uint64_t seed,
                                     const NonlinearProbeOptions& opts = {});

/// ||u||_{L4} against ||u||_{X^{0,5/6+delta}}, with the L4 norm from ||u^2||_{L2}.
ProbeTrial l4_trial(const SpaceTimeField& u, double delta);

ProbeReport probe_l4_estimate(int trials, const SpaceTimeLattice& lattice, std::uint64_t seed,
                              const NonlinearProbeOptions& opts = {});

}  // namespace semzk
