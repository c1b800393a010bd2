#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "semzk/dynamics.hpp"
#include "semzk/field.hpp"

namespace semzk {

/// Time-indexed fields on [t0, t_end]. Nodes are uniformly spaced unless the
/// path was sampled with a stride that does not divide the step count.
struct TrajectoryPath {
    explicit TrajectoryPath(const Grid2D& g) : grid(g) {}

    Grid2D grid;
    std::vector<double> times;
    std::vector<RealField> fields;

    std::size_t size() const { return times.size(); }
    double t_begin() const { return times.front(); }
    double t_end() const { return times.back(); }
    /// Throws unless times are strictly increasing, uniform to 1e-9 relative,
    /// the path has at least min_nodes nodes and every field is finite.
    void require_uniform(std::size_t min_nodes = 2) const;
    double spacing() const;
    void push(double t, RealField f);
};

/// Uniform path with nodes t_m = T m / (nodes - 1).
TrajectoryPath make_uniform_path(const Grid2D& grid, double T, int nodes);

enum class DuhamelKind { E1, E2, E3, E4, E5 };

/// integral_0^t U(t - t') g(u(t')) dt' by composite trapezoid on the path nodes, with
///   E1: u u_x,  E2: u_x dxL(u),  E3: u_y dyL(u),  E4: phi_x u + 2 phi u_x,  E5: phi_x dxL(u).
/// A t strictly between nodes closes with a partial trapezoid panel whose right
/// end is the linear interpolant of the interaction-picture integrand.
RealField duhamel_term(DuhamelKind kind, const TrajectoryPath& path,
                       const std::optional<SolitonParams>& soliton, double t);

struct PicardOptions {
    double tol = 1e-10;
    int max_iter = 50;
    double sobolev_s = 1.0;
};

struct PicardReport {
    int iterates = 0;
    std::vector<double> distances;  ///< sup_t ||u^{k+1} - u^k||_{H^s}, one per iterate
    std::vector<double> ratios;     ///< distances[k+1] / distances[k]
    bool converged = false;
};

/// Fixed-point iteration u^{k+1}(t) = U(t)u0 + int_0^t U(t-t') F(u^k)(t') dt' on a
/// uniform grid of `nodes` times in [0, T], where F is the forcing of `eq`.
std::pair<TrajectoryPath, PicardReport> picard_solve(const RealField& u0, const Equation& eq,
                                                     double T, int nodes,
                                                     const PicardOptions& options = {});

/// One integrating-factor RK4 step from t to t + dt.
RealField ifrk4_step(const RealField& u, const Equation& eq, double t, double dt);

/// Reusable stepper for a fixed grid, equation and step size. Works directly
/// on spectra so a run pays for transforms only inside the forcing.
class IfRk4Stepper {
public:
    IfRk4Stepper(const Grid2D& grid, Equation eq, double dt);

    double dt() const { return dt_; }
    const detail::RhsEvaluator& rhs() const { return rhs_; }
    SpectralField step(const SpectralField& v, double t) const;

private:
    SpectralField step_unchecked(const SpectralField& v, double t) const;

    detail::RhsEvaluator rhs_;
    double dt_;
    std::vector<Complex> half_;
    std::vector<Complex> full_;
};

/// Empirical safety factor for dt * max|forcing rate|, from a stability scan
/// (see IntegratorStability tests).
inline constexpr double kStepSafetyFactor = 0.5;

/// Suggested dt = kStepSafetyFactor / (k_max * (max|u| + max|phi|)), the
/// advective limit of the forcing with dealiased k_max. The dispersive part
/// is integrated exactly and imposes no limit.
double suggested_dt(const RealField& u, const Equation& eq);

using StepCallback = std::function<void(int step, double t, const RealField& u)>;

struct EvolveOptions {
    double t0 = 0.0;
    int sample_stride = 1;  ///< record every n-th step (the final state is always recorded)
    struct Hook {
        int stride = 1;
        StepCallback fn;
    };
    std::vector<Hook> callbacks;
};

/// Marches u0 from t0 to t0 + T with steps of equal size |dt_eff| <= dt.
/// Negative T integrates backward. T = 0 returns the single snapshot u0.
TrajectoryPath evolve(const RealField& u0, const Equation& eq, double T, double dt,
                      const EvolveOptions& options = {});

}  // namespace semzk
