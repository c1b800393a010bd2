#include "semzk/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "semzk/error.hpp"
#include "semzk/norms.hpp"

namespace semzk {

namespace {

bool all_finite(const SpectralField& f) {
    return std::all_of(f.coeffs().begin(), f.coeffs().end(),
                       [](const Complex& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

std::vector<Complex> phase_table(const SpectralOps& ops, double t) {
    std::vector<Complex> e(ops.grid.size());
    auto w = ops.omega.weights();
    for (std::size_t n = 0; n < e.size(); ++n) {
        const double phase = t * w[n].real();
        e[n] = Complex(std::cos(phase), std::sin(phase));
    }
    return e;
}

void multiply(SpectralField& f, const std::vector<Complex>& table) {
    auto c = f.coeffs();
    for (std::size_t n = 0; n < c.size(); ++n) c[n] *= table[n];
}

}  // namespace

// ---------------------------------------------------------------------------
// TrajectoryPath

void TrajectoryPath::push(double t, RealField f) {
    require_same_grid(grid, f.grid(), "TrajectoryPath::push");
    if (!times.empty() && !(t > times.back())) throw Error("trajectory times must increase");
    times.push_back(t);
    fields.push_back(std::move(f));
}

double TrajectoryPath::spacing() const {
    if (times.size() < 2) return 0.0;
    return (times.back() - times.front()) / static_cast<double>(times.size() - 1);
}

void TrajectoryPath::require_uniform(std::size_t min_nodes) const {
    if (times.size() != fields.size()) throw Error("trajectory times and fields differ in length");
    if (times.size() < min_nodes) throw Error("trajectory has too few nodes");
    const double h = spacing();
    for (std::size_t m = 0; m < times.size(); ++m) {
        const double expected = times.front() + h * static_cast<double>(m);
        if (std::abs(times[m] - expected) > 1e-9 * std::max(1.0, std::abs(times.back()))) {
            throw Error("trajectory is not uniformly spaced");
        }
        if (!fields[m].all_finite()) throw Error("non-finite field");
    }
}

TrajectoryPath make_uniform_path(const Grid2D& grid, double T, int nodes) {
    if (nodes < 2) throw Error("a path needs at least two nodes");
    if (!(T > 0.0)) throw Error("path length must be positive");
    TrajectoryPath path(grid);
    for (int m = 0; m < nodes; ++m) path.push(T * m / (nodes - 1), RealField(grid));
    return path;
}

// ---------------------------------------------------------------------------
// Duhamel quadrature

RealField duhamel_term(DuhamelKind kind, const TrajectoryPath& path,
                       const std::optional<SolitonParams>& soliton, double t) {
    path.require_uniform();
    const bool needs_background = kind == DuhamelKind::E4 || kind == DuhamelKind::E5;
    if (needs_background != soliton.has_value()) {
        throw Error("soliton parameters are required exactly for E4 and E5");
    }
    const double t0 = path.t_begin();
    const double tol = 1e-12 * std::max(1.0, std::abs(path.t_end()));
    if (t < t0 - tol || t > path.t_end() + tol) throw Error("time outside trajectory range");

    const Equation eq = needs_background ? Equation::sem_on_soliton(*soliton) : Equation::sem();
    detail::RhsEvaluator rhs(path.grid, eq);
    const double h = path.spacing();

    auto integrand = [&](std::size_t m) {
        const SpectralField u_hat = forward_transform(path.fields[m]);
        const double tm = path.times[m];
        RealField product(path.grid);
        switch (kind) {
            case DuhamelKind::E1: product = rhs.product_uux(u_hat); break;
            case DuhamelKind::E2: product = rhs.product_ux_dxl(u_hat); break;
            case DuhamelKind::E3: product = rhs.product_uy_dyl(u_hat); break;
            case DuhamelKind::E4: product = rhs.product_background(u_hat, tm); break;
            case DuhamelKind::E5: product = rhs.product_background_l(u_hat, tm); break;
        }
        return propagator_apply(detail::dealiased_transform(product, rhs.ops()), -(tm - t0));
    };

    const double offset = (t - t0) / h;
    std::size_t last = static_cast<std::size_t>(std::floor(offset + 1e-9));
    last = std::min(last, path.size() - 1);
    const double rem = std::max(0.0, t - path.times[last]);

    SpectralField sum(path.grid);
    if (last > 0 || rem > tol) {
        SpectralField g_prev = integrand(0);
        for (std::size_t m = 1; m <= last; ++m) {
            SpectralField g = integrand(m);
            sum += Complex(0.5 * h) * (g_prev + g);
            g_prev = std::move(g);
        }
        if (rem > tol && last + 1 < path.size()) {
            const double theta = rem / h;
            SpectralField g_next = integrand(last + 1);
            SpectralField g_t = Complex(1.0 - theta) * g_prev + Complex(theta) * g_next;
            sum += Complex(0.5 * rem) * (g_prev + g_t);
        }
    }
    return detail::inverse_unchecked(propagator_apply(sum, t - t0));
}

// ---------------------------------------------------------------------------
// Picard iteration

std::pair<TrajectoryPath, PicardReport> picard_solve(const RealField& u0, const Equation& eq,
                                                     double T, int nodes,
                                                     const PicardOptions& options) {
    if (!(T > 0.0) || !std::isfinite(T)) throw Error("Picard horizon T must be positive");
    if (!(options.tol > 0.0)) throw Error("Picard tolerance must be positive");
    if (nodes < 2) throw Error("Picard iteration needs at least two time nodes");
    if (options.max_iter < 1) throw Error("Picard max_iter must be >= 1");
    if (!u0.all_finite()) throw Error("non-finite field");

    const Grid2D& g = u0.grid();
    detail::RhsEvaluator rhs(g, eq);
    const double h = T / (nodes - 1);
    std::vector<double> times(nodes);
    for (int m = 0; m < nodes; ++m) times[m] = T * m / (nodes - 1);

    const SpectralField u0_hat = forward_transform(u0);
    std::vector<SpectralField> current;
    current.reserve(nodes);
    for (int m = 0; m < nodes; ++m) current.push_back(propagator_apply(u0_hat, times[m]));

    PicardReport report;
    auto forcing = [&](const SpectralField& u_hat, double t) {
        try {
            return rhs(u_hat, t);
        } catch (const Error&) {
            throw Error("iteration diverged");
        }
    };
    for (int k = 0; k < options.max_iter; ++k) {
        std::vector<SpectralField> next;
        next.reserve(nodes);
        SpectralField acc(g);  // trapezoid sum of U(-t') F(u^k(t'))
        SpectralField g_prev = propagator_apply(forcing(current[0], times[0]), -times[0]);
        next.push_back(u0_hat);
        for (int m = 1; m < nodes; ++m) {
            SpectralField g_m = propagator_apply(forcing(current[m], times[m]), -times[m]);
            acc += Complex(0.5 * h) * (g_prev + g_m);
            g_prev = std::move(g_m);
            next.push_back(propagator_apply(u0_hat + acc, times[m]));
        }

        double dist = 0.0;
        for (int m = 0; m < nodes; ++m) {
            if (!all_finite(next[m])) throw Error("iteration diverged");
            dist = std::max(dist, sobolev_norm(next[m] - current[m], options.sobolev_s));
        }
        if (!std::isfinite(dist)) throw Error("iteration diverged");

        report.iterates = k + 1;
        if (!report.distances.empty()) {
            const double prev = report.distances.back();
            report.ratios.push_back(prev > 0.0 ? dist / prev : 0.0);
        }
        report.distances.push_back(dist);
        current = std::move(next);
        if (dist <= options.tol) {
            report.converged = true;
            break;
        }
    }

    TrajectoryPath path(g);
    for (int m = 0; m < nodes; ++m) path.push(times[m], detail::inverse_unchecked(current[m]));
    return {std::move(path), report};
}

// ---------------------------------------------------------------------------
// Integrating-factor RK4

IfRk4Stepper::IfRk4Stepper(const Grid2D& grid, Equation eq, double dt)
    : rhs_(grid, std::move(eq)), dt_(dt) {
    if (!(dt != 0.0) || !std::isfinite(dt)) throw Error("time step must be finite and nonzero");
    half_ = phase_table(rhs_.ops(), 0.5 * dt);
    full_ = phase_table(rhs_.ops(), dt);
}

SpectralField IfRk4Stepper::step(const SpectralField& v, double t) const {
    if (!all_finite(v)) throw Error("step diverged; reduce dt");
    try {
        return step_unchecked(v, t);
    } catch (const Error&) {
        // Overflow inside a stage surfaces as a non-finite transform input.
        throw Error("step diverged; reduce dt");
    }
}

SpectralField IfRk4Stepper::step_unchecked(const SpectralField& v, double t) const {
    const double dt = dt_;
    const SpectralField k1 = rhs_(v, t);

    SpectralField a = v + Complex(0.5 * dt) * k1;
    multiply(a, half_);
    const SpectralField k2 = rhs_(a, t + 0.5 * dt);

    SpectralField ev = v;
    multiply(ev, half_);
    const SpectralField b = ev + Complex(0.5 * dt) * k2;
    const SpectralField k3 = rhs_(b, t + 0.5 * dt);

    SpectralField e2v = v;
    multiply(e2v, full_);
    SpectralField ek3 = k3;
    multiply(ek3, half_);
    const SpectralField c = e2v + Complex(dt) * ek3;
    const SpectralField k4 = rhs_(c, t + dt);

    SpectralField e2k1 = k1;
    multiply(e2k1, full_);
    SpectralField mid = k2 + k3;
    multiply(mid, half_);

    SpectralField out = e2v;
    auto o = out.coeffs();
    auto c1 = e2k1.coeffs();
    auto cm = mid.coeffs();
    auto c4 = k4.coeffs();
    for (std::size_t n = 0; n < o.size(); ++n) o[n] += (dt / 6.0) * (c1[n] + 2.0 * cm[n] + c4[n]);
    if (!all_finite(out)) throw Error("step diverged; reduce dt");
    return out;
}

RealField ifrk4_step(const RealField& u, const Equation& eq, double t, double dt) {
    if (!(dt > 0.0)) throw Error("time step must be positive");
    IfRk4Stepper stepper(u.grid(), eq, dt);
    return detail::inverse_unchecked(stepper.step(forward_transform(u), t));
}

double suggested_dt(const RealField& u, const Equation& eq) {
    const Grid2D& g = u.grid();
    double umax = 0.0;
    for (double v : u.values()) umax = std::max(umax, std::abs(v));
    if (eq.tag == Equation::Tag::sem_on_soliton) umax += eq.soliton->amplitude();
    const double kx = kDefaultDealiasFraction * std::numbers::pi * g.nx() / g.lx();
    const double ky = kDefaultDealiasFraction * std::numbers::pi * g.ny() / g.ly();
    const double kmax = std::hypot(kx, ky);
    if (umax == 0.0 || eq.tag == Equation::Tag::linear) return std::numeric_limits<double>::infinity();
    return kStepSafetyFactor / (kmax * umax);
}

TrajectoryPath evolve(const RealField& u0, const Equation& eq, double T, double dt,
                      const EvolveOptions& options) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw Error("time step must be positive");
    if (!std::isfinite(T)) throw Error("final time must be finite");
    if (options.sample_stride < 1) throw Error("sample stride must be >= 1");
    if (!u0.all_finite()) throw Error("non-finite field");

    const Grid2D& g = u0.grid();
    const double t0 = options.t0;
    TrajectoryPath path(g);
    auto notify = [&](int step, double t, const RealField& u) {
        for (const auto& hook : options.callbacks) {
            if (hook.stride > 0 && step % hook.stride == 0) hook.fn(step, t, u);
        }
    };

    // For T < 0 the recorded times decrease.
    const int nsteps = T == 0.0 ? 0 : static_cast<int>(std::ceil(std::abs(T) / dt - 1e-9));
    path.times.push_back(t0);
    path.fields.push_back(u0);
    notify(0, t0, u0);
    if (nsteps == 0) return path;

    const double h = T / nsteps;
    IfRk4Stepper stepper(g, eq, h);
    SpectralField v = forward_transform(u0);
    for (int n = 1; n <= nsteps; ++n) {
        const double t_prev = t0 + h * (n - 1);
        v = stepper.step(v, t_prev);
        const double t = t0 + h * n;
        const bool record = n % options.sample_stride == 0 || n == nsteps;
        const bool hooked = std::any_of(options.callbacks.begin(), options.callbacks.end(),
                                        [n](const auto& hk) { return hk.stride > 0 && n % hk.stride == 0; });
        if (record || hooked) {
            RealField u = detail::inverse_unchecked(v);
            if (hooked) notify(n, t, u);
            if (record) {
                path.times.push_back(t);
                path.fields.push_back(std::move(u));
            }
        }
    }
    return path;
}

}  // namespace semzk
