#include "semzk/dynamics.hpp"

#include <cmath>

#include "semzk/error.hpp"

namespace semzk {

void SolitonParams::validate() const {
    if (!(omega > 0.0) || !std::isfinite(omega)) throw Error("soliton speed omega must be > 0");
    if (!std::isfinite(x0)) throw Error("soliton offset must be finite");
}

double SolitonParams::width_rate() const { return 0.5 * std::sqrt(omega); }

Equation Equation::sem_on_soliton(SolitonParams p) {
    p.validate();
    return {Tag::sem_on_soliton, p};
}

void Equation::validate() const {
    if (tag == Tag::sem_on_soliton) {
        if (!soliton) throw Error("sem_on_soliton requires soliton parameters");
        soliton->validate();
    }
}

std::string Equation::name() const {
    switch (tag) {
        case Tag::zk: return "zk";
        case Tag::sem: return "sem";
        case Tag::sem_on_soliton: return "sem_on_soliton";
        case Tag::linear: return "linear";
    }
    return "unknown";
}

Equation Equation::parse(const std::string& name, std::optional<SolitonParams> soliton) {
    if (name == "zk") return zk();
    if (name == "sem") return sem();
    if (name == "linear") return linear();
    if (name == "sem_on_soliton") {
        if (!soliton) throw Error("sem_on_soliton requires soliton parameters");
        return sem_on_soliton(*soliton);
    }
    throw Error("unknown equation '" + name + "'");
}

SpectralField propagator_apply(const SpectralField& f, double t) {
    if (!std::isfinite(t)) throw Error("propagator time must be finite");
    const Grid2D& g = f.grid();
    SpectralField out = f;
    for (int i = 0; i < g.nx(); ++i) {
        const double xi = g.xi(i);
        for (int j = 0; j < g.ny(); ++j) {
            if (g.nyquist(i, j)) continue;
            const double mu = g.mu(j);
            const double phase = t * (xi * xi * xi + xi * mu * mu);
            out(i, j) *= Complex(std::cos(phase), std::sin(phase));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Soliton background

double soliton_coordinate(const SolitonParams& p, double t, double x, double lx) {
    double s = x - p.x0 - p.omega * t;
    s -= lx * std::floor((s + 0.5 * lx) / lx);
    return s;
}

double soliton_value(const SolitonParams& p, double s) {
    const double sech = 1.0 / std::cosh(p.width_rate() * s);
    return 3.0 * p.omega * sech * sech;
}

double soliton_dx(const SolitonParams& p, double s) {
    const double a = p.width_rate();
    const double sech = 1.0 / std::cosh(a * s);
    return -6.0 * p.omega * a * sech * sech * std::tanh(a * s);
}

double potential_value(const SolitonParams& p, double s) {
    return 6.0 * std::sqrt(p.omega) * std::tanh(p.width_rate() * s);
}

double potential_dx(const SolitonParams& p, double s) {
    const double a = p.width_rate();
    const double sech = 1.0 / std::cosh(a * s);
    return 6.0 * std::sqrt(p.omega) * a * sech * sech;
}

void check_soliton_domain(const SolitonParams& p, const Grid2D& grid) {
    p.validate();
    const double sech = 1.0 / std::cosh(p.width_rate() * 0.5 * grid.lx());
    if (sech * sech > kSolitonTailTolerance) throw Error("domain too small for soliton");
}

namespace {

template <class Fn>
RealField sample_soliton(const SolitonParams& p, double t, const Grid2D& grid, Fn fn) {
    check_soliton_domain(p, grid);
    RealField out(grid);
    for (int i = 0; i < grid.nx(); ++i) {
        const double v = fn(p, soliton_coordinate(p, t, grid.x(i), grid.lx()));
        for (int j = 0; j < grid.ny(); ++j) out(i, j) = v;
    }
    return out;
}

}  // namespace

RealField soliton_profile(const SolitonParams& p, double t, const Grid2D& grid) {
    return sample_soliton(p, t, grid, soliton_value);
}

RealField potential_profile(const SolitonParams& p, double t, const Grid2D& grid) {
    return sample_soliton(p, t, grid, potential_value);
}

// ---------------------------------------------------------------------------
// Right-hand sides

namespace detail {

SpectralField dealiased_transform(const RealField& product, const SpectralOps& ops) {
    if (!product.all_finite()) throw Error("non-finite field");
    SpectralField out = forward_transform(product);
    auto c = out.coeffs();
    for (std::size_t n = 0; n < c.size(); ++n) c[n] *= ops.keep[n];
    return out;
}

RhsEvaluator::RhsEvaluator(const Grid2D& grid, Equation eq) : ops_(grid), eq_(std::move(eq)) {
    eq_.validate();
    if (eq_.tag == Equation::Tag::sem_on_soliton) check_soliton_domain(*eq_.soliton, grid);
}

RealField RhsEvaluator::physical(const SpectralField& u_hat, const MultiplierTable* m) const {
    require_same_grid(u_hat.grid(), ops_.grid, "RhsEvaluator");
    SpectralField tmp = u_hat;
    auto c = tmp.coeffs();
    for (std::size_t n = 0; n < c.size(); ++n) {
        c[n] *= ops_.keep[n];
        if (m != nullptr) c[n] *= m->weights()[n];
    }
    return inverse_unchecked(tmp);
}

RealField RhsEvaluator::product_uux(const SpectralField& u_hat) const {
    RealField u = physical(u_hat, nullptr);
    RealField ux = physical(u_hat, &ops_.ddx);
    auto uv = u.values();
    auto xv = ux.values();
    for (std::size_t n = 0; n < uv.size(); ++n) uv[n] *= xv[n];
    return u;
}

RealField RhsEvaluator::product_ux_dxl(const SpectralField& u_hat) const {
    RealField ux = physical(u_hat, &ops_.ddx);
    RealField lu = physical(u_hat, &ops_.m1);
    auto a = ux.values();
    auto b = lu.values();
    for (std::size_t n = 0; n < a.size(); ++n) a[n] *= b[n];
    return ux;
}

RealField RhsEvaluator::product_uy_dyl(const SpectralField& u_hat) const {
    RealField uy = physical(u_hat, &ops_.ddy);
    RealField lu = physical(u_hat, &ops_.m2);
    auto a = uy.values();
    auto b = lu.values();
    for (std::size_t n = 0; n < a.size(); ++n) a[n] *= b[n];
    return uy;
}

RealField RhsEvaluator::product_background(const SpectralField& u_hat, double t) const {
    if (!eq_.soliton) throw Error("background terms require soliton parameters");
    const SolitonParams& p = *eq_.soliton;
    const Grid2D& g = ops_.grid;
    RealField u = physical(u_hat, nullptr);
    RealField ux = physical(u_hat, &ops_.ddx);
    RealField out(g);
    for (int i = 0; i < g.nx(); ++i) {
        const double s = soliton_coordinate(p, t, g.x(i), g.lx());
        const double phi = soliton_value(p, s);
        const double phi_x = soliton_dx(p, s);
        for (int j = 0; j < g.ny(); ++j) out(i, j) = phi_x * u(i, j) + 2.0 * phi * ux(i, j);
    }
    return out;
}

RealField RhsEvaluator::product_background_l(const SpectralField& u_hat, double t) const {
    if (!eq_.soliton) throw Error("background terms require soliton parameters");
    const SolitonParams& p = *eq_.soliton;
    const Grid2D& g = ops_.grid;
    RealField lu = physical(u_hat, &ops_.m1);
    for (int i = 0; i < g.nx(); ++i) {
        const double phi_x = soliton_dx(p, soliton_coordinate(p, t, g.x(i), g.lx()));
        for (int j = 0; j < g.ny(); ++j) lu(i, j) *= phi_x;
    }
    return lu;
}

SpectralField RhsEvaluator::operator()(const SpectralField& u_hat, double t) const {
    const Grid2D& g = ops_.grid;
    if (eq_.tag == Equation::Tag::linear) return SpectralField(g);

    RealField u = physical(u_hat, nullptr);
    RealField ux = physical(u_hat, &ops_.ddx);
    RealField total(g);
    auto out = total.values();
    auto uv = u.values();
    auto xv = ux.values();

    if (eq_.tag == Equation::Tag::zk) {
        for (std::size_t n = 0; n < out.size(); ++n) out[n] = -uv[n] * xv[n];
        return dealiased_transform(total, ops_);
    }

    RealField uy = physical(u_hat, &ops_.ddy);
    RealField lx = physical(u_hat, &ops_.m1);
    RealField ly = physical(u_hat, &ops_.m2);
    auto yv = uy.values();
    auto lxv = lx.values();
    auto lyv = ly.values();
    for (std::size_t n = 0; n < out.size(); ++n) {
        out[n] = -0.5 * (uv[n] * xv[n] + xv[n] * lxv[n] + yv[n] * lyv[n]);
    }

    if (eq_.tag == Equation::Tag::sem_on_soliton) {
        const SolitonParams& p = *eq_.soliton;
        for (int i = 0; i < g.nx(); ++i) {
            const double s = soliton_coordinate(p, t, g.x(i), g.lx());
            const double phi = soliton_value(p, s);
            const double phi_x = soliton_dx(p, s);
            for (int j = 0; j < g.ny(); ++j) {
                const std::size_t n = g.index(i, j);
                out[n] -= 0.5 * (phi_x * uv[n] + 2.0 * phi * xv[n]) + 0.5 * phi_x * lxv[n];
            }
        }
    }
    return dealiased_transform(total, ops_);
}

}  // namespace detail

RealField nonlinear_zk(const RealField& u) {
    detail::RhsEvaluator rhs(u.grid(), Equation::zk());
    return detail::inverse_unchecked(
        detail::dealiased_transform(rhs.product_uux(forward_transform(u)), rhs.ops()));
}

RealField nonlinear_sem(const RealField& u) {
    detail::RhsEvaluator rhs(u.grid(), Equation::sem());
    SpectralField f = -1.0 * rhs(forward_transform(u), 0.0);
    return detail::inverse_unchecked(f);
}

RealField background_terms(const RealField& u, const SolitonParams& p, double t) {
    detail::RhsEvaluator rhs(u.grid(), Equation::sem_on_soliton(p));
    const SpectralField u_hat = forward_transform(u);
    RealField total = rhs.product_background(u_hat, t);
    total += rhs.product_background_l(u_hat, t);
    total *= 0.5;
    return detail::inverse_unchecked(detail::dealiased_transform(total, rhs.ops()));
}

RealField solve_potential(const RealField& u) {
    return detail::inverse_unchecked(
        apply_multiplier(forward_transform(u), make_multiplier(MultiplierKind::poisson_dx, u.grid())));
}

double poisson_residual(const RealField& u, const RealField& phi) {
    require_same_grid(u.grid(), phi.grid(), "poisson_residual");
    const Grid2D& g = u.grid();
    SpectralField lap = apply_multiplier(forward_transform(phi), make_multiplier(MultiplierKind::laplacian, g));
    SpectralField ux = apply_multiplier(forward_transform(u), make_multiplier(MultiplierKind::ddx, g));
    return l2_norm(lap - ux);
}

}  // namespace semzk
