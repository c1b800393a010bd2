#include "semzk/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "fft.hpp"
#include "semzk/error.hpp"

namespace semzk {

SpectralField forward_transform(const RealField& f) {
    if (!f.all_finite()) throw Error("non-finite field");
    const Grid2D& g = f.grid();
    std::vector<Complex> in(f.values().begin(), f.values().end());
    std::vector<Complex> out(g.size());
    detail::fft2d(g.nx(), g.ny(), detail::FftDirection::forward, in, out);
    const double scale = 1.0 / static_cast<double>(g.size());
    for (Complex& c : out) c *= scale;
    return SpectralField(g, std::move(out));
}

RealField detail::inverse_unchecked(const SpectralField& f) {
    const Grid2D& g = f.grid();
    std::vector<Complex> out(g.size());
    detail::fft2d(g.nx(), g.ny(), detail::FftDirection::backward, f.coeffs(), out);
    std::vector<double> values(g.size());
    for (std::size_t n = 0; n < values.size(); ++n) values[n] = out[n].real();
    return RealField(g, std::move(values));
}

RealField inverse_transform(const SpectralField& f) {
    double scale = 0.0;
    for (const Complex& c : f.coeffs()) scale = std::max(scale, std::abs(c));
    if (!std::isfinite(scale)) throw Error("non-finite field");
    if (scale > 0.0 && f.hermitian_defect() > 1e-10 * scale) {
        throw Error("non-Hermitian spectrum");
    }
    return detail::inverse_unchecked(f);
}

MultiplierTable::MultiplierTable(const Grid2D& grid, std::vector<Complex> weights)
    : grid_(grid), weights_(std::move(weights)) {
    if (weights_.size() != grid_.size()) throw Error("multiplier size does not match grid");
}

MultiplierTable make_multiplier(const Grid2D& grid,
                                const std::function<Complex(double, double)>& symbol,
                                Complex origin_value) {
    std::vector<Complex> w(grid.size());
    for (int i = 0; i < grid.nx(); ++i) {
        for (int j = 0; j < grid.ny(); ++j) {
            Complex value;
            if (grid.nyquist(i, j)) {
                value = 0.0;
            } else if (i == 0 && j == 0) {
                value = origin_value;
            } else {
                value = symbol(grid.xi(i), grid.mu(j));
            }
            w[grid.index(i, j)] = value;
        }
    }
    return MultiplierTable(grid, std::move(w));
}

MultiplierTable make_multiplier(MultiplierKind kind, const Grid2D& grid) {
    const Complex I(0.0, 1.0);
    switch (kind) {
        case MultiplierKind::m1:
            return make_multiplier(
                grid, [](double xi, double mu) { return Complex(xi * xi / (xi * xi + mu * mu)); },
                0.0);
        case MultiplierKind::m2:
            return make_multiplier(
                grid, [](double xi, double mu) { return Complex(xi * mu / (xi * xi + mu * mu)); },
                0.0);
        case MultiplierKind::ddx:
            return make_multiplier(grid, [I](double xi, double) { return I * xi; }, 0.0);
        case MultiplierKind::ddy:
            return make_multiplier(grid, [I](double, double mu) { return I * mu; }, 0.0);
        case MultiplierKind::symbol_omega:
            return make_multiplier(
                grid, [](double xi, double mu) { return Complex(xi * xi * xi + xi * mu * mu); },
                0.0);
        case MultiplierKind::laplacian:
            return make_multiplier(
                grid, [](double xi, double mu) { return Complex(-(xi * xi + mu * mu)); }, 0.0);
        case MultiplierKind::poisson_dx:
            return make_multiplier(
                grid, [I](double xi, double mu) { return -I * xi / (xi * xi + mu * mu); }, 0.0);
    }
    throw Error("unknown multiplier kind");
}

void apply_multiplier_inplace(SpectralField& f, const MultiplierTable& m) {
    require_same_grid(f.grid(), m.grid(), "apply_multiplier");
    auto c = f.coeffs();
    auto w = m.weights();
    for (std::size_t n = 0; n < c.size(); ++n) c[n] *= w[n];
}

SpectralField apply_multiplier(const SpectralField& f, const MultiplierTable& m) {
    SpectralField out = f;
    apply_multiplier_inplace(out, m);
    return out;
}

SpectralField dealias(const SpectralField& f, double fraction) {
    if (!(fraction > 0.0 && fraction <= 1.0)) throw Error("dealias fraction must lie in (0,1]");
    const Grid2D& g = f.grid();
    const double cut_x = fraction * g.nx() / 2.0;
    const double cut_y = fraction * g.ny() / 2.0;
    SpectralField out = f;
    for (int i = 0; i < g.nx(); ++i) {
        const bool drop_x = std::abs(g.mode_x(i)) > cut_x;
        for (int j = 0; j < g.ny(); ++j) {
            if (drop_x || std::abs(g.mode_y(j)) > cut_y) out(i, j) = 0.0;
        }
    }
    return out;
}

SpectralOps::SpectralOps(const Grid2D& g, double dealias_fraction)
    : grid(g),
      ddx(make_multiplier(MultiplierKind::ddx, g)),
      ddy(make_multiplier(MultiplierKind::ddy, g)),
      m1(make_multiplier(MultiplierKind::m1, g)),
      m2(make_multiplier(MultiplierKind::m2, g)),
      omega(make_multiplier(MultiplierKind::symbol_omega, g)),
      keep(g.size(), 0.0) {
    SpectralField ones(g);
    for (Complex& c : ones.coeffs()) c = 1.0;
    SpectralField kept = dealias(ones, dealias_fraction);
    for (std::size_t n = 0; n < keep.size(); ++n) keep[n] = kept.coeffs()[n].real();
}

}  // namespace semzk
