#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "semzk/field.hpp"
#include "semzk/spectral.hpp"

namespace semzk::test {

inline constexpr double kPi = std::numbers::pi;

/// White-noise field with values in [-1, 1].
inline RealField random_field(const Grid2D& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    RealField f(g);
    for (double& v : f.values()) v = dist(rng);
    return f;
}

/// Real field whose spectrum has random Gaussian coefficients on
/// |mode_x| <= kx, |mode_y| <= ky only. Optionally mean-zero.
inline RealField band_limited_field(const Grid2D& g, int kx, int ky, std::uint64_t seed,
                                    bool mean_zero = true, double amplitude = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    SpectralField s(g);
    for (int mx = -kx; mx <= kx; ++mx) {
        for (int my = -ky; my <= ky; ++my) {
            const Complex c(dist(rng), dist(rng));
            // Fill each conjugate pair once from the lexicographically larger index.
            if (mx > 0 || (mx == 0 && my > 0)) {
                s.mode(mx, my) = amplitude * c;
                s.mode(-mx, -my) = amplitude * std::conj(c);
            } else if (mx == 0 && my == 0 && !mean_zero) {
                s.mode(0, 0) = amplitude * c.real();
            }
        }
    }
    return inverse_transform(s);
}

inline double max_abs_diff(const RealField& a, const RealField& b) {
    double m = 0.0;
    for (std::size_t n = 0; n < a.values().size(); ++n) {
        m = std::max(m, std::abs(a.values()[n] - b.values()[n]));
    }
    return m;
}

inline double rel_l2(const RealField& a, const RealField& b) { return l2_norm(a - b) / l2_norm(b); }

template <class Fn>
RealField sample(const Grid2D& g, Fn fn) {
    RealField f(g);
    for (int i = 0; i < g.nx(); ++i) {
        for (int j = 0; j < g.ny(); ++j) f(i, j) = fn(g.x(i), g.y(j));
    }
    return f;
}

}  // namespace semzk::test
