#include "semzk/littlewood_paley.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <tuple>

#include "semzk/error.hpp"

namespace semzk {

namespace {

double transition(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

void require_dyadic(int n, const char* what) {
    if (!is_dyadic(n)) throw Error(std::string(what) + " must be dyadic (1, 2, 4, ...)");
}

double omega_of(double xi, double mu) { return xi * (xi * xi + mu * mu); }

// The weight-one core of the dyadic piece: radius range where dyadic_weight == 1.
std::pair<double, double> plateau(int n) {
    if (n == 1) return {0.0, kBumpPlateau};
    return {n * kBumpSupport / 2.0, n * kBumpPlateau};
}

}  // namespace

double bump_eta(double s) {
    const double a = std::abs(s);
    if (a <= kBumpPlateau) return 1.0;
    if (a >= kBumpSupport) return 0.0;
    const double up = transition(kBumpSupport - a);
    const double down = transition(a - kBumpPlateau);
    return up / (up + down);
}

double bump_zeta(double s) { return bump_eta(s) - bump_eta(2.0 * s); }

bool is_dyadic(int n) { return n >= 1 && (n & (n - 1)) == 0; }

double dyadic_weight(double r, int n) {
    require_dyadic(n, "N");
    return n == 1 ? bump_eta(r) : bump_zeta(r / n);
}

SpectralField project_PN(const SpectralField& f, int n) {
    require_dyadic(n, "N");
    const Grid2D& g = f.grid();
    SpectralField out = f;
    for (int i = 0; i < g.nx(); ++i) {
        for (int j = 0; j < g.ny(); ++j) out(i, j) *= dyadic_weight(std::hypot(g.xi(i), g.mu(j)), n);
    }
    return out;
}

SpaceTimeField project_PN(const SpaceTimeField& f, int n) {
    require_dyadic(n, "N");
    SpaceTimeField out = f;
    out.scale([n](double xi, double mu, double) { return Complex(dyadic_weight(std::hypot(xi, mu), n)); });
    return out;
}

SpaceTimeField project_QL(const SpaceTimeField& f, int l) {
    require_dyadic(l, "L");
    SpaceTimeField out = f;
    out.scale([l](double xi, double mu, double tau) {
        return Complex(dyadic_weight(std::abs(tau - omega_of(xi, mu)), l));
    });
    return out;
}

SpaceTimeField random_block(const SpaceTimeLattice& lattice, int n, int l, std::uint64_t seed) {
    require_dyadic(n, "N");
    require_dyadic(l, "L");
    const Grid2D& g = lattice.grid();
    const auto [r_lo, r_hi] = plateau(n);
    const auto [s_lo, s_hi] = plateau(l);
    const std::string too_small =
        "resolution too small for (N,L) = (" + std::to_string(n) + "," + std::to_string(l) + ")";

    const double kx_max = (g.nx() / 2 - 1) * 2.0 * std::numbers::pi / g.lx();
    const double ky_max = (g.ny() / 2 - 1) * 2.0 * std::numbers::pi / g.ly();
    if (r_hi > kx_max || r_hi > ky_max) throw Error(too_small);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    SpaceTimeField out(lattice);
    std::size_t count = 0;
    for (int i = 0; i < g.nx(); ++i) {
        for (int j = 0; j < g.ny(); ++j) {
            if (g.nyquist(i, j)) continue;
            const double xi = g.xi(i);
            const double mu = g.mu(j);
            const double r = std::hypot(xi, mu);
            if (r < r_lo || r > r_hi) continue;
            const double omega = omega_of(xi, mu);
            const int l_first = static_cast<int>(std::ceil((omega - s_hi) / lattice.dtau()));
            const int l_last = static_cast<int>(std::floor((omega + s_hi) / lattice.dtau()));
            if (l_first <= lattice.l_min() || l_last > lattice.l_max()) throw Error(too_small);
            const auto key = std::make_tuple(g.mode_x(i), g.mode_y(j));
            const auto mirror = std::make_tuple(-g.mode_x(i), -g.mode_y(j));
            for (int q = l_first; q <= l_last; ++q) {
                const double sigma = std::abs(lattice.tau(q) - omega);
                if (sigma < s_lo || sigma > s_hi) continue;
                // Draw each conjugate pair once, from its lexicographically larger member.
                if (key < mirror || (key == mirror && q < 0)) continue;
                ++count;
                if (key == mirror && q == 0) {
                    out.set(i, j, q, normal(rng));
                    continue;
                }
                const Complex c(normal(rng), normal(rng));
                out.set(i, j, q, c);
                out.set(g.slot_x(-g.mode_x(i)), g.slot_y(-g.mode_y(j)), -q, std::conj(c));
            }
        }
    }
    if (count == 0) throw Error(too_small);
    out *= 1.0 / l2_norm(out);
    return out;
}

}  // namespace semzk
