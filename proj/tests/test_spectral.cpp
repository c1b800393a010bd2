#include <doctest.h>

#include <limits>

#include "semzk/dynamics.hpp"
#include "semzk/error.hpp"
#include "semzk/spectral.hpp"
#include "test_util.hpp"

using namespace semzk;
using semzk::test::kPi;

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(Grid2D(6, 8, 1.0, 1.0), Error);
    CHECK_THROWS_AS(Grid2D(9, 8, 1.0, 1.0), Error);
    CHECK_THROWS_AS(Grid2D(8, 8, 0.0, 1.0), Error);
    const Grid2D g(16, 8, 2.0 * kPi, 4.0 * kPi);
    CHECK(g.mode_x(8) == -8);
    CHECK(g.mode_y(7) == -1);
    CHECK(g.xi(1) == doctest::Approx(1.0));
    CHECK(g.mu(1) == doctest::Approx(0.5));
    CHECK(g.nyquist_x(8));
}

TEST_CASE("forward transform of simple fields") {
    const Grid2D g(16, 16, 3.0, 5.0);
    SUBCASE("zero field") {
        const SpectralField s = forward_transform(RealField(g));
        for (const Complex& c : s.coeffs()) CHECK(c == Complex(0.0));
    }
    SUBCASE("single cosine") {
        const RealField f = test::sample(g, [&](double x, double) { return std::cos(2 * kPi * x / g.lx()); });
        const SpectralField s = forward_transform(f);
        int nonzero = 0;
        for (int i = 0; i < g.nx(); ++i) {
            for (int j = 0; j < g.ny(); ++j) {
                if (std::abs(s(i, j)) > 1e-14) {
                    ++nonzero;
                    CHECK(std::abs(g.mode_x(i)) == 1);
                    CHECK(g.mode_y(j) == 0);
                    CHECK(std::abs(s(i, j)) == doctest::Approx(0.5).epsilon(1e-14));
                }
            }
        }
        CHECK(nonzero == 2);
    }
    SUBCASE("non-finite input") {
        RealField f(g);
        f(3, 4) = std::numeric_limits<double>::quiet_NaN();
        CHECK_THROWS_WITH_AS(forward_transform(f), "non-finite field", Error);
    }
}

TEST_CASE("inverse transform") {
    const Grid2D g(16, 8, 2.0, 2.0);
    CHECK(l2_norm(inverse_transform(SpectralField(g))) == 0.0);

    SpectralField s(g);
    s.mode(1, 0) = Complex(0.5, 0.0);
    s.mode(-1, 0) = Complex(0.5, 0.0);
    const RealField f = inverse_transform(s);
    const RealField expected = test::sample(g, [&](double x, double) { return std::cos(2 * kPi * x / g.lx()); });
    CHECK(test::max_abs_diff(f, expected) < 1e-14);

    s.mode(2, 1) = Complex(0.0, 1.0);
    CHECK_THROWS_WITH_AS(inverse_transform(s), "non-Hermitian spectrum", Error);
}

TEST_CASE("round trip and Parseval over grid sizes") {
    std::uint64_t seed = 1;
    for (int n : {8, 16, 32, 64, 128}) {
        for (int m : {8, n}) {
            const Grid2D g(n, m, 1.7, 0.9);
            const RealField f = test::random_field(g, seed++);
            const SpectralField s = forward_transform(f);
            CHECK(s.hermitian_defect() < 1e-15);
            const RealField back = inverse_transform(s);
            CHECK(test::rel_l2(back, f) < 1e-12);
            const double phys = inner_product(f, f);
            const double spec = l2_norm(s) * l2_norm(s);
            CHECK(std::abs(phys - spec) / phys < 1e-12);
        }
    }
    SUBCASE("random Hermitian spectrum") {
        const Grid2D g(16, 16, 1.0, 1.0);
        const RealField f = test::band_limited_field(g, 7, 7, 99);
        const SpectralField s = forward_transform(f);
        CHECK(test::rel_l2(inverse_transform(s), f) < 1e-12);
    }
}

TEST_CASE("multiplier symbols") {
    const Grid2D g(16, 16, 2.0 * kPi, 2.0 * kPi);  // integer wavenumbers
    const auto m1 = make_multiplier(MultiplierKind::m1, g);
    const auto m2 = make_multiplier(MultiplierKind::m2, g);
    const auto om = make_multiplier(MultiplierKind::symbol_omega, g);
    const auto dx = make_multiplier(MultiplierKind::ddx, g);
    CHECK(m1(g.slot_x(1), g.slot_y(0)).real() == doctest::Approx(1.0));
    CHECK(m2(g.slot_x(1), g.slot_y(1)).real() == doctest::Approx(0.5));
    CHECK(om(g.slot_x(1), g.slot_y(2)).real() == doctest::Approx(5.0));
    CHECK(dx(g.slot_x(3), 0) == Complex(0.0, 3.0));
    CHECK(m1(0, 0) == Complex(0.0));
    CHECK(m2(0, 0) == Complex(0.0));
    // Nyquist row and column carry zero weight.
    CHECK(dx(8, 0) == Complex(0.0));
    CHECK(m1(3, 8) == Complex(0.0));

    const auto custom = make_multiplier(g, [](double xi, double mu) { return Complex(1.0 / (xi * xi + mu * mu)); }, 7.0);
    CHECK(custom(0, 0) == Complex(7.0));
    CHECK(std::isfinite(custom(1, 0).real()));
}

TEST_CASE("multiplier boundedness scan") {
    for (const auto& g : {Grid2D(32, 32, 2 * kPi, 2 * kPi), Grid2D(64, 16, 10.0, 3.0)}) {
        const auto m1 = make_multiplier(MultiplierKind::m1, g);
        const auto m2 = make_multiplier(MultiplierKind::m2, g);
        for (std::size_t n = 0; n < g.size(); ++n) {
            CHECK(std::abs(m1.weights()[n]) <= 1.0);
            CHECK(std::abs(m2.weights()[n]) <= 0.5 + 1e-16);
        }
        const RealField f = test::random_field(g, 5);
        const SpectralField s = forward_transform(f);
        CHECK(l2_norm(apply_multiplier(s, m1)) <= l2_norm(s));
        CHECK(l2_norm(apply_multiplier(s, m2)) <= 0.5 * l2_norm(s));
    }
}

TEST_CASE("apply_multiplier") {
    const Grid2D g(32, 16, 4.0, 3.0);
    SUBCASE("m1 annihilates the mu axis") {
        SpectralField s(g);
        for (int k = 1; k < 6; ++k) {
            s.mode(0, k) = Complex(1.0, k);
            s.mode(0, -k) = Complex(1.0, -k);
        }
        const SpectralField out = apply_multiplier(s, make_multiplier(MultiplierKind::m1, g));
        CHECK(l2_norm(out) == 0.0);
    }
    SUBCASE("ddx of a cosine") {
        const double k = 2 * kPi / g.lx();
        const RealField f = test::sample(g, [&](double x, double) { return std::cos(k * x); });
        const RealField d = inverse_transform(apply_multiplier(forward_transform(f), make_multiplier(MultiplierKind::ddx, g)));
        const RealField expected = test::sample(g, [&](double x, double) { return -k * std::sin(k * x); });
        CHECK(test::max_abs_diff(d, expected) < 1e-13);
    }
    SUBCASE("Laplacian of the Poisson solution operator equals ddx") {
        const SpectralField s = forward_transform(test::band_limited_field(g, 15, 7, 3));
        const SpectralField lhs = apply_multiplier(apply_multiplier(s, make_multiplier(MultiplierKind::poisson_dx, g)),
                                                   make_multiplier(MultiplierKind::laplacian, g));
        const SpectralField rhs = apply_multiplier(s, make_multiplier(MultiplierKind::ddx, g));
        CHECK(l2_norm(lhs - rhs) <= 1e-12 * l2_norm(rhs));
    }
    SUBCASE("Hermitian symmetry is preserved by real operators") {
        // omega is odd and real, so only its exponential is a real operator.
        const SpectralField s = forward_transform(test::random_field(g, 8));
        for (auto kind : {MultiplierKind::m1, MultiplierKind::m2, MultiplierKind::ddx, MultiplierKind::ddy,
                          MultiplierKind::laplacian, MultiplierKind::poisson_dx}) {
            CHECK(apply_multiplier(s, make_multiplier(kind, g)).hermitian_defect() < 1e-12);
        }
    }
    SUBCASE("grid mismatch") {
        const SpectralField s(g);
        CHECK_THROWS_AS(apply_multiplier(s, make_multiplier(MultiplierKind::m1, Grid2D(16, 16, 4.0, 3.0))), Error);
    }
}

TEST_CASE("Poisson consistency for mean-zero fields") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Grid2D g(32, 32, 5.0, 7.0);
        RealField u = test::random_field(g, seed);
        SpectralField s = forward_transform(u);
        s(0, 0) = 0.0;
        u = inverse_transform(s);
        const RealField phi = solve_potential(u);
        CHECK(poisson_residual(u, phi) <= 1e-10 * l2_norm(u));
    }
}

TEST_CASE("dealias") {
    const Grid2D g(32, 32, 1.0, 1.0);
    SUBCASE("threshold arithmetic") {
        SpectralField s(g);
        s.mode(15, 0) = 1.0;
        s.mode(-15, 0) = 1.0;
        s.mode(10, 3) = 1.0;
        s.mode(-10, -3) = 1.0;
        const SpectralField d = dealias(s);
        CHECK(d.mode(15, 0) == Complex(0.0));
        CHECK(d.mode(10, 3) == Complex(1.0));
    }
    SUBCASE("fraction one keeps everything but Nyquist") {
        SpectralField s = forward_transform(test::random_field(g, 4));
        SpectralField d = dealias(s, 1.0);
        for (int i = 0; i < g.nx(); ++i) {
            for (int j = 0; j < g.ny(); ++j) {
                if (!g.nyquist(i, j)) CHECK(d(i, j) == s(i, j));
            }
        }
    }
    SUBCASE("projection") {
        const SpectralField s = forward_transform(test::random_field(g, 6));
        const SpectralField d = dealias(s);
        CHECK(l2_norm(d) <= l2_norm(s));
        CHECK(l2_norm(dealias(d) - d) == 0.0);
    }
    CHECK_THROWS_AS(dealias(SpectralField(g), 0.0), Error);
}
