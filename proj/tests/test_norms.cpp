#include <doctest.h>

#include "semzk/error.hpp"
#include "semzk/norms.hpp"
#include "test_util.hpp"

using namespace semzk;
using semzk::test::kPi;

namespace {

TrajectoryPath random_path(const Grid2D& g, double T, int nodes, std::uint64_t seed) {
    TrajectoryPath p(g);
    for (int m = 0; m < nodes; ++m) p.push(T * m / (nodes - 1), test::random_field(g, seed + m));
    return p;
}

}  // namespace

TEST_CASE("conserved quantities") {
    const Grid2D g(32, 16, 2 * kPi, 2 * kPi);
    CHECK(conserved_I1(RealField(g)) == 0.0);
    CHECK(conserved_I2(RealField(g)) == 0.0);
    RealField one(g);
    for (double& v : one.values()) v = 1.0;
    CHECK(conserved_I1(one) == doctest::Approx(4 * kPi * kPi).epsilon(1e-14));

    const double a = 0.3;
    const RealField c = test::sample(g, [&](double x, double y) { return a * std::cos(2 * x + y); });
    CHECK(conserved_I2(c) == doctest::Approx(a * a * g.lx() * g.ly() / 2).epsilon(1e-13));

    const Grid2D wide(512, 8, 80.0, 3.0);
    const RealField phi = soliton_profile(SolitonParams{1.0, 40.0}, 0.0, wide);
    CHECK(std::abs(conserved_I1(phi) / wide.ly() - 12.0) < 1e-10);
    CHECK(std::abs(conserved_I2(phi) / wide.ly() - 24.0) < 1e-10);
    // Scaling with the speed: 12 sqrt(omega) and 24 omega^{3/2}.
    const RealField phi4 = soliton_profile(SolitonParams{4.0, 40.0}, 0.0, wide);
    CHECK(std::abs(conserved_I1(phi4) / wide.ly() - 24.0) < 1e-10);
    CHECK(std::abs(conserved_I2(phi4) / wide.ly() - 192.0) < 1e-9);
}

TEST_CASE("sobolev_norm") {
    const Grid2D g(32, 32, 2 * kPi, 2 * kPi);
    const RealField u = test::random_field(g, 3);
    CHECK(sobolev_norm(u, 0.0) == doctest::Approx(l2_norm(u)).epsilon(1e-13));
    CHECK(conserved_I2(u) == doctest::Approx(std::pow(sobolev_norm(u, 0.0), 2)).epsilon(1e-12));

    SUBCASE("single mode bracket") {
        SpectralField s(g);
        s.mode(1, 0) = 1.0;
        s.mode(-1, 0) = 1.0;
        s *= 1.0 / l2_norm(s);
        CHECK(sobolev_norm(s, 1.0) == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(sobolev_norm(s, 2.5) == doctest::Approx(std::pow(2.0, 2.5)).epsilon(1e-14));
    }
    SUBCASE("monotone in s") {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const RealField f = test::random_field(g, seed);
            double prev = 0.0;
            for (double s = 0.0; s <= 3.0; s += 0.25) {
                const double n = sobolev_norm(f, s);
                CHECK(n >= prev);
                prev = n;
            }
        }
    }
    SUBCASE("brute-force oracle") {
        const Grid2D h(16, 16, 3.0, 5.0);
        for (double s : {0.0, 0.6, 1.0, 2.0}) {
            const RealField f = test::band_limited_field(h, 5, 5, 17);
            // Physical-space evaluation of the weighted spectrum via explicit DFT sums.
            double sum = 0.0;
            for (int mx = -7; mx <= 7; ++mx) {
                for (int my = -7; my <= 7; ++my) {
                    Complex c = 0.0;
                    for (int i = 0; i < h.nx(); ++i) {
                        for (int j = 0; j < h.ny(); ++j) {
                            const double arg = -2 * kPi * (double(mx) * i / h.nx() + double(my) * j / h.ny());
                            c += f(i, j) * std::exp(Complex(0.0, arg));
                        }
                    }
                    c /= double(h.size());
                    const double k = std::hypot(2 * kPi * mx / h.lx(), 2 * kPi * my / h.ly());
                    sum += std::pow(1.0 + k, 2 * s) * std::norm(c);
                }
            }
            CHECK(sobolev_norm(f, s) == doctest::Approx(std::sqrt(h.area() * sum)).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(sobolev_norm(u, -0.5), Error);
}

TEST_CASE("mixed norm descriptor") {
    const auto d = MixedNormDescriptor::parse("x:inf, y:2,T:2");
    REQUIRE(d.terms.size() == 3);
    CHECK(d.terms[0].axis == Axis::x);
    CHECK(d.terms[0].exponent == MixedNormDescriptor::kInf);
    CHECK(d.str() == "x:inf,y:2,T:2");
    CHECK(d.has_time());
    CHECK_FALSE(MixedNormDescriptor::parse("y:1,x:4").has_time());
    CHECK_THROWS_AS(MixedNormDescriptor::parse("x:5,y:2"), Error);
    CHECK_THROWS_AS(MixedNormDescriptor::parse("x:2,x:2"), Error);
    CHECK_THROWS_AS(MixedNormDescriptor::parse("x:2,z:2"), Error);
    CHECK_THROWS_AS(MixedNormDescriptor::parse("x:2"), Error);
    CHECK_THROWS_AS(MixedNormDescriptor::parse("x2,y:2"), Error);
    CHECK_THROWS_AS(MixedNormDescriptor::parse("x:two,y:2"), Error);
}

TEST_CASE("mixed_norm") {
    const Grid2D g(16, 8, 3.0, 2.0);
    const double T = 1.5;
    SUBCASE("zero path") {
        const TrajectoryPath p = make_uniform_path(g, T, 7);
        for (const char* text : {"x:inf,y:2,T:2", "T:1,x:3,y:inf", "y:4,T:inf,x:1"}) {
            CHECK(mixed_norm(p, MixedNormDescriptor::parse(text)) == 0.0);
        }
    }
    SUBCASE("constant field") {
        TrajectoryPath p(g);
        RealField c(g);
        for (double& v : c.values()) v = -2.5;
        for (int m = 0; m < 9; ++m) p.push(T * m / 8, c);
        CHECK(mixed_norm(p, MixedNormDescriptor::parse("x:inf,y:2,T:2")) ==
              doctest::Approx(2.5 * std::sqrt(g.ly() * T)).epsilon(1e-14));
    }
    SUBCASE("all-two norm is the flat space-time L2") {
        const TrajectoryPath p = random_path(g, T, 11, 5);
        double sum = 0.0;
        for (std::size_t m = 0; m < p.size(); ++m) {
            const double w = (m == 0 || m + 1 == p.size()) ? 0.5 * p.spacing() : p.spacing();
            sum += w * conserved_I2(p.fields[m]);
        }
        const double flat = std::sqrt(sum);
        for (const char* text : {"x:2,y:2,T:2", "T:2,y:2,x:2", "y:2,T:2,x:2"}) {
            CHECK(mixed_norm(p, MixedNormDescriptor::parse(text)) == doctest::Approx(flat).epsilon(1e-12));
        }
    }
    SUBCASE("axis order matters for unequal exponents") {
        const TrajectoryPath p = random_path(g, T, 11, 6);
        // Oracle for L^inf_x L^1_y L^4_T with explicit loops.
        double outer = 0.0;
        for (int i = 0; i < g.nx(); ++i) {
            double ysum = 0.0;
            for (int j = 0; j < g.ny(); ++j) {
                double tsum = 0.0;
                for (std::size_t m = 0; m < p.size(); ++m) {
                    const double w = (m == 0 || m + 1 == p.size()) ? 0.5 * p.spacing() : p.spacing();
                    tsum += w * std::pow(std::abs(p.fields[m](i, j)), 4);
                }
                ysum += g.dy() * std::pow(tsum, 0.25);
            }
            outer = std::max(outer, ysum);
        }
        CHECK(mixed_norm(p, MixedNormDescriptor::parse("x:inf,y:1,T:4")) == doctest::Approx(outer).epsilon(1e-13));
        // Minkowski: moving the sup inside can only increase the value.
        CHECK(mixed_norm(p, MixedNormDescriptor::parse("y:1,T:4,x:inf")) >= outer * (1 - 1e-13));
    }
    SUBCASE("time slice") {
        const RealField u = test::random_field(g, 9);
        CHECK(mixed_norm(u, MixedNormDescriptor::parse("x:2,y:2")) == doctest::Approx(l2_norm(u)).epsilon(1e-13));
        double m = 0.0;
        for (double v : u.values()) m = std::max(m, std::abs(v));
        CHECK(mixed_norm(u, MixedNormDescriptor::parse("y:inf,x:inf")) == m);
        CHECK_THROWS_AS(mixed_norm(u, MixedNormDescriptor::parse("x:2,y:2,T:2")), Error);
    }
    SUBCASE("space-time descriptor needs T") {
        const TrajectoryPath p = make_uniform_path(g, T, 4);
        CHECK_THROWS_AS(mixed_norm(p, MixedNormDescriptor::parse("x:2,y:2")), Error);
    }
}

TEST_CASE("diagnostics record") {
    const Grid2D g(16, 16, 2 * kPi, 2 * kPi);
    const RealField u = test::band_limited_field(g, 3, 3, 12);
    const DiagnosticsRecord r = make_diagnostics(0.5, u, {0.0, 1.0, 2.0});
    const auto header = r.csv_header();
    REQUIRE(header.size() == 6);
    CHECK(header[0] == "time");
    CHECK(header[1] == "I1");
    CHECK(header[2] == "I2");
    CHECK(header[3] == "H1");
    CHECK(header[4] == "H0");
    CHECK(header[5] == "H2");
    CHECK(r.hs[1].second == doctest::Approx(l2_norm(u)));
    const std::string row = r.csv_row();
    CHECK(row.rfind("0.5,", 0) == 0);
    CHECK(std::count(row.begin(), row.end(), ',') == 5);
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}
