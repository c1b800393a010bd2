// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <random>
#include <string>
#include <unistd.h>
#include <vector>

#include "semzk/config.hpp"
#include "semzk/dynamics.hpp"
#include "semzk/integrators.hpp"
#include "semzk/littlewood_paley.hpp"
#include "semzk/norms.hpp"
#include "semzk/probes.hpp"
#include "semzk/scenarios.hpp"
#include "semzk/snapshot.hpp"
#include "semzk/spectral.hpp"
#include "test_util.hpp"

using namespace semzk;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::printf("%s  %2d %-34s %s [%.2f s of %.0f s%s]\n", pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs,
                budget_s, in_time ? "" : ", over budget");
    std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

RealField mean_free(RealField u) {
    SpectralField s = forward_transform(u);
    s(0, 0) = 0.0;
    return inverse_transform(s);
}

// ---- 1D KdV oracle, u_t + u_xxx + u u_x = 0, independent of the library ----

using C = std::complex<double>;

void fft(std::vector<C>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * kPi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        const C w(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            C wk(1.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const C x = a[i + k], y = a[i + k + len / 2] * wk;
                a[i + k] = x + y;
                a[i + k + len / 2] = x - y;
                wk *= w;
            }
        }
    }
    if (inverse) {
        for (C& v : a) v /= static_cast<double>(n);
    }
}

// Integrating-factor RK4 in Fourier space with 2/3 truncation of the product.
std::vector<double> kdv_oracle(const std::vector<double>& u0, double lx, double T, int steps) {
    const std::size_t n = u0.size();
    std::vector<double> k(n);
    std::vector<bool> keep(n);
    for (std::size_t i = 0; i < n; ++i) {
        const long m = i < n / 2 ? static_cast<long>(i) : static_cast<long>(i) - static_cast<long>(n);
        k[i] = 2.0 * kPi * static_cast<double>(m) / lx;
        keep[i] = std::abs(m) < static_cast<long>(n) / 3 && i != n / 2;
    }
    std::vector<C> v(u0.begin(), u0.end());
    fft(v, false);
    const double dt = T / steps;
    // u_hat' = i k^3 u_hat - (i k / 2) (u^2)_hat
    auto nonlinear = [&](const std::vector<C>& w_hat) {
        std::vector<C> u = w_hat;
        fft(u, true);
        for (C& x : u) x = C(x.real() * x.real(), 0.0);
        fft(u, false);
        std::vector<C> out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = keep[i] ? C(0.0, -0.5 * k[i]) * u[i] : C(0.0);
        return out;
    };
    auto prop = [&](const std::vector<C>& w, double t) {
        std::vector<C> out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = w[i] * std::exp(C(0.0, k[i] * k[i] * k[i] * t));
        return out;
    };
    auto axpy = [](std::vector<C> x, const std::vector<C>& y, double a) {
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += a * y[i];
        return x;
    };
    for (int s = 0; s < steps; ++s) {
        const std::vector<C> k1 = nonlinear(v);
        const std::vector<C> half = prop(v, 0.5 * dt);
        const std::vector<C> k2 = nonlinear(prop(axpy(v, k1, 0.5 * dt), 0.5 * dt));
        const std::vector<C> k3 = nonlinear(axpy(half, k2, 0.5 * dt));
        const std::vector<C> k4 = nonlinear(axpy(prop(v, dt), prop(k3, 0.5 * dt), dt));
        const std::vector<C> e1 = prop(k1, dt);
        const std::vector<C> e23 = prop(axpy(k2, k3, 1.0), 0.5 * dt);
        std::vector<C> next = prop(v, dt);
        for (std::size_t i = 0; i < n; ++i) next[i] += dt / 6.0 * (e1[i] + 2.0 * e23[i] + k4[i]);
        v = std::move(next);
    }
    fft(v, true);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = v[i].real();
    return out;
}

std::string read_bytes(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

int main() {
    std::printf("semzk acceptance\n");

    criterion(1, "poisson identity", 5.0, [] {
        double worst = 0.0;
        for (int n : {32, 64}) {
            const Grid2D g(n, n, 2.0 * kPi, 2.0 * kPi);
            for (std::uint64_t seed = 0; seed < 100; ++seed) {
                const RealField u = mean_free(test::random_field(g, 1000 * n + seed));
                worst = std::max(worst, poisson_residual(u, solve_potential(u)) / l2_norm(u));
            }
        }
        return Outcome{worst <= 1e-10, fmt("max residual / ||u|| = %.2e", worst)};
    });

    criterion(2, "multiplier bounds", 1.0, [] {
        bool ok = true;
        double m1_axis = 0.0, m2_diag = 0.0;
        for (const Grid2D& g : {Grid2D(64, 64, 2.0 * kPi, 2.0 * kPi), Grid2D(128, 32, 10.0, 3.0)}) {
            const MultiplierTable m1 = make_multiplier(MultiplierKind::m1, g);
            const MultiplierTable m2 = make_multiplier(MultiplierKind::m2, g);
            for (int i = 0; i < g.nx(); ++i) {
                for (int j = 0; j < g.ny(); ++j) {
                    const double a = std::abs(m1(i, j)), b = std::abs(m2(i, j));
                    ok = ok && a <= 1.0 && b <= 0.5;
                    if (g.lx() == g.ly()) {
                        if (g.mode_y(j) == 0 && g.mode_x(i) != 0) m1_axis = std::max(m1_axis, a);
                        if (std::abs(g.mode_x(i)) == std::abs(g.mode_y(j)) && g.mode_x(i) != 0) m2_diag = std::max(m2_diag, b);
                    }
                }
            }
        }
        ok = ok && m1_axis == 1.0 && std::abs(m2_diag - 0.5) < 1e-15;
        return Outcome{ok, fmt("|m1| <= 1 (axis max %.17g)", m1_axis) + fmt(", |m2| <= 1/2 (diagonal max %.17g)", m2_diag)};
    });

    criterion(3, "unitarity and group law", 5.0, [] {
        const std::vector<double> times = {-2.0, -1.0, 0.5, 1.0, 2.0};
        double unit = 0.0, group = 0.0, inverse = 0.0;
        for (const Grid2D& g : {Grid2D(16, 16, 2.0 * kPi, 2.0 * kPi), Grid2D(32, 16, 8.0 * kPi, 4.0 * kPi)}) {
            for (std::uint64_t seed = 0; seed < 10; ++seed) {
                const SpectralField f = forward_transform(test::random_field(g, 50 + seed));
                const double n = l2_norm(f);
                for (double s : times) {
                    const SpectralField us = propagator_apply(f, s);
                    unit = std::max(unit, std::abs(l2_norm(us) - n) / n);
                    inverse = std::max(inverse, l2_norm(propagator_apply(us, -s) - f) / n);
                    for (double t : times) {
                        group = std::max(group, l2_norm(propagator_apply(us, t) - propagator_apply(f, s + t)) / n);
                    }
                }
            }
        }
        const bool ok = unit <= 1e-12 && group <= 1e-12 && inverse <= 1e-12;
        return Outcome{ok, fmt("norm %.1e", unit) + fmt(", U(t)U(s) - U(t+s) %.1e", group) +
                               fmt(", U(-t)U(t) - I %.1e", inverse)};
    });

    criterion(4, "zk line soliton benchmark", 120.0, [] {
        RunConfig c;
        c.equation = "zk";
        c.nx = 512;
        c.ny = 16;
        c.lx = 80.0;
        c.T = 1.0;
        c.dt = 0.005;
        c.diagnostics_stride = 10;
        const SolitonBenchReport r = run_soliton_benchmark(c);
        const double d2 = r.run.max_drift_I2();
        const bool ok = r.shape_error <= 1e-6 && r.crest_error <= r.cell && d2 <= 1e-8 &&
                        std::abs(r.mass_per_length - 12.0) <= 1e-10 * 12.0 &&
                        std::abs(r.energy_per_length - 24.0) <= 1e-10 * 24.0;
        return Outcome{ok, fmt("shape %.2e", r.shape_error) + fmt(", crest %.3f cells", r.crest_error / r.cell) +
                               fmt(", I2 drift %.1e", d2) + fmt(", I1/ly %.12f", r.mass_per_length) +
                               fmt(", I2/ly %.12f", r.energy_per_length)};
    });

    criterion(5, "potential derivative is the soliton", 1.0, [] {
        double worst = 0.0, formula = 0.0;
        for (double omega : {0.25, 1.0, 2.5}) {
            const SolitonParams p{omega, 0.0};
            const double k = std::sqrt(omega) / 2.0;
            for (int m = 0; m < 10000; ++m) {
                const double s = -40.0 + 80.0 * m / 9999.0;
                const double sech = 1.0 / std::cosh(k * s);
                worst = std::max(worst, std::abs(potential_dx(p, s) - soliton_value(p, s)));
                formula = std::max(formula, std::abs(soliton_value(p, s) - 3.0 * omega * sech * sech));
                formula = std::max(formula, std::abs(potential_value(p, s) - 6.0 * std::sqrt(omega) * std::tanh(k * s)));
            }
        }
        return Outcome{worst <= 1e-12 && formula <= 1e-12,
                       fmt("max |psi_x - phi| = %.1e", worst) + fmt(", closed forms %.1e", formula)};
    });

    criterion(6, "kdv reduction", 60.0, [] {
        const Grid2D g(256, 8, 80.0, 2.0 * kPi);
        RealField u0 = soliton_profile({1.0, 30.0}, 0.0, g);
        u0 = mean_free(u0);
        const RealField u = evolve(u0, Equation::sem(), 0.5, 0.005).fields.back();
        std::vector<double> line(static_cast<std::size_t>(g.nx()));
        for (int i = 0; i < g.nx(); ++i) line[i] = u0(i, 0);
        const std::vector<double> ref = kdv_oracle(line, g.lx(), 0.5, 1000);
        double num = 0.0, den = 0.0, ydev = 0.0;
        for (int i = 0; i < g.nx(); ++i) {
            for (int j = 0; j < g.ny(); ++j) {
                num += (u(i, j) - ref[i]) * (u(i, j) - ref[i]);
                den += ref[i] * ref[i];
                ydev = std::max(ydev, std::abs(u(i, j) - u(i, 0)));
            }
        }
        const double err = std::sqrt(num / den);
        return Outcome{err <= 1e-5, fmt("relative L2 gap to 1D oracle %.2e", err) + fmt(", y-variation %.1e", ydev)};
    });

    criterion(7, "picard contraction", 120.0, [] {
        RunConfig c;
        c.equation = "sem";
        c.initial = "random";
        c.nx = c.ny = 32;
        c.lx = c.ly = 2.0 * kPi;
        c.T = 0.1;
        c.amplitude = 0.01;
        c.band = 3;
        c.picard_tol = 1e-12;
        const PicardDemoReport r = run_picard_demo(c);
        double worst = 0.0;
        for (double q : r.report.ratios) worst = std::max(worst, q);
        const double gap = r.report.distances.back();
        const RealField u0 = initial_field(c);
        const RealField marched = evolve(u0, c.make_equation(), c.T, 1e-3).fields.back();
        const double diff = l2_norm(r.path.fields.back() - marched) / l2_norm(marched);
        const bool ok = r.report.converged && worst < 1.0 && gap <= 1e-8 && diff <= 1e-6;
        return Outcome{ok, std::to_string(r.report.iterates) + " iterates" + fmt(", max ratio %.3f", worst) +
                               fmt(", final gap %.1e", gap) + fmt(", vs IFRK4 %.1e relative", diff)};
    });

    criterion(8, "ifrk4 order", 60.0, [] {
        const Grid2D g(32, 32, 16.0 * kPi, 16.0 * kPi);
        RealField u0 = test::band_limited_field(g, 3, 3, 32);
        double umax = 0.0;
        for (double v : u0.values()) umax = std::max(umax, std::abs(v));
        u0 *= 1.0 / umax;
        auto run = [&](double dt) { return evolve(u0, Equation::zk(), 4.0, dt).fields.back(); };
        const RealField a = run(0.2), b = run(0.1), c = run(0.05);
        const double p = std::log2(l2_norm(a - b) / l2_norm(b - c));
        return Outcome{std::abs(p - 4.0) <= 0.2, fmt("self-convergence exponent %.3f", p)};
    });

    criterion(9, "littlewood-paley partition", 5.0, [] {
        double worst = 0.0;
        for (const Grid2D& g : {Grid2D(64, 64, 2.0 * kPi, 2.0 * kPi), Grid2D(128, 64, 6.0, 17.0)}) {
            for (std::uint64_t seed = 0; seed < 5; ++seed) {
                const SpectralField f = forward_transform(test::band_limited_field(g, 20, 20, seed, false));
                SpectralField sum(g);
                for (int n = 1; n <= 256; n *= 2) sum += project_PN(f, n);
                worst = std::max(worst, l2_norm(sum - f) / l2_norm(f));
            }
        }
        return Outcome{worst <= 1e-12, fmt("relative reconstruction error %.1e", worst)};
    });

    criterion(10, "block bilinear probes", 300.0, [] {
        const ProbeReport r = probe_bilinear_scan(default_bilinear_lattice(), {1, 2, 4, 8}, 10, 1);
        const ScalingFit* f = r.fit("N_max", "separated");
        if (f == nullptr) return Outcome{false, "no separated-regime fit"};
        const bool ok = r.all_finite() && f->exponent <= 0.1;
        return Outcome{ok, std::to_string(r.trials.size()) + " trials, finite " + (r.all_finite() ? "yes" : "no") +
                               fmt(", max ratio %.3f", r.max_ratio()) +
                               fmt(", separated N_max exponent %.3f", f->exponent) + fmt(" +- %.3f", f->std_error)};
    });

    criterion(11, "linear estimate probes", 300.0, [] {
        bool ok = true;
        std::string detail;
        for (const char* kind : {"strichartz", "kato", "maximal"}) {
            RunConfig c;
            c.nx = c.ny = 32;
            c.lx = c.ly = 2.0 * kPi;
            c.T = 1.0;
            c.trials = 20;
            c.band = 3;
            c.probe_kind = kind;
            const ProbeRun r = run_probe_linear(c);
            const double change = r.refinement_change.value_or(INFINITY);
            ok = ok && change <= 0.2 && r.base.all_finite();
            detail += std::string(detail.empty() ? "" : ", ") + kind + fmt(" %.3f", r.base.max_ratio()) +
                      fmt(" -> %.3f", r.refined->max_ratio()) + fmt(" (%.1f%%)", 100.0 * change);
        }
        return Outcome{ok, detail};
    });

    criterion(12, "transverse instability", 300.0, [] {
        RunConfig c;
        c.equation = "sem_on_soliton";
        c.initial = "zero";
        c.nx = 128;
        c.ny = 16;
        c.lx = 80.0;
        c.perturbation.shape = PerturbationShape::sinusoidal_y;
        c.perturbation.ky = 0.2;
        c.ly = 2.0 * kPi / c.perturbation.ky;
        c.T = 800.0;
        c.dt = 0.05;
        c.diagnostics_stride = 200;
        c.perturbation.amplitude = 1e-4;
        const InstabilityReport a = run_instability(c);
        c.perturbation.amplitude = 5e-5;
        const InstabilityReport b = run_instability(c);
        if (!a.sigma || !b.sigma) return Outcome{false, "growth window too short to fit"};
        const double rel = std::abs(*a.sigma - *b.sigma) / std::abs(*a.sigma);
        const bool ok = *a.sigma > 0.0 && *b.sigma > 0.0 && rel <= 0.1;
        return Outcome{ok, fmt("ky 0.2: sigma(1e-4) = %.5f", *a.sigma) + fmt(", sigma(5e-5) = %.5f", *b.sigma) +
                               fmt(", relative gap %.2e", rel)};
    });

    criterion(13, "determinism and restart", 60.0, [] {
        const fs::path root = fs::temp_directory_path() / ("semzk-accept-" + std::to_string(::getpid()));
        fs::remove_all(root);
        RunConfig c;
        c.equation = "sem";
        c.initial = "random";
        c.nx = c.ny = 64;
        c.lx = c.ly = 2.0 * kPi;
        c.amplitude = 0.5;
        c.band = 8;
        c.seed = 7;
        c.T = 1.0;
        c.dt = 0.005;
        c.snapshot_stride = 100;
        std::string bytes[2];
        for (int k = 0; k < 2; ++k) {
            const fs::path dir = root / std::to_string(k);
            fs::create_directories(dir);
            const SimulationResult r = simulate(c, dir);
            bytes[k] = r.diagnostics_csv() + read_bytes(dir / "step_00000100.bin") + read_bytes(dir / "final.bin");
        }
        RunConfig pc;
        pc.nx = pc.ny = 32;
        pc.lx = pc.ly = 2.0 * kPi;
        pc.trials = 5;
        pc.band = 3;
        pc.refine = false;
        const bool probes_same = run_probe_linear(pc).base.csv() == run_probe_linear(pc).base.csv();

        RunConfig half = c;
        half.T = 0.5;
        fs::create_directories(root / "h");
        simulate(half, root / "h");
        RunConfig rest = half;
        rest.initial = "snapshot";
        rest.restart = (root / "h" / "final.bin").string();
        const RealField split = simulate(rest).final_state;
        const RealField whole = read_snapshot(root / "0" / "final.bin").field;
        const double gap = l2_norm(split - whole) / l2_norm(whole);
        fs::remove_all(root);
        const bool ok = bytes[0] == bytes[1] && probes_same && gap <= 1e-10;
        return Outcome{ok, std::string("outputs identical ") + (bytes[0] == bytes[1] ? "yes" : "no") +
                               ", probe CSV identical " + (probes_same ? "yes" : "no") +
                               fmt(", split vs single run %.1e", gap)};
    });

    std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
    return failures == 0 ? 0 : 1;
}
