#include "semzk/probes.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <json.hpp>

#include "semzk/error.hpp"
#include "semzk/littlewood_paley.hpp"
#include "semzk/norms.hpp"

namespace semzk {

double ProbeReport::max_ratio() const {
    double m = 0.0;
    for (const ProbeTrial& t : trials) {
        if (t.ratio > 0.0) m = std::max(m, t.ratio);
    }
    return m;
}

bool ProbeReport::all_finite() const {
    return std::all_of(trials.begin(), trials.end(), [](const ProbeTrial& t) {
        return std::isfinite(t.ratio) && std::isfinite(t.lhs) && std::isfinite(t.rhs) && t.ratio >= 0.0;
    });
}

const ScalingFit* ProbeReport::fit(const std::string& variable, const std::string& regime) const {
    for (const ScalingFit& f : fits) {
        if (f.variable == variable && f.regime == regime) return &f;
    }
    return nullptr;
}

std::string ProbeReport::csv() const {
    std::string out = "seed";
    if (!trials.empty()) {
        for (const auto& [k, v] : trials.front().params) out += "," + k;
    }
    out += ",lhs,rhs,ratio\n";
    for (const ProbeTrial& t : trials) {
        out += std::to_string(t.seed);
        for (const auto& [k, v] : t.params) out += "," + format_double(v);
        out += "," + format_double(t.lhs) + "," + format_double(t.rhs) + "," + format_double(t.ratio) + "\n";
    }
    return out;
}

std::string ProbeReport::summary_json(const std::string& config_json) const {
    nlohmann::ordered_json j;
    j["estimate"] = estimate;
    j["trials"] = trials.size();
    j["max_ratio"] = max_ratio();
    j["all_finite"] = all_finite();
    j["fits"] = nlohmann::ordered_json::array();
    for (const ScalingFit& f : fits) {
        j["fits"].push_back({{"variable", f.variable},
                             {"regime", f.regime},
                             {"exponent", f.exponent},
                             {"std_error", f.std_error},
                             {"samples", f.samples}});
    }
    std::vector<std::uint64_t> seeds;
    for (const ProbeTrial& t : trials) seeds.push_back(t.seed);
    j["seeds"] = seeds;
    j["notes"] = notes;
    j["config"] = nlohmann::ordered_json::parse(config_json);
    return j.dump(2) + "\n";
}

std::vector<std::pair<double, double>> least_squares_fit(const std::vector<std::vector<double>>& x,
                                                         const std::vector<double>& y) {
    const std::size_t n = y.size();
    if (n == 0 || x.size() != n) throw Error("least squares needs matching, non-empty data");
    const std::size_t p = x.front().size();
    if (n <= p + 1) throw Error("least squares needs more samples than parameters");
    Eigen::MatrixXd a(n, p + 1);
    Eigen::VectorXd b(n);
    for (std::size_t r = 0; r < n; ++r) {
        a(r, 0) = 1.0;
        for (std::size_t c = 0; c < p; ++c) a(r, c + 1) = x[r][c];
        b(r) = y[r];
    }
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    if (qr.rank() < static_cast<Eigen::Index>(p + 1)) throw Error("least squares design is rank deficient");
    const Eigen::VectorXd coef = qr.solve(b);
    const Eigen::VectorXd resid = b - a * coef;
    const double sigma2 = resid.squaredNorm() / static_cast<double>(n - p - 1);
    const Eigen::MatrixXd cov = sigma2 * (a.transpose() * a).inverse();
    std::vector<std::pair<double, double>> out;
    for (std::size_t c = 0; c < p; ++c) out.emplace_back(coef(c + 1), std::sqrt(std::max(0.0, cov(c + 1, c + 1))));
    return out;
}

// ---------------------------------------------------------------------------
// Bilinear

bool frequencies_separated(int n1, int n2) { return n2 >= 4 * n1 || n1 >= 4 * n2; }

double bilinear_bound(int n1, int l1, int n2, int l2) {
    const double nmin = std::min(n1, n2), nmax = std::max(n1, n2);
    const double lmin = std::min(l1, l2), lmax = std::max(l1, l2);
    if (frequencies_separated(n1, n2)) return std::sqrt(nmin) / nmax * std::sqrt(lmax * lmin);
    return nmin * std::sqrt(lmin);
}

ProbeTrial bilinear_trial(const SpaceTimeField& u, const SpaceTimeField& v, int n1, int l1, int n2, int l2) {
    const SpaceTimeField a = project_QL(project_PN(u, n1), l1);
    const SpaceTimeField b = project_QL(project_PN(v, n2), l2);
    ProbeTrial t;
    t.params = {{"N1", n1}, {"L1", l1}, {"N2", n2}, {"L2", l2}, {"separated", frequencies_separated(n1, n2) ? 1.0 : 0.0}};
    t.lhs = l2_norm(multiply(a, b));
    t.rhs = bilinear_bound(n1, l1, n2, l2) * l2_norm(a) * l2_norm(b);
    t.ratio = t.lhs == 0.0 ? 0.0 : t.lhs / t.rhs;
    return t;
}

ProbeReport probe_block_bilinear(const SpaceTimeLattice& lattice, int n1, int l1, int n2, int l2, int trials,
                                 std::uint64_t seed) {
    if (trials < 1) throw Error("probe needs at least one trial");
    ProbeReport report;
    report.estimate = "bilinear";
    for (int k = 0; k < trials; ++k) {
        const std::uint64_t s = seed + 2 * static_cast<std::uint64_t>(k);
        ProbeTrial t = bilinear_trial(random_block(lattice, n1, l1, s), random_block(lattice, n2, l2, s + 1),
                                      n1, l1, n2, l2);
        t.seed = s;
        report.trials.push_back(std::move(t));
    }
    return report;
}

namespace {

double param(const ProbeTrial& t, const std::string& name) {
    for (const auto& [k, v] : t.params) {
        if (k == name) return v;
    }
    throw Error("probe trial has no parameter " + name);
}

void add_bilinear_fits(ProbeReport& report) {
    struct Sample {
        double nmax, nmin, lmax, lmin, y;
        bool separated;
    };
    std::vector<Sample> samples;
    for (const ProbeTrial& t : report.trials) {
        if (!(t.ratio > 0.0) || !std::isfinite(t.ratio)) continue;
        const double n1 = param(t, "N1"), n2 = param(t, "N2"), l1 = param(t, "L1"), l2 = param(t, "L2");
        samples.push_back({std::log(std::max(n1, n2)), std::log(std::min(n1, n2)), std::log(std::max(l1, l2)),
                           std::log(std::min(l1, l2)), std::log(t.ratio), param(t, "separated") > 0.5});
    }
    auto fit = [&](bool separated_only, const std::string& regime) {
        std::vector<std::vector<double>> x;
        std::vector<double> x1;
        std::vector<double> y;
        for (const Sample& s : samples) {
            if (separated_only && !s.separated) continue;
            x.push_back({s.nmax, s.nmin, s.lmax, s.lmin});
            y.push_back(s.y);
        }
        try {
            const auto coef = least_squares_fit(x, y);
            const char* names[4] = {"N_max", "N_min", "L_max", "L_min"};
            for (int c = 0; c < 4; ++c) {
                report.fits.push_back({names[c], coef[c].first, coef[c].second, y.size(), regime});
            }
            std::vector<std::vector<double>> xn;
            for (const auto& row : x) xn.push_back({row[0]});
            const auto pooled = least_squares_fit(xn, y);
            report.fits.push_back({"N_max", pooled[0].first, pooled[0].second, y.size(), regime + "-pooled"});
        } catch (const Error& e) {
            report.notes.push_back("fit '" + regime + "' skipped: " + e.what());
        }
    };
    fit(true, "separated");
    fit(false, "all");
}

}  // namespace

ProbeReport probe_bilinear_scan(const SpaceTimeLattice& lattice, const std::vector<int>& dyadics, int trials,
                                std::uint64_t seed) {
    if (trials < 1) throw Error("probe needs at least one trial");
    for (int d : dyadics) {
        if (!is_dyadic(d)) throw Error("probe scales must be dyadic");
    }
    ProbeReport report;
    report.estimate = "bilinear-scan";
    std::uint64_t combo = 0;
    for (int n1 : dyadics) {
        for (int l1 : dyadics) {
            for (int n2 : dyadics) {
                for (int l2 : dyadics) {
                    const ProbeReport r = probe_block_bilinear(lattice, n1, l1, n2, l2, trials,
                                                               seed + 1000 * combo++);
                    report.trials.insert(report.trials.end(), r.trials.begin(), r.trials.end());
                }
            }
        }
    }
    add_bilinear_fits(report);
    return report;
}

SpaceTimeLattice default_bilinear_lattice() {
    const double two_pi = 2.0 * std::numbers::pi;
    return {Grid2D(32, 32, two_pi, two_pi), two_pi, 8192};
}

// ---------------------------------------------------------------------------
// Linear

LinearEstimate parse_linear_estimate(const std::string& name) {
    if (name == "strichartz") return LinearEstimate::strichartz;
    if (name == "kato") return LinearEstimate::kato;
    if (name == "maximal") return LinearEstimate::maximal;
    throw Error("unknown linear estimate '" + name + "'");
}

std::string to_string(LinearEstimate e) {
    switch (e) {
        case LinearEstimate::strichartz: return "strichartz";
        case LinearEstimate::kato: return "kato";
        case LinearEstimate::maximal: return "maximal";
    }
    return "unknown";
}

SpectralField random_band_limited(const Grid2D& grid, int band_limit, std::uint64_t seed) {
    if (band_limit < 1 || band_limit >= grid.nx() / 2 || band_limit >= grid.ny() / 2) {
        throw Error("band limit does not fit the grid");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    SpectralField s(grid);
    for (int mx = 0; mx <= band_limit; ++mx) {
        for (int my = -band_limit; my <= band_limit; ++my) {
            if (mx == 0 && my <= 0) continue;
            const Complex c(normal(rng), normal(rng));
            s.mode(mx, my) = c;
            s.mode(-mx, -my) = std::conj(c);
        }
    }
    return s;
}

TrajectoryPath free_path(const SpectralField& u0, double T, int nodes) {
    if (nodes < 2) throw Error("a path needs at least two nodes");
    TrajectoryPath path(u0.grid());
    for (int m = 0; m < nodes; ++m) {
        const double t = T * m / (nodes - 1);
        path.push(t, detail::inverse_unchecked(propagator_apply(u0, t)));
    }
    return path;
}

ProbeTrial linear_trial(LinearEstimate kind, const SpectralField& u0, double T, const LinearProbeOptions& opts) {
    ProbeTrial t;
    t.params = {{"nx", u0.grid().nx()}, {"ny", u0.grid().ny()}, {"T", T}, {"band_limit", opts.band_limit},
                {"time_nodes", opts.time_nodes}};
    const TrajectoryPath path = free_path(u0, T, opts.time_nodes);
    switch (kind) {
        case LinearEstimate::strichartz:
            t.lhs = mixed_norm(path, MixedNormDescriptor::parse("T:3,x:inf,y:inf"));
            t.rhs = l2_norm(u0);
            break;
        case LinearEstimate::kato: {
            const Grid2D& g = u0.grid();
            TrajectoryPath grad = free_path(apply_multiplier(u0, make_multiplier(MultiplierKind::ddx, g)), T, opts.time_nodes);
            const TrajectoryPath gy = free_path(apply_multiplier(u0, make_multiplier(MultiplierKind::ddy, g)), T, opts.time_nodes);
            for (std::size_t m = 0; m < grad.size(); ++m) {
                auto gx = grad.fields[m].values();
                auto yv = gy.fields[m].values();
                for (std::size_t n = 0; n < gx.size(); ++n) gx[n] = std::hypot(gx[n], yv[n]);
            }
            t.lhs = mixed_norm(grad, MixedNormDescriptor::parse("x:inf,y:2,T:2"));
            t.rhs = l2_norm(u0);
            break;
        }
        case LinearEstimate::maximal:
            t.lhs = mixed_norm(path, MixedNormDescriptor::parse("x:2,y:inf,T:inf"));
            t.rhs = sobolev_norm(u0, opts.sobolev_s);
            break;
    }
    t.ratio = t.lhs == 0.0 ? 0.0 : t.lhs / t.rhs;
    return t;
}

ProbeReport probe_linear_estimates(LinearEstimate kind, int trials, const Grid2D& grid, double T, std::uint64_t seed,
                                   const LinearProbeOptions& opts) {
    if (trials < 1) throw Error("probe needs at least one trial");
    if (!(T > 0.0)) throw Error("probe horizon T must be positive");
    if (kind == LinearEstimate::maximal && !(opts.sobolev_s > 0.75)) {
        throw Error("maximal-function probe needs s > 3/4");
    }
    ProbeReport report;
    report.estimate = to_string(kind);
    for (int k = 0; k < trials; ++k) {
        ProbeTrial t = linear_trial(kind, random_band_limited(grid, opts.band_limit, seed + k), T, opts);
        t.seed = seed + k;
        if (t.ratio == 0.0) report.notes.push_back("trial " + std::to_string(k) + " had zero data");
        report.trials.push_back(std::move(t));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Nonlinear and L4

SpaceTimeField random_wave_packet(const SpaceTimeLattice& lattice, int band_limit, std::uint64_t seed) {
    const Grid2D& g = lattice.grid();
    const SpectralField a = random_band_limited(g, band_limit, seed);
    struct Wave {
        Complex amp;
        double xi, mu, omega;
    };
    std::vector<Wave> waves;
    for (int mx = 0; mx <= band_limit; ++mx) {
        for (int my = -band_limit; my <= band_limit; ++my) {
            if (mx == 0 && my <= 0) continue;
            const double xi = 2.0 * std::numbers::pi * mx / g.lx();
            const double mu = 2.0 * std::numbers::pi * my / g.ly();
            waves.push_back({a.mode(mx, my), xi, mu, xi * (xi * xi + mu * mu)});
        }
    }
    const int nt = lattice.nt();
    const double centre = 0.5 * lattice.t_box();
    const double width = lattice.t_box() / 12.0;
    // The envelope spectrum exp(-tau^2 width^2 / 4) is below 1e-15 beyond 12 / width.
    double top = 0.0;
    for (const Wave& w : waves) top = std::max(top, std::abs(w.omega));
    if (top + 12.0 / width > lattice.tau(lattice.l_max())) {
        throw Error("resolution too small for the wave packet: raise nt");
    }
    std::vector<double> samples(lattice.size(), 0.0);
    std::vector<Complex> et(static_cast<std::size_t>(nt));
    for (const Wave& w : waves) {
        for (int m = 0; m < nt; ++m) {
            const double t = lattice.t(m);
            const double envelope = std::exp(-std::pow((t - centre) / width, 2));
            et[m] = 2.0 * envelope * w.amp * std::exp(Complex(0.0, w.omega * t));
        }
        for (int i = 0; i < g.nx(); ++i) {
            for (int j = 0; j < g.ny(); ++j) {
                const Complex ex = std::exp(Complex(0.0, w.xi * g.x(i) + w.mu * g.y(j)));
                double* dst = samples.data() + g.index(i, j) * nt;
                for (int m = 0; m < nt; ++m) dst[m] += (ex * et[m]).real();
            }
        }
    }
    SpaceTimeField f = from_samples(lattice, samples);
    f *= 1.0 / l2_norm(f);
    return f;
}

SpaceTimeField sem_nonlinearity(const SpaceTimeField& u) {
    const SpaceTimeLattice out = u.lattice().doubled();
    const SpaceTimeField ue = embed(u, out);
    const std::vector<double> v = to_samples(ue);
    const std::vector<double> vx = to_samples(apply_spatial(ue, MultiplierKind::ddx));
    const std::vector<double> vy = to_samples(apply_spatial(ue, MultiplierKind::ddy));
    const std::vector<double> l1 = to_samples(apply_spatial(ue, MultiplierKind::m1));
    const std::vector<double> l2 = to_samples(apply_spatial(ue, MultiplierKind::m2));
    std::vector<double> n(v.size());
    for (std::size_t k = 0; k < n.size(); ++k) n[k] = v[k] * vx[k] + vx[k] * l1[k] + vy[k] * l2[k];
    return from_samples(out, n);
}

ProbeTrial nonlinear_trial(const SpaceTimeField& u, double s, double delta) {
    if (!(s > 0.5)) throw Error("nonlinear probe needs s > 1/2");
    if (!(delta > 0.0)) throw Error("delta must be positive");
    ProbeTrial t;
    t.params = {{"nx", u.grid().nx()}, {"nt", u.lattice().nt()}, {"s", s}, {"delta", delta}};
    t.lhs = xsb_norm(sem_nonlinearity(u), s, -0.5 + 2.0 * delta);
    const double r = xsb_norm(u, s, 0.5 + delta);
    t.rhs = r * r;
    t.ratio = t.lhs == 0.0 ? 0.0 : t.lhs / t.rhs;
    return t;
}

ProbeReport probe_nonlinear_estimate(int trials, double s, const SpaceTimeLattice& lattice, std::uint64_t seed,
                                     const NonlinearProbeOptions& opts) {
    if (trials < 1) throw Error("probe needs at least one trial");
    ProbeReport report;
    report.estimate = "nonlinear";
    for (int k = 0; k < trials; ++k) {
        ProbeTrial t = nonlinear_trial(random_wave_packet(lattice, opts.band_limit, seed + k), s, opts.delta);
        t.seed = seed + k;
        report.trials.push_back(std::move(t));
    }
    return report;
}

ProbeTrial l4_trial(const SpaceTimeField& u, double delta) {
    ProbeTrial t;
    t.params = {{"nx", u.grid().nx()}, {"nt", u.lattice().nt()}, {"delta", delta}};
    t.lhs = std::sqrt(l2_norm(multiply_pseudospectral(u, u)));
    t.rhs = xsb_norm(u, 0.0, 5.0 / 6.0 + delta);
    t.ratio = t.lhs == 0.0 ? 0.0 : t.lhs / t.rhs;
    return t;
}

ProbeReport probe_l4_estimate(int trials, const SpaceTimeLattice& lattice, std::uint64_t seed,
                              const NonlinearProbeOptions& opts) {
    if (trials < 1) throw Error("probe needs at least one trial");
    ProbeReport report;
    report.estimate = "l4";
    for (int k = 0; k < trials; ++k) {
        ProbeTrial t = l4_trial(random_wave_packet(lattice, opts.band_limit, seed + k), opts.delta);
        t.seed = seed + k;
        report.trials.push_back(std::move(t));
    }
    return report;
}

}  // namespace semzk
