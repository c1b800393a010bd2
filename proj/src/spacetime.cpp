#include "semzk/spacetime.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fft.hpp"
#include "semzk/error.hpp"

namespace semzk {

SpaceTimeLattice::SpaceTimeLattice(const Grid2D& grid, double t_box, int nt)
    : grid_(grid), t_box_(t_box), nt_(nt) {
    if (!(t_box > 0.0) || !std::isfinite(t_box)) throw Error("time box length must be positive");
    if (nt < 2 || nt % 2 != 0) throw Error("number of time samples must be even and >= 2");
}

double SpaceTimeLattice::dtau() const { return 2.0 * std::numbers::pi / t_box_; }

SpaceTimeLattice SpaceTimeLattice::doubled() const {
    return {Grid2D(2 * grid_.nx(), 2 * grid_.ny(), grid_.lx(), grid_.ly()), t_box_, 2 * nt_};
}

// ---------------------------------------------------------------------------

SpaceTimeField::SpaceTimeField(const SpaceTimeLattice& lattice)
    : lattice_(lattice), bands_(lattice.grid().size()) {}

Complex SpaceTimeField::coeff(int i, int j, int l) const {
    const Band& b = band(i, j);
    if (b.empty() || l < b.lo || l > b.hi()) return 0.0;
    return b.c[l - b.lo];
}

void SpaceTimeField::add(int i, int j, int l, Complex v) {
    if (l < lattice_.l_min() || l > lattice_.l_max()) throw Error("tau index outside the lattice");
    Band& b = band(i, j);
    if (b.empty()) {
        b.lo = l;
        b.c.assign(1, 0.0);
    } else if (l < b.lo) {
        b.c.insert(b.c.begin(), static_cast<std::size_t>(b.lo - l), Complex(0.0));
        b.lo = l;
    } else if (l > b.hi()) {
        b.c.resize(static_cast<std::size_t>(l - b.lo + 1), Complex(0.0));
    }
    b.c[l - b.lo] += v;
}

void SpaceTimeField::set(int i, int j, int l, Complex v) {
    add(i, j, l, 0.0);
    Band& b = band(i, j);
    b.c[l - b.lo] = v;
}

double SpaceTimeField::hermitian_defect() const {
    const Grid2D& g = grid();
    double d = 0.0;
    for (int i = 0; i < g.nx(); ++i) {
        for (int j = 0; j < g.ny(); ++j) {
            const Band& b = band(i, j);
            const int pi = g.slot_x(-g.mode_x(i));
            const int pj = g.slot_y(-g.mode_y(j));
            for (int l = b.lo; l <= b.hi(); ++l) {
                d = std::max(d, std::abs(b.c[l - b.lo] - std::conj(coeff(pi, pj, -l))));
            }
        }
    }
    return d;
}

void SpaceTimeField::scale(const std::function<Complex(double, double, double)>& w) {
    const Grid2D& g = grid();
    for (int i = 0; i < g.nx(); ++i) {
        for (int j = 0; j < g.ny(); ++j) {
            Band& b = band(i, j);
            for (std::size_t q = 0; q < b.c.size(); ++q) {
                b.c[q] *= w(g.xi(i), g.mu(j), lattice_.tau(b.lo + static_cast<int>(q)));
            }
        }
    }
}

SpaceTimeField& SpaceTimeField::operator+=(const SpaceTimeField& other) {
    if (!(lattice_ == other.lattice_)) throw Error("space-time lattice mismatch");
    const Grid2D& g = grid();
    for (int i = 0; i < g.nx(); ++i) {
        for (int j = 0; j < g.ny(); ++j) {
            const Band& b = other.band(i, j);
            for (int l = b.lo; l <= b.hi(); ++l) add(i, j, l, b.c[l - b.lo]);
        }
    }
    return *this;
}

SpaceTimeField& SpaceTimeField::operator-=(const SpaceTimeField& other) {
    SpaceTimeField neg = other;
    neg *= -1.0;
    return *this += neg;
}

SpaceTimeField& SpaceTimeField::operator*=(Complex a) {
    for (Band& b : bands_) {
        for (Complex& c : b.c) c *= a;
    }
    return *this;
}

SpaceTimeField operator+(SpaceTimeField a, const SpaceTimeField& b) { return a += b; }
SpaceTimeField operator-(SpaceTimeField a, const SpaceTimeField& b) { return a -= b; }
SpaceTimeField operator*(Complex a, SpaceTimeField b) { return b *= a; }

double l2_norm(const SpaceTimeField& f) { return xsb_norm(f, 0.0, 0.0); }

double xsb_norm(const SpaceTimeField& f, double s, double b) {
    const Grid2D& g = f.grid();
    const SpaceTimeLattice& lat = f.lattice();
    double sum = 0.0;
    for (int i = 0; i < g.nx(); ++i) {
        const double xi = g.xi(i);
        for (int j = 0; j < g.ny(); ++j) {
            const SpaceTimeField::Band& band = f.band(i, j);
            if (band.empty()) continue;
            const double mu = g.mu(j);
            const double omega = xi * xi * xi + xi * mu * mu;
            const double ws = std::pow(1.0 + std::hypot(xi, mu), 2.0 * s);
            for (std::size_t q = 0; q < band.c.size(); ++q) {
                const double sigma = lat.tau(band.lo + static_cast<int>(q)) - omega;
                sum += ws * std::pow(1.0 + std::abs(sigma), 2.0 * b) * std::norm(band.c[q]);
            }
        }
    }
    return std::sqrt(lat.volume() * sum);
}

// ---------------------------------------------------------------------------
// Dense route

std::vector<double> to_samples(const SpaceTimeField& f) {
    const SpaceTimeLattice& lat = f.lattice();
    const Grid2D& g = lat.grid();
    const int nt = lat.nt();
    std::vector<Complex> dense(lat.size(), 0.0);
    for (int i = 0; i < g.nx(); ++i) {
        for (int j = 0; j < g.ny(); ++j) {
            const SpaceTimeField::Band& b = f.band(i, j);
            for (int l = b.lo; l <= b.hi(); ++l) {
                const int slot = ((l % nt) + nt) % nt;
                dense[g.index(i, j) * nt + slot] = b.c[l - b.lo];
            }
        }
    }
    std::vector<Complex> out(dense.size());
    detail::fft3d(g.nx(), g.ny(), nt, detail::FftDirection::backward, dense, out);
    std::vector<double> values(out.size());
    for (std::size_t n = 0; n < out.size(); ++n) values[n] = out[n].real();
    return values;
}

SpaceTimeField from_samples(const SpaceTimeLattice& lat, std::span<const double> samples) {
    if (samples.size() != lat.size()) throw Error("sample count does not match the lattice");
    if (!std::all_of(samples.begin(), samples.end(), [](double v) { return std::isfinite(v); })) {
        throw Error("non-finite field");
    }
    const Grid2D& g = lat.grid();
    const int nt = lat.nt();
    std::vector<Complex> in(samples.begin(), samples.end());
    std::vector<Complex> out(in.size());
    detail::fft3d(g.nx(), g.ny(), nt, detail::FftDirection::forward, in, out);
    const double scale = 1.0 / static_cast<double>(lat.size());
    SpaceTimeField f(lat);
    for (int i = 0; i < g.nx(); ++i) {
        for (int j = 0; j < g.ny(); ++j) {
            SpaceTimeField::Band& b = f.band(i, j);
            b.lo = lat.l_min();
            b.c.resize(static_cast<std::size_t>(nt));
            for (int l = lat.l_min(); l <= lat.l_max(); ++l) {
                const int slot = ((l % nt) + nt) % nt;
                b.c[l - b.lo] = out[g.index(i, j) * nt + slot] * scale;
            }
        }
    }
    return f;
}

SpaceTimeField embed(const SpaceTimeField& f, const SpaceTimeLattice& target) {
    const Grid2D& g = f.grid();
    const Grid2D& h = target.grid();
    if (h.lx() != g.lx() || h.ly() != g.ly() || target.t_box() != f.lattice().t_box()) {
        throw Error("embedding requires the same space-time box");
    }
    if (h.nx() < g.nx() || h.ny() < g.ny() || target.nt() < f.lattice().nt()) {
        throw Error("embedding target is coarser than the source");
    }
    SpaceTimeField out(target);
    for (int i = 0; i < g.nx(); ++i) {
        for (int j = 0; j < g.ny(); ++j) {
            const SpaceTimeField::Band& b = f.band(i, j);
            if (b.empty()) continue;
            out.band(h.slot_x(g.mode_x(i)), h.slot_y(g.mode_y(j))) = b;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Products

namespace {

struct ActiveMode {
    int mx, my;
    const SpaceTimeField::Band* band;
};

std::vector<ActiveMode> active_modes(const SpaceTimeField& f) {
    const Grid2D& g = f.grid();
    std::vector<ActiveMode> out;
    for (int i = 0; i < g.nx(); ++i) {
        for (int j = 0; j < g.ny(); ++j) {
            const auto& b = f.band(i, j);
            if (b.empty()) continue;
            if (std::all_of(b.c.begin(), b.c.end(), [](const Complex& c) { return c == Complex(0.0); })) continue;
            out.push_back({g.mode_x(i), g.mode_y(j), &b});
        }
    }
    return out;
}

}  // namespace

SpaceTimeField multiply(const SpaceTimeField& f, const SpaceTimeField& g) {
    if (!(f.lattice() == g.lattice())) throw Error("space-time lattice mismatch");
    const SpaceTimeLattice out_lat = f.lattice().doubled();
    const Grid2D& h = out_lat.grid();
    SpaceTimeField out(out_lat);

    const auto fa = active_modes(f);
    const auto ga = active_modes(g);

    // First pass: band extents of every output mode.
    std::vector<int> lo(h.size(), std::numeric_limits<int>::max());
    std::vector<int> hi(h.size(), std::numeric_limits<int>::min());
    for (const ActiveMode& a : fa) {
        for (const ActiveMode& b : ga) {
            const std::size_t n = h.index(h.slot_x(a.mx + b.mx), h.slot_y(a.my + b.my));
            lo[n] = std::min(lo[n], a.band->lo + b.band->lo);
            hi[n] = std::max(hi[n], a.band->hi() + b.band->hi());
        }
    }
    for (int i = 0; i < h.nx(); ++i) {
        for (int j = 0; j < h.ny(); ++j) {
            const std::size_t n = h.index(i, j);
            if (lo[n] > hi[n]) continue;
            auto& band = out.band(i, j);
            band.lo = lo[n];
            band.c.assign(static_cast<std::size_t>(hi[n] - lo[n] + 1), 0.0);
        }
    }

    // Second pass: accumulate the convolution.
    for (const ActiveMode& a : fa) {
        for (const ActiveMode& b : ga) {
            auto& band = out.band(h.slot_x(a.mx + b.mx), h.slot_y(a.my + b.my));
            const int base = a.band->lo + b.band->lo - band.lo;
            const auto& ca = a.band->c;
            const auto& cb = b.band->c;
            for (std::size_t p = 0; p < ca.size(); ++p) {
                if (ca[p] == Complex(0.0)) continue;
                Complex* dst = band.c.data() + base + p;
                for (std::size_t q = 0; q < cb.size(); ++q) dst[q] += ca[p] * cb[q];
            }
        }
    }
    return out;
}

SpaceTimeField multiply_pseudospectral(const SpaceTimeField& f, const SpaceTimeField& g) {
    if (!(f.lattice() == g.lattice())) throw Error("space-time lattice mismatch");
    const SpaceTimeLattice out_lat = f.lattice().doubled();
    std::vector<double> a = to_samples(embed(f, out_lat));
    const std::vector<double> b = to_samples(embed(g, out_lat));
    for (std::size_t n = 0; n < a.size(); ++n) a[n] *= b[n];
    return from_samples(out_lat, a);
}

SpaceTimeField apply_spatial(const SpaceTimeField& f, MultiplierKind kind) {
    const MultiplierTable m = make_multiplier(kind, f.grid());
    SpaceTimeField out = f;
    const Grid2D& g = f.grid();
    for (int i = 0; i < g.nx(); ++i) {
        for (int j = 0; j < g.ny(); ++j) {
            for (Complex& c : out.band(i, j).c) c *= m(i, j);
        }
    }
    return out;
}

SpaceTimeField free_solution(const SpaceTimeLattice& lattice, const SpectralField& u0) {
    require_same_grid(lattice.grid(), u0.grid(), "free_solution");
    const Grid2D& g = lattice.grid();
    SpaceTimeField out(lattice);
    for (int i = 0; i < g.nx(); ++i) {
        for (int j = 0; j < g.ny(); ++j) {
            if (u0(i, j) == Complex(0.0) || g.nyquist(i, j)) continue;
            const double omega = g.xi(i) * (g.xi(i) * g.xi(i) + g.mu(j) * g.mu(j));
            const long l = std::lround(omega / lattice.dtau());
            if (l < lattice.l_min() || l > lattice.l_max()) {
                throw Error("resolution too small for the free solution");
            }
            out.set(i, j, static_cast<int>(l), u0(i, j));
        }
    }
    return out;
}

}  // namespace semzk
