#pragma once

#include <functional>
#include <vector>

#include "semzk/field.hpp"
#include "semzk/spectral.hpp"

namespace semzk {

/// Spatial grid times a periodic time box [0, t_box) sampled at nt points.
/// Temporal frequencies live on the lattice tau_l = 2 pi l / t_box with
/// l in [-nt/2, nt/2).
class SpaceTimeLattice {
public:
    SpaceTimeLattice(const Grid2D& grid, double t_box, int nt);

    const Grid2D& grid() const { return grid_; }
    double t_box() const { return t_box_; }
    int nt() const { return nt_; }
    double dt() const { return t_box_ / nt_; }
    double dtau() const;
    double tau(int l) const { return l * dtau(); }
    double t(int m) const { return m * dt(); }
    int l_min() const { return -nt_ / 2; }
    int l_max() const { return nt_ / 2 - 1; }
    double volume() const { return grid_.area() * t_box_; }
    std::size_t size() const { return grid_.size() * static_cast<std::size_t>(nt_); }

    /// Twice the spatial and temporal resolution on the same box; holds
    /// quadratic products of fields on this lattice without aliasing.
    SpaceTimeLattice doubled() const;

    bool operator==(const SpaceTimeLattice&) const = default;

private:
    Grid2D grid_;
    double t_box_;
    int nt_;
};

/// Coefficients c(xi, mu, tau) of f = sum c exp(i(xi x + mu y + tau t)).
/// Each spatial mode keeps one contiguous band of tau indices, so fields
/// concentrated near the dispersion surface stay cheap on long time boxes.
/// The L2 norm over the box is sqrt(volume * sum |c|^2).
class SpaceTimeField {
public:
    struct Band {
        int lo = 0;
        std::vector<Complex> c;
        int hi() const { return lo + static_cast<int>(c.size()) - 1; }
        bool empty() const { return c.empty(); }
    };

    explicit SpaceTimeField(const SpaceTimeLattice& lattice);

    const SpaceTimeLattice& lattice() const { return lattice_; }
    const Grid2D& grid() const { return lattice_.grid(); }
    const Band& band(int i, int j) const { return bands_[lattice_.grid().index(i, j)]; }
    Band& band(int i, int j) { return bands_[lattice_.grid().index(i, j)]; }

    /// Coefficient at spatial slot (i, j) and tau index l; zero outside the band.
    Complex coeff(int i, int j, int l) const;
    /// Sets or accumulates a coefficient, widening the band when needed.
    void set(int i, int j, int l, Complex v);
    void add(int i, int j, int l, Complex v);

    /// Largest |c(k, tau) - conj(c(-k, -tau))|.
    double hermitian_defect() const;

    /// Multiplies every stored coefficient by w(xi, mu, tau).
    void scale(const std::function<Complex(double xi, double mu, double tau)>& w);

    SpaceTimeField& operator+=(const SpaceTimeField& other);
    SpaceTimeField& operator-=(const SpaceTimeField& other);
    SpaceTimeField& operator*=(Complex a);

private:
    SpaceTimeLattice lattice_;
    std::vector<Band> bands_;
};

SpaceTimeField operator+(SpaceTimeField a, const SpaceTimeField& b);
SpaceTimeField operator-(SpaceTimeField a, const SpaceTimeField& b);
SpaceTimeField operator*(Complex a, SpaceTimeField b);

double l2_norm(const SpaceTimeField& f);

/// Periodic Bourgain norm (volume * sum <tau - omega>^{2b} <|(xi,mu)|>^{2s} |c|^2)^{1/2}
/// with <x> = 1 + |x|. No restriction to a shorter time interval is taken.
double xsb_norm(const SpaceTimeField& f, double s, double b);

/// Samples on the lattice, laid out as index (i * ny + j) * nt + m.
std::vector<double> to_samples(const SpaceTimeField& f);
/// Full-band coefficients of real samples in the layout of to_samples.
SpaceTimeField from_samples(const SpaceTimeLattice& lattice, std::span<const double> samples);

/// Copies coefficients onto a lattice with the same box and at least the
/// same resolution.
SpaceTimeField embed(const SpaceTimeField& f, const SpaceTimeLattice& target);

/// Exact product by discrete convolution of the stored bands. The result
/// lives on f.lattice().doubled().
SpaceTimeField multiply(const SpaceTimeField& f, const SpaceTimeField& g);

/// Same product through zero-padded 3-D transforms; equal to multiply() up
/// to rounding and used to cross-check it.
SpaceTimeField multiply_pseudospectral(const SpaceTimeField& f, const SpaceTimeField& g);

/// Spatial Fourier multiplier applied mode by mode (Nyquist weights are zero).
SpaceTimeField apply_spatial(const SpaceTimeField& f, MultiplierKind kind);

/// Free solution U(t)u0 written on the lattice. Each spatial mode is placed
/// at the tau index nearest to omega(xi, mu); the result is exact when the
/// dispersion relation takes values on the tau lattice. Nyquist modes are dropped.
SpaceTimeField free_solution(const SpaceTimeLattice& lattice, const SpectralField& u0);

}  // namespace semzk
