#pragma once

#include <complex>
#include <span>
#include <vector>

#include "semzk/grid.hpp"

namespace semzk {

using Complex = std::complex<double>;

/// Real scalar field sampled at the grid points.
class RealField {
public:
    explicit RealField(const Grid2D& grid);
    RealField(const Grid2D& grid, std::vector<double> values);

    const Grid2D& grid() const { return grid_; }
    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }
    double& operator()(int i, int j) { return values_[grid_.index(i, j)]; }
    double operator()(int i, int j) const { return values_[grid_.index(i, j)]; }

    bool all_finite() const;

    RealField& operator+=(const RealField& other);
    RealField& operator-=(const RealField& other);
    RealField& operator*=(double a);

private:
    Grid2D grid_;
    std::vector<double> values_;
};

RealField operator+(RealField a, const RealField& b);
RealField operator-(RealField a, const RealField& b);
RealField operator*(double a, RealField b);

/// Fourier-series coefficients c(xi, mu) of a field on the grid, so that
/// f(x,y) = sum c exp(i(xi x + mu y)). In this normalization the continuous
/// L2 norm over the periodic cell is sqrt(lx*ly * sum |c|^2).
class SpectralField {
public:
    explicit SpectralField(const Grid2D& grid);
    SpectralField(const Grid2D& grid, std::vector<Complex> coeffs);

    const Grid2D& grid() const { return grid_; }
    std::span<Complex> coeffs() { return coeffs_; }
    std::span<const Complex> coeffs() const { return coeffs_; }
    Complex& operator()(int i, int j) { return coeffs_[grid_.index(i, j)]; }
    const Complex& operator()(int i, int j) const { return coeffs_[grid_.index(i, j)]; }
    /// Access by signed mode numbers.
    Complex& mode(int mx, int my) { return (*this)(grid_.slot_x(mx), grid_.slot_y(my)); }
    const Complex& mode(int mx, int my) const { return (*this)(grid_.slot_x(mx), grid_.slot_y(my)); }

    /// Largest |c(k) - conj(c(-k))| over the lattice.
    double hermitian_defect() const;

    SpectralField& operator+=(const SpectralField& other);
    SpectralField& operator-=(const SpectralField& other);
    SpectralField& operator*=(Complex a);

private:
    Grid2D grid_;
    std::vector<Complex> coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(Complex a, SpectralField b);

/// Discrete L2 norms over the periodic cell (trapezoid / Parseval weights).
double l2_norm(const RealField& f);
double l2_norm(const SpectralField& f);
double inner_product(const RealField& a, const RealField& b);

}  // namespace semzk
