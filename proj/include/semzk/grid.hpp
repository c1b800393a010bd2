#pragma once

#include <cstddef>

namespace semzk {

/// Periodic rectangle [0,lx) x [0,ly) sampled on an nx x ny uniform grid.
///
/// Storage order for every field on the grid is x-major: index = i*ny + j.
/// Spectral storage follows the FFT convention, so storage index i along x
/// carries the signed mode number i (i < nx/2) or i - nx (i >= nx/2). The
/// mode -nx/2 is the unpaired Nyquist column.
class Grid2D {
public:
    Grid2D(int nx, int ny, double lx, double ly);

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double lx() const { return lx_; }
    double ly() const { return ly_; }
    double dx() const { return lx_ / nx_; }
    double dy() const { return ly_ / ny_; }
    double area() const { return lx_ * ly_; }
    std::size_t size() const { return static_cast<std::size_t>(nx_) * ny_; }
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * ny_ + j; }

    double x(int i) const { return i * dx(); }
    double y(int j) const { return j * dy(); }

    /// Signed mode number for a storage index.
    int mode_x(int i) const { return i < nx_ / 2 ? i : i - nx_; }
    int mode_y(int j) const { return j < ny_ / 2 ? j : j - ny_; }
    /// Storage index for a signed mode number (wraps modulo the grid).
    int slot_x(int m) const { return ((m % nx_) + nx_) % nx_; }
    int slot_y(int m) const { return ((m % ny_) + ny_) % ny_; }

    /// Wavenumbers xi = 2 pi m / lx and mu = 2 pi m / ly for a storage index.
    double xi(int i) const;
    double mu(int j) const;

    bool nyquist_x(int i) const { return i == nx_ / 2; }
    bool nyquist_y(int j) const { return j == ny_ / 2; }
    bool nyquist(int i, int j) const { return nyquist_x(i) || nyquist_y(j); }

    bool operator==(const Grid2D& other) const = default;

private:
    int nx_;
    int ny_;
    double lx_;
    double ly_;
};

/// Throws unless both grids are identical.
void require_same_grid(const Grid2D& a, const Grid2D& b, const char* what);

}  // namespace semzk
