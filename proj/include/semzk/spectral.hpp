#pragma once

#include <functional>
#include <vector>

#include "semzk/field.hpp"

namespace semzk {

/// Fourier coefficients of a real field (see SpectralField for the
/// normalization). Throws "non-finite field" on NaN/Inf input.
SpectralField forward_transform(const RealField& f);

/// Real field with the given coefficients. Throws "non-Hermitian spectrum"
/// when the symmetry defect exceeds 1e-10 relative to the largest coefficient.
RealField inverse_transform(const SpectralField& f);

enum class MultiplierKind {
    m1,            ///< xi^2 / (xi^2 + mu^2), symbol of d/dx L
    m2,            ///< xi mu / (xi^2 + mu^2), symbol of d/dy L
    ddx,           ///< i xi
    ddy,           ///< i mu
    symbol_omega,  ///< xi^3 + xi mu^2, dispersion relation of the linear flow
    laplacian,     ///< -(xi^2 + mu^2)
    poisson_dx,    ///< i xi / -(xi^2 + mu^2), solution operator of Lap(phi) = u_x
};

/// Per-mode weights of a Fourier multiplier. The (0,0) weight is always set
/// explicitly and every Nyquist row/column weight is zero.
class MultiplierTable {
public:
    MultiplierTable(const Grid2D& grid, std::vector<Complex> weights);

    const Grid2D& grid() const { return grid_; }
    std::span<const Complex> weights() const { return weights_; }
    const Complex& operator()(int i, int j) const { return weights_[grid_.index(i, j)]; }

private:
    Grid2D grid_;
    std::vector<Complex> weights_;
};

MultiplierTable make_multiplier(MultiplierKind kind, const Grid2D& grid);

/// Multiplier from an arbitrary symbol(xi, mu); the origin takes origin_value
/// and is never evaluated through the symbol.
MultiplierTable make_multiplier(const Grid2D& grid,
                                const std::function<Complex(double xi, double mu)>& symbol,
                                Complex origin_value);

SpectralField apply_multiplier(const SpectralField& f, const MultiplierTable& m);
void apply_multiplier_inplace(SpectralField& f, const MultiplierTable& m);

inline constexpr double kDefaultDealiasFraction = 2.0 / 3.0;

/// Zeroes modes with |jx| > fraction*nx/2 or |jy| > fraction*ny/2.
SpectralField dealias(const SpectralField& f, double fraction = kDefaultDealiasFraction);

/// Multipliers a solver needs repeatedly, built once per grid.
struct SpectralOps {
    explicit SpectralOps(const Grid2D& grid, double dealias_fraction = kDefaultDealiasFraction);

    Grid2D grid;
    MultiplierTable ddx;
    MultiplierTable ddy;
    MultiplierTable m1;
    MultiplierTable m2;
    MultiplierTable omega;
    /// 1 on retained modes, 0 on modes removed by dealiasing.
    std::vector<double> keep;
};

namespace detail {
/// Inverse transform without the symmetry check, for spectra that are
/// Hermitian by construction inside the solvers.
RealField inverse_unchecked(const SpectralField& f);
}  // namespace detail

}  // namespace semzk
