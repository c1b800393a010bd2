#pragma once

#include <cstdint>

#include "semzk/spacetime.hpp"

namespace semzk {

inline constexpr double kBumpPlateau = 1.25;  ///< eta == 1 on [-5/4, 5/4]
inline constexpr double kBumpSupport = 1.6;   ///< eta == 0 outside (-8/5, 8/5)

/// Smooth even bump: 1 on the plateau, 0 outside the support, with the
/// C-infinity transition g(b-|s|) / (g(b-|s|) + g(|s|-a)), g(t) = exp(-1/t).
double bump_eta(double s);
/// zeta(s) = eta(s) - eta(2s), supported in 5/8 < |s| < 8/5.
double bump_zeta(double s);

/// True for N = 1, 2, 4, ...
bool is_dyadic(int n);

/// Weight of the dyadic piece N at radius r: eta(r) for N = 1, zeta(r/N) otherwise.
/// Throws for non-dyadic N.
double dyadic_weight(double r, int n);

/// P_N: frequency localization to |(xi, mu)| ~ N.
SpectralField project_PN(const SpectralField& f, int n);
SpaceTimeField project_PN(const SpaceTimeField& f, int n);
/// Q_L: modulation localization to |tau - (xi^3 + xi mu^2)| ~ L.
SpaceTimeField project_QL(const SpaceTimeField& f, int l);

/// Real space-time field of unit L2 norm with independent Gaussian
/// coefficients on the block where both the frequency and the modulation
/// weights equal one. Throws "resolution too small for (N,L)" when the block
/// is empty or does not fit the lattice.
SpaceTimeField random_block(const SpaceTimeLattice& lattice, int n, int l, std::uint64_t seed);

}  // namespace semzk
