#pragma once

#include <optional>
#include <string>

#include "semzk/field.hpp"
#include "semzk/spectral.hpp"

namespace semzk {

/// Line soliton phi(x - omega t) = 3 omega sech^2(sqrt(omega)/2 (x - x0 - omega t)).
struct SolitonParams {
    double omega = 1.0;
    double x0 = 0.0;

    void validate() const;
    double amplitude() const { return 3.0 * omega; }
    double width_rate() const;  ///< sqrt(omega)/2
};

/// Which evolution equation a run integrates.
///
/// linear drops every nonlinear and background term (pure Airy-type flow);
/// sem_on_soliton evolves the perturbation of a traveling soliton.
struct Equation {
    enum class Tag : unsigned char { zk = 0, sem = 1, sem_on_soliton = 2, linear = 3 };

    Tag tag = Tag::zk;
    std::optional<SolitonParams> soliton;

    static Equation zk() { return {Tag::zk, std::nullopt}; }
    static Equation sem() { return {Tag::sem, std::nullopt}; }
    static Equation linear() { return {Tag::linear, std::nullopt}; }
    static Equation sem_on_soliton(SolitonParams p);

    void validate() const;
    std::string name() const;
    static Equation parse(const std::string& name, std::optional<SolitonParams> soliton);
};

/// Multiplies mode (xi, mu) by exp(i t (xi^3 + xi mu^2)).
SpectralField propagator_apply(const SpectralField& f, double t);

/// u u_x, pseudo-spectral with 2/3 dealiasing.
RealField nonlinear_zk(const RealField& u);

/// 1/2 (u u_x + u_x dxL(u) + u_y dyL(u)) with L = Lap^{-1} d/dx.
RealField nonlinear_sem(const RealField& u);

/// Wrapped crest-relative coordinate x - (x0 + omega t) in [-lx/2, lx/2).
double soliton_coordinate(const SolitonParams& p, double t, double x, double lx);

/// Closed forms of the soliton, its x-derivative and the potential psi.
double soliton_value(const SolitonParams& p, double s);
double soliton_dx(const SolitonParams& p, double s);
double potential_value(const SolitonParams& p, double s);
double potential_dx(const SolitonParams& p, double s);

/// Smallest seam value sech^2 may take for the soliton to count as periodic.
inline constexpr double kSolitonTailTolerance = 1e-13;

/// Throws "domain too small for soliton" unless sech^2 at the seam is below
/// kSolitonTailTolerance.
void check_soliton_domain(const SolitonParams& p, const Grid2D& grid);

RealField soliton_profile(const SolitonParams& p, double t, const Grid2D& grid);
/// Pointwise tanh potential (not periodic; never transformed).
RealField potential_profile(const SolitonParams& p, double t, const Grid2D& grid);

/// 1/2 (phi_x u + 2 phi u_x) + 1/2 phi_x dxL(u), with phi the soliton at time t.
RealField background_terms(const RealField& u, const SolitonParams& p, double t);

/// Potential phi solving Lap(phi) = u_x with zero mean.
RealField solve_potential(const RealField& u);

/// || Lap(phi) - u_x ||_{L2}.
double poisson_residual(const RealField& u, const RealField& phi);

namespace detail {

/// Spectral right-hand side F(u, t) so that u_t = -dx Lap u + F(u, t).
/// Holds the multiplier tables and scratch for one grid.
class RhsEvaluator {
public:
    RhsEvaluator(const Grid2D& grid, Equation eq);

    const Grid2D& grid() const { return ops_.grid; }
    const SpectralOps& ops() const { return ops_; }
    const Equation& equation() const { return eq_; }

    /// Forcing term in spectral form (dealiased). Zero for Tag::linear.
    SpectralField operator()(const SpectralField& u_hat, double t) const;

    /// Physical-space nonlinear pieces used by Duhamel quadrature.
    /// Each returns the bare product without the 1/2 prefactor.
    RealField product_uux(const SpectralField& u_hat) const;
    RealField product_ux_dxl(const SpectralField& u_hat) const;
    RealField product_uy_dyl(const SpectralField& u_hat) const;
    RealField product_background(const SpectralField& u_hat, double t) const;      // phi_x u + 2 phi u_x
    RealField product_background_l(const SpectralField& u_hat, double t) const;    // phi_x dxL u

private:
    RealField physical(const SpectralField& u_hat, const MultiplierTable* m) const;

    SpectralOps ops_;
    Equation eq_;
};

/// Dealiased forward transform of a physical-space product.
SpectralField dealiased_transform(const RealField& product, const SpectralOps& ops);

}  // namespace detail

}  // namespace semzk
