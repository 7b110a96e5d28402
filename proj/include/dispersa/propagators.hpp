#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dispersa/errors.hpp"
#include "dispersa/grid.hpp"

namespace dispersa {

/**
 * Phase t * S(xi) of a dispersive group exp(i t S(xi)).
 *
 * Airy:  S(xi) = xi^3, the linear part of u_t + u_xxx = 0.
 * DGBO:  S(xi) = |xi|^(1+a) xi, the linear part of u_t - D^(1+a) u_x = 0.
 * Both symbols are odd and real, so the multiplier is Hermitian.
 */
struct PhasePolynomial {
    enum class Symbol { Airy, Dgbo };

    double t = 0.0;
    Symbol symbol = Symbol::Airy;
    double a = 0.0;  ///< DGBO dispersion parameter

    static PhasePolynomial airy(double t) { return {t, Symbol::Airy, 0.0}; }
    static PhasePolynomial dgbo(double t, double a);

    double dispersion(double xi) const;
    double phase(double xi) const { return t * dispersion(xi); }
};

GridFunction propagate(const GridFunction& f, const PhasePolynomial& phase);
/// U(t) f: multiplier exp(i t xi^3).
GridFunction airy_propagate(const GridFunction& f, double t);
/// Multiplier exp(i t |xi|^(1+a) xi); a must lie in [0, 1).
GridFunction dgbo_propagate(const GridFunction& f, double t, double a);

struct GammaResult {
    GridFunction value;
    Warnings warnings;
};

/// (x - 3t d_xx) f. x-multiplication needs decaying data; a wrap-around
/// warning is attached otherwise.
GammaResult gamma_apply(const GridFunction& f, double t);

struct IdentityResidualReport {
    double t = 0.0;
    double alpha = 0.0;
    std::optional<double> beta;
    double residual_l2 = 0.0;
    double lhs_l2 = 0.0;
    /// Norm of the correction term over the right-hand side of its bound;
    /// 0 when the report has no associated bound.
    double bound_ratio = 0.0;
    std::string grid;
    double taper_fraction = 0.0;
    Warnings warnings;

    double relative_residual() const { return lhs_l2 == 0.0 ? residual_l2 : residual_l2 / lhs_l2; }
};

/// || Gamma U(t) v0 - U(t)(x v0) ||_2, with lhs_l2 = ||x v0||_2.
IdentityResidualReport gamma_commutation_residual(const GridFunction& v0, double t);

/// Fraction of points, at each end of the grid, over which |x|^r is ramped to zero.
inline constexpr double kWeightTaperFraction = 0.05;

/// |x|^r on centred coordinates, ramped to zero by a raised cosine over the
/// outer kWeightTaperFraction of points at each end.
std::vector<double> tapered_weight(const Grid1D& grid, double r);
GridFunction apply_weight(const GridFunction& f, double r);
GridFunction project_weight(const GridFunction& f, double r, std::size_t oversample = 16);
/// Warns when f carries more than `tol` of its L2 mass inside the taper zone.
void check_taper_zone(const GridFunction& f, const char* label, Warnings& out, double tol = 1e-10);

/**
 * Samples on the frequency grid in increasing order (xi = -n/2..n/2-1 times
 * dxi), under the continuous Fourier normalization.
 */
struct FrequencySamples {
    Grid1D grid;
    std::vector<Complex> values;

    GridFunction to_physical(bool real_valued = false) const;
    double l2_norm() const;  ///< sqrt(dxi / 2pi) * |values|, equal to the physical L2 norm
};

FrequencySamples to_frequency(const GridFunction& f);

/**
 * Phi_{t,alpha}(fhat)(xi) = (1/c) sum_{eta != 0} (exp(i(P(xi+eta) - P(xi))) - 1)
 *                            / |eta|^(1+alpha) * fhat(xi+eta) * dxi,
 * where P = phase.phase and eta runs over nonzero multiples of dxi. Samples of
 * fhat outside the grid window are taken as zero. c defaults to the exact
 * singular-integral constant. O(n^2).
 */
FrequencySamples phi_operator(const FrequencySamples& fhat, double alpha, const PhasePolynomial& phase,
                              std::optional<double> c_alpha = std::nullopt);
/// Convenience overload taking u0 in physical space.
FrequencySamples phi_operator(const GridFunction& u0, double t, double alpha,
                              const PhasePolynomial& phase);

/**
 * Residual of |x|^a U(t) u0 = U(t)(|x|^a u0) + U(t)(Phi_{t,a}(u0hat))^vee.
 * bound_ratio = ||Phi^vee||_2 / ((1 + |t|)(||u0||_2 + ||D^(2a) u0||_2)).
 */
IdentityResidualReport weighted_identity_residual(const GridFunction& u0, double t, double alpha);

/**
 * Residual of D^b(|x|^a U(t) u0) = U(t) D^b(|x|^a u0) + U(t) D^b (Phi^vee),
 * 0 < b < a. bound_ratio = ||D^b Phi^vee||_2 / ((1 + |t|)(||u0||_2 + ||D^(b+2a) u0||_2)).
 */
IdentityResidualReport weighted_identity_residual_beta(const GridFunction& u0, double t,
                                                       double alpha, double beta);

/**
 * (int_{-W}^{W} ||U(t) u0||_inf^6 dt)^(1/6) / ||u0||_2 with the trapezoid rule
 * on n_times equispaced times. Throws ZeroData for u0 = 0.
 */
double strichartz_ratio(const GridFunction& u0, double t_window, int n_times);

}  // namespace dispersa
