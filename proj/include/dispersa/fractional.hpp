#pragma once

#include <optional>

#include "dispersa/errors.hpp"
#include "dispersa/grid.hpp"

namespace dispersa {

/// Riesz derivative D^s: multiplier |xi|^s. The mean coefficient is zeroed
/// for s > 0; for s < 0 it must already vanish (below 1e-12).
GridFunction riesz_derivative(const GridFunction& f, double s);

/// Bessel potential J^s: multiplier (1 + xi^2)^(s/2).
GridFunction bessel_derivative(const GridFunction& f, double s);

/// Hilbert transform: multiplier -i sgn(xi), mean and Nyquist zeroed.
GridFunction hilbert_transform(const GridFunction& f);

/**
 * Normalization of the singular-integral derivative
 *   D_alpha f(x) = (1/c_alpha) p.v. int (f(x+y) - f(x)) / |y|^(1+alpha) dy.
 *
 * The exact constant making D_alpha agree with |xi|^alpha on the line is
 *   c_alpha = -2 Gamma(1 - alpha) cos(pi alpha / 2) / alpha
 *           = sqrt(pi) 2^-alpha Gamma(-alpha/2) / Gamma((1 + alpha)/2).
 */
double stein_constant_exact(double alpha);
/// sqrt(pi) 2^-alpha Gamma(-alpha/2) / Gamma(3/2), as commonly printed for n = 1.
double stein_constant_printed(double alpha);

struct SteinKernelSpec {
    enum class Normalization { Exact, Printed, Calibrated };

    double alpha = 0.5;
    /// Principal-value cutoff in space units; 0 selects one grid spacing.
    double epsilon = 0.0;
    Normalization normalization = Normalization::Calibrated;
    /// Used when normalization == Calibrated; computed on demand when empty.
    std::optional<double> calibrated_value;

    void validate(const Grid1D& grid) const;
};

/**
 * Unnormalized singular integral of the periodic extension of f:
 *   sum_{m=1}^{n-1} K(y_m) (f(x + y_m) - f(x)) dx,  K(y) = sum_p |y + pL|^(-1-alpha),
 * a midpoint rule over grid offsets with the cells |y| < epsilon (default
 * one grid spacing) excluded. The periodized kernel accounts for every image
 * of the window on the line. Direct O(n^2) evaluation.
 */
GridFunction stein_integral(const GridFunction& f, double alpha, double epsilon = 0.0);

struct SteinResult {
    GridFunction derivative;
    double c_alpha;
    Warnings warnings;
};

/// (1/c_alpha) stein_integral(f), with c_alpha chosen by spec.normalization.
SteinResult stein_derivative(const GridFunction& f, const SteinKernelSpec& spec);

/**
 * Fits c_alpha so that stein_integral(f)/c_alpha matches riesz_derivative(f, alpha)
 * in L2: c = sign(<S, R>) ||S|| / ||R||. Throws ZeroData for f = 0.
 */
double calibrate_stein_constant(const GridFunction& f, double alpha, double epsilon = 0.0);

/// Gaussian calibration at the default grid; cached per alpha.
double default_calibrated_constant(double alpha);

struct NormEquivalenceReport {
    double lhs = 0.0;    ///< ||J^alpha f||_p
    double rhs = 0.0;    ///< ||f||_p + ||D^alpha f||_p
    double ratio = 1.0;  ///< lhs / rhs, 1 when both vanish
};

NormEquivalenceReport norm_equivalence_report(const GridFunction& f, double alpha, double p);

}  // namespace dispersa
