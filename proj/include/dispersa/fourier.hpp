#pragma once

#include <functional>

#include "dispersa/errors.hpp"
#include "dispersa/grid.hpp"

namespace dispersa {

// Unitary DFT: forward and inverse both carry 1/sqrt(n). Every identity in
// the library is convention-invariant, so this choice never leaks into the
// residuals.
Spectrum forward_transform(const GridFunction& f);
GridFunction inverse_transform(const Spectrum& s, bool real_valued = false);

/// Symbol of a Fourier multiplier, evaluated at a grid frequency.
using Multiplier = std::function<Complex(double xi)>;

enum class NyquistPolicy {
    Keep,  ///< evaluate m at xi_{-n/2} like any other frequency
    Zero,  ///< drop the unpaired Nyquist coefficient
    Auto,  ///< zero it when m is odd-like (m(-xi) != m(xi)) at the Nyquist frequency
};

/// Multiplies the spectrum of f by m(xi_k). Throws InvalidArgument when m is
/// non-finite anywhere on the grid.
GridFunction multiplier_apply(const GridFunction& f, const Multiplier& m,
                              NyquistPolicy nyquist = NyquistPolicy::Auto);
Spectrum multiplier_apply(const Spectrum& s, const Multiplier& m,
                          NyquistPolicy nyquist = NyquistPolicy::Auto);

/// True when m(-xi) == conj(m(xi)) on every paired grid frequency.
bool is_hermitian(const Grid1D& grid, const Multiplier& m, double tol = 1e-14);

/// First derivative by the multiplier i*xi.
GridFunction spectral_derivative(const GridFunction& f, int order = 1);

/**
 * Continuous-normalized Fourier transform sampled on the frequency grid:
 * fhat(xi_k) ~ integral f(x) exp(-i x xi_k) dx. Returned in increasing
 * frequency order (k = -n/2..n/2-1), which is what quadratures over xi need.
 */
std::vector<Complex> continuous_transform(const GridFunction& f);
/// Inverse of continuous_transform.
GridFunction inverse_continuous_transform(const Grid1D& grid, std::span<const Complex> fhat,
                                          bool real_valued = false);

/// Relative edge magnitude max(|f_0|, |f_{n-1}|) / sup|f|; 0 for the zero function.
double edge_ratio(const GridFunction& f);
/// Adds a wrap-around warning to `out` when the edge ratio exceeds tol.
bool check_edge_decay(const GridFunction& f, const char* label, Warnings& out, double tol = 1e-14);

}  // namespace dispersa
