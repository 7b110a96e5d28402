#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace dispersa {

using Complex = std::complex<double>;

/**
 * Uniform periodic grid standing in for the real line.
 *
 * Points are x_j = -L/2 + j*L/n (j = 0..n-1). The dual frequencies are
 * xi_k = 2*pi*k/L for k = -n/2..n/2-1; spectra are stored in FFT order
 * (k = 0, 1, .., n/2-1, -n/2, .., -1).
 */
class Grid1D {
public:
    Grid1D(std::size_t n, double length);

    std::size_t size() const { return n_; }
    double length() const { return length_; }
    double dx() const { return length_ / static_cast<double>(n_); }
    double dxi() const;

    double point(std::size_t j) const;
    /// Signed mode number of the FFT-ordered index.
    long mode(std::size_t index) const;
    double frequency(std::size_t index) const;
    bool is_nyquist(std::size_t index) const { return index == n_ / 2; }
    /// FFT-ordered index of a signed mode number in [-n/2, n/2).
    std::size_t index_of_mode(long mode) const;

    std::vector<double> points() const;
    std::vector<double> frequencies() const;

    std::string describe() const;

    bool operator==(const Grid1D&) const = default;

private:
    std::size_t n_;
    double length_;
};

/// The grid used when nothing else is requested.
Grid1D default_grid();

/// Complex samples of a function on a grid, in physical space.
class GridFunction {
public:
    explicit GridFunction(Grid1D grid);
    GridFunction(Grid1D grid, std::vector<Complex> values, bool real_valued = false);
    static GridFunction from_real(Grid1D grid, std::span<const double> values);

    const Grid1D& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }
    std::span<const Complex> values() const { return values_; }
    std::span<Complex> values() { return values_; }
    const Complex& operator[](std::size_t j) const { return values_[j]; }
    Complex& operator[](std::size_t j) { return values_[j]; }

    /// Flag asserting the samples are (up to roundoff) real.
    bool real_valued() const { return real_; }
    void set_real_valued(bool flag) { real_ = flag; }
    /// Drops imaginary parts and sets the real flag.
    GridFunction real_part() const;

    GridFunction& operator+=(const GridFunction& other);
    GridFunction& operator-=(const GridFunction& other);
    GridFunction& operator*=(double scale);

private:
    Grid1D grid_;
    std::vector<Complex> values_;
    bool real_ = false;
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator*(double scale, GridFunction f);

/// Unitary DFT coefficients of a GridFunction, FFT-ordered.
class Spectrum {
public:
    explicit Spectrum(Grid1D grid);
    Spectrum(Grid1D grid, std::vector<Complex> coefficients);

    const Grid1D& grid() const { return grid_; }
    std::size_t size() const { return coeffs_.size(); }
    std::span<const Complex> coefficients() const { return coeffs_; }
    std::span<Complex> coefficients() { return coeffs_; }
    const Complex& operator[](std::size_t k) const { return coeffs_[k]; }
    Complex& operator[](std::size_t k) { return coeffs_[k]; }

private:
    Grid1D grid_;
    std::vector<Complex> coeffs_;
};

// Discrete norms carry the dx quadrature weight so that they approximate
// integrals over the line.
double l2_norm(const GridFunction& f);
double lp_norm(const GridFunction& f, double p);
double sup_norm(const GridFunction& f);
double sup_imag(const GridFunction& f);
/// Coefficient norm scaled by sqrt(dx); equals l2_norm of the inverse transform.
double l2_norm(const Spectrum& s);
/// Riemann sum approximating the line integral of f.
Complex integral(const GridFunction& f);

void require_same_grid(const Grid1D& a, const Grid1D& b, const char* where);

}  // namespace dispersa
