#include "dispersa/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dispersa/errors.hpp"

namespace dispersa {

Grid1D::Grid1D(std::size_t n, double length) : n_(n), length_(length) {
    if (n < 2 || n % 2 != 0) {
        throw InvalidArgument("grid point count must be even and >= 2, got " + std::to_string(n));
    }
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw InvalidArgument("grid length must be positive and finite");
    }
}

double Grid1D::dxi() const { return 2.0 * std::numbers::pi / length_; }

double Grid1D::point(std::size_t j) const {
    return -0.5 * length_ + static_cast<double>(j) * dx();
}

long Grid1D::mode(std::size_t index) const {
    const auto half = static_cast<long>(n_ / 2);
    const auto k = static_cast<long>(index);
    return k < half ? k : k - static_cast<long>(n_);
}

double Grid1D::frequency(std::size_t index) const {
    return dxi() * static_cast<double>(mode(index));
}

std::size_t Grid1D::index_of_mode(long m) const {
    const auto nn = static_cast<long>(n_);
    if (m < -nn / 2 || m >= nn / 2) {
        throw InvalidArgument("mode " + std::to_string(m) + " outside grid range");
    }
    return static_cast<std::size_t>(m < 0 ? m + nn : m);
}

std::vector<double> Grid1D::points() const {
    std::vector<double> x(n_);
    for (std::size_t j = 0; j < n_; ++j) x[j] = point(j);
    return x;
}

std::vector<double> Grid1D::frequencies() const {
    std::vector<double> xi(n_);
    for (std::size_t k = 0; k < n_; ++k) xi[k] = frequency(k);
    return xi;
}

std::string Grid1D::describe() const {
    std::ostringstream os;
    os << "n=" << n_ << " L=" << length_;
    return os.str();
}

Grid1D default_grid() { return Grid1D(1024, 100.0); }

void require_same_grid(const Grid1D& a, const Grid1D& b, const char* where) {
    if (!(a == b)) {
        throw InvalidArgument(std::string(where) + ": grid mismatch (" + a.describe() + " vs " +
                              b.describe() + ")");
    }
}

GridFunction::GridFunction(Grid1D grid) : grid_(grid), values_(grid.size()) {}

GridFunction::GridFunction(Grid1D grid, std::vector<Complex> values, bool real_valued)
    : grid_(grid), values_(std::move(values)), real_(real_valued) {
    if (values_.size() != grid_.size()) {
        throw InvalidArgument("GridFunction: " + std::to_string(values_.size()) +
                              " samples for a grid of " + std::to_string(grid_.size()));
    }
}

GridFunction GridFunction::from_real(Grid1D grid, std::span<const double> values) {
    std::vector<Complex> v(values.begin(), values.end());
    return GridFunction(grid, std::move(v), true);
}

GridFunction GridFunction::real_part() const {
    GridFunction out(grid_);
    for (std::size_t j = 0; j < values_.size(); ++j) out[j] = values_[j].real();
    out.real_ = true;
    return out;
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
    require_same_grid(grid_, other.grid_, "GridFunction::operator+=");
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += other.values_[j];
    real_ = real_ && other.real_;
    return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
    require_same_grid(grid_, other.grid_, "GridFunction::operator-=");
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= other.values_[j];
    real_ = real_ && other.real_;
    return *this;
}

GridFunction& GridFunction::operator*=(double scale) {
    for (auto& v : values_) v *= scale;
    return *this;
}

GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
GridFunction operator*(double scale, GridFunction f) { return f *= scale; }

Spectrum::Spectrum(Grid1D grid) : grid_(grid), coeffs_(grid.size()) {}

Spectrum::Spectrum(Grid1D grid, std::vector<Complex> coefficients)
    : grid_(grid), coeffs_(std::move(coefficients)) {
    if (coeffs_.size() != grid_.size()) {
        throw InvalidArgument("Spectrum: coefficient count does not match grid");
    }
}

double l2_norm(const GridFunction& f) {
    double sum = 0.0;
    for (const auto& v : f.values()) sum += std::norm(v);
    return std::sqrt(sum * f.grid().dx());
}

double lp_norm(const GridFunction& f, double p) {
    if (std::isinf(p)) return sup_norm(f);
    if (!(p >= 1.0)) throw InvalidArgument("lp_norm: p must be >= 1");
    // Scale by the sup to keep large exponents away from under/overflow.
    const double peak = sup_norm(f);
    if (peak == 0.0) return 0.0;
    double sum = 0.0;
    for (const auto& v : f.values()) sum += std::pow(std::abs(v) / peak, p);
    return peak * std::pow(sum * f.grid().dx(), 1.0 / p);
}

double sup_norm(const GridFunction& f) {
    double m = 0.0;
    for (const auto& v : f.values()) m = std::max(m, std::abs(v));
    return m;
}

double sup_imag(const GridFunction& f) {
    double m = 0.0;
    for (const auto& v : f.values()) m = std::max(m, std::abs(v.imag()));
    return m;
}

double l2_norm(const Spectrum& s) {
    double sum = 0.0;
    for (const auto& c : s.coefficients()) sum += std::norm(c);
    return std::sqrt(sum * s.grid().dx());
}

Complex integral(const GridFunction& f) {
    Complex sum = 0.0;
    for (const auto& v : f.values()) sum += v;
    return sum * f.grid().dx();
}

}  // namespace dispersa
