#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dispersa/fourier.hpp"
#include "dispersa/grid.hpp"
#include "dispersa/presets.hpp"

using namespace dispersa;

namespace {

GridFunction gaussian_on(const Grid1D& g, double width = 1.0, double center = 0.0) {
    return sample(PresetDatum::gaussian(1.0, width, center), g).function;
}

double max_abs_diff(const GridFunction& a, const GridFunction& b) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

}  // namespace

TEST_CASE("grid construction and coordinates") {
    CHECK_THROWS_AS(Grid1D(1023, 100.0), InvalidArgument);
    CHECK_THROWS_AS(Grid1D(0, 100.0), InvalidArgument);
    CHECK_THROWS_AS(Grid1D(16, 0.0), InvalidArgument);
    CHECK_THROWS_AS(Grid1D(16, -1.0), InvalidArgument);

    const Grid1D g(16, 8.0);
    CHECK(g.dx() == doctest::Approx(0.5));
    CHECK(g.dxi() == doctest::Approx(2.0 * std::numbers::pi / 8.0));
    CHECK(g.point(0) == doctest::Approx(-4.0));
    CHECK(g.point(8) == doctest::Approx(0.0));
    CHECK(g.mode(0) == 0);
    CHECK(g.mode(7) == 7);
    CHECK(g.mode(8) == -8);
    CHECK(g.mode(15) == -1);
    CHECK(g.is_nyquist(8));
    for (long m = -8; m < 8; ++m) CHECK(g.mode(g.index_of_mode(m)) == m);

    const Grid1D d = default_grid();
    CHECK(d.size() == 1024);
    CHECK(d.length() == 100.0);
}

TEST_CASE("grid functions reject mismatched grids") {
    GridFunction a(Grid1D(16, 8.0));
    GridFunction b(Grid1D(16, 9.0));
    CHECK_THROWS_AS(a += b, InvalidArgument);
}

TEST_CASE("transform round trip and Parseval") {
    const Grid1D g = default_grid();
    GridFunction f = gaussian_on(g, 1.3, 2.0);
    for (std::size_t j = 0; j < g.size(); ++j) f[j] += Complex(0.0, 0.3 * std::sin(g.point(j)) * std::exp(-g.point(j) * g.point(j)));
    const Spectrum s = forward_transform(f);
    CHECK(max_abs_diff(inverse_transform(s), f) < 1e-13);
    CHECK(std::abs(l2_norm(s) - l2_norm(f)) / l2_norm(f) < 1e-13);
}

TEST_CASE("continuous transform of a gaussian matches the closed form") {
    // integral exp(-x^2/2) exp(-i x xi) dx = sqrt(2 pi) exp(-xi^2 / 2)
    const Grid1D g = default_grid();
    const auto fhat = continuous_transform(gaussian_on(g));
    double err = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double xi = (static_cast<double>(i) - static_cast<double>(g.size() / 2)) * g.dxi();
        err = std::max(err, std::abs(fhat[i] - std::sqrt(2.0 * std::numbers::pi) * std::exp(-xi * xi / 2.0)));
    }
    CHECK(err < 1e-10);

    const GridFunction back = inverse_continuous_transform(g, fhat, true);
    CHECK(max_abs_diff(back, gaussian_on(g)) < 1e-13);
}

TEST_CASE("multiplier application") {
    const Grid1D g(64, 2.0 * std::numbers::pi);
    const GridFunction c3 = sample(PresetDatum::cosine(3), g).function;

    SUBCASE("identity multiplier") {
        const GridFunction out = multiplier_apply(c3, [](double) { return Complex(1.0, 0.0); });
        CHECK(max_abs_diff(out, c3) < 1e-14);
        CHECK(out.real_valued());
    }
    SUBCASE("derivative of a single mode") {
        // cosine(3) on [-pi, pi) is cos(3x).
        const GridFunction d = spectral_derivative(c3, 1);
        double err = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j) err = std::max(err, std::abs(d[j].real() + 3.0 * std::sin(3.0 * g.point(j))));
        CHECK(err < 1e-12);
    }
    SUBCASE("non-finite multiplier values are rejected") {
        CHECK_THROWS_AS(multiplier_apply(c3, [](double xi) { return Complex(1.0 / xi, 0.0); }), InvalidArgument);
    }
    SUBCASE("hermitian detection") {
        CHECK(is_hermitian(g, [](double xi) { return std::polar(1.0, xi * xi * xi); }));
        CHECK_FALSE(is_hermitian(g, [](double xi) { return Complex(0.0, xi * xi); }));
    }
}

TEST_CASE("discrete norms carry the dx weight") {
    const Grid1D g(128, 10.0);
    GridFunction one(g);
    for (auto& v : one.values()) v = 1.0;
    CHECK(l2_norm(one) == doctest::Approx(std::sqrt(10.0)).epsilon(1e-14));
    CHECK(lp_norm(one, 4.0) == doctest::Approx(std::pow(10.0, 0.25)).epsilon(1e-14));
    CHECK(sup_norm(one) == 1.0);
    CHECK(integral(one).real() == doctest::Approx(10.0));
    CHECK(l2_norm(GridFunction(g)) == 0.0);
}

TEST_CASE("edge decay warnings") {
    const Grid1D g = default_grid();
    Warnings w;
    CHECK(check_edge_decay(gaussian_on(g), "narrow", w));
    CHECK(w.empty());
    CHECK_FALSE(check_edge_decay(gaussian_on(g, 20.0), "wide", w));
    CHECK(w.contains("wrap-around"));
    CHECK(edge_ratio(GridFunction(g)) == 0.0);
}
