#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dispersa/fourier.hpp"
#include "dispersa/fractional.hpp"
#include "dispersa/presets.hpp"

using namespace dispersa;

namespace {

double max_abs_diff(const GridFunction& a, const GridFunction& b) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

double relative_l2(const GridFunction& a, const GridFunction& b) { return l2_norm(a - b) / l2_norm(b); }

GridFunction gaussian(const Grid1D& g, double amplitude = 1.0, double width = 1.0) {
    return sample(PresetDatum::gaussian(amplitude, width), g).function;
}

}  // namespace

TEST_CASE("Riesz derivative on a single mode") {
    const Grid1D g(64, 2.0 * std::numbers::pi);
    const GridFunction c = sample(PresetDatum::cosine(4), g).function;
    for (double s : {0.25, 0.5, 1.0, 1.7}) {
        const GridFunction d = riesz_derivative(c, s);
        CHECK(max_abs_diff(d, std::pow(4.0, s) * c) < 1e-12);
        CHECK(d.real_valued());
    }
    CHECK(max_abs_diff(riesz_derivative(c, 0.0), c) == 0.0);
}

TEST_CASE("Riesz derivative of a gaussian at the origin") {
    // On the line: (2 / sqrt(2 pi)) int_0^inf xi^s exp(-xi^2/2) dxi. The periodic value is the
    // Riemann sum with step h = 2 pi / L, which differs by sum_k zeta(-s-k) g^(k)(0)/k! h^(s+k+1)
    // for g = exp(-x^2/2). Both frozen from independent high-precision evaluations.
    const Grid1D g = default_grid();
    const GridFunction u = gaussian(g);
    const std::size_t mid = g.size() / 2;
    CHECK(std::abs(riesz_derivative(u, 0.25)[mid].real() - 0.874548724677982248) < 1e-10);
    CHECK(std::abs(riesz_derivative(u, 0.5)[mid].real() - 0.819566371975439765) < 1e-10);
    CHECK(std::abs(riesz_derivative(u, 1.5)[mid].real() - 0.860019858090030126) < 1e-10);
    // The line values are approached at rate h^(1+s).
    CHECK(std::abs(riesz_derivative(u, 0.5)[mid].real() - 0.822178958662458552) < 3e-3);
}

TEST_CASE("negative orders need mean-free data") {
    const Grid1D g = default_grid();
    CHECK_THROWS_AS(riesz_derivative(gaussian(g), -0.5), NegativeOrderOnNonzeroMean);

    const Grid1D p(64, 2.0 * std::numbers::pi);
    const GridFunction c = sample(PresetDatum::cosine(2), p).function;
    CHECK(max_abs_diff(riesz_derivative(riesz_derivative(c, 0.6), -0.6), c) < 1e-13);
}

TEST_CASE("Bessel and Hilbert multipliers") {
    const Grid1D g(64, 2.0 * std::numbers::pi);
    const GridFunction c = sample(PresetDatum::cosine(3), g).function;
    CHECK(max_abs_diff(bessel_derivative(c, 2.0), 10.0 * c) < 1e-12);
    CHECK(max_abs_diff(bessel_derivative(c, 0.0), c) < 1e-14);

    // H cos(3x) = sin(3x)
    const GridFunction h = hilbert_transform(c);
    double err = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) err = std::max(err, std::abs(h[j] - std::sin(3.0 * g.point(j))));
    CHECK(err < 1e-13);
    CHECK(max_abs_diff(hilbert_transform(h), -1.0 * c) < 1e-13);
}

TEST_CASE("singular-integral constants") {
    // Frozen from an independent evaluation of both closed forms.
    CHECK(std::abs(stein_constant_exact(0.25) - -9.05709928164040720) < 1e-12);
    CHECK(std::abs(stein_constant_exact(0.5) - -5.01325654926200100) < 1e-12);
    CHECK(std::abs(stein_constant_exact(0.75) - -3.69989558425396796) < 1e-12);
    CHECK(std::abs(stein_constant_printed(0.25) - -14.6605561796747734) < 1e-11);
    CHECK(std::abs(stein_constant_printed(0.5) - -6.93200368073907985) < 1e-12);
    CHECK(std::abs(stein_constant_printed(0.75) - -4.54917338867946054) < 1e-12);
    CHECK_THROWS_AS(stein_constant_exact(1.0), InvalidArgument);
    CHECK_THROWS_AS(stein_constant_exact(0.0), InvalidArgument);
}

TEST_CASE("Stein derivative approximates the Riesz derivative") {
    const Grid1D g = default_grid();
    const GridFunction u = gaussian(g);
    const GridFunction s = sample(PresetDatum::sech(1.0, 1.0), g).function;
    for (double alpha : {0.25, 0.5, 0.75}) {
        CAPTURE(alpha);
        const double cg = calibrate_stein_constant(u, alpha);
        const double cs = calibrate_stein_constant(s, alpha);
        CHECK(std::abs(cg - cs) / std::abs(cg) < 1e-2);
        CHECK(std::abs(cg - stein_constant_exact(alpha)) / std::abs(stein_constant_exact(alpha)) < 1e-2);

        SteinKernelSpec spec;
        spec.alpha = alpha;
        spec.calibrated_value = cg;
        const SteinResult r = stein_derivative(u, spec);
        CHECK(r.c_alpha == cg);
        CHECK(relative_l2(r.derivative, riesz_derivative(u, alpha)) < 1e-2);

        spec.normalization = SteinKernelSpec::Normalization::Exact;
        CHECK(relative_l2(stein_derivative(u, spec).derivative, riesz_derivative(u, alpha)) < 2e-2);
    }
}

TEST_CASE("Stein derivative edge cases") {
    const Grid1D g = default_grid();
    SteinKernelSpec spec;
    spec.alpha = 1.2;
    CHECK_THROWS_AS(spec.validate(g), InvalidArgument);
    spec.alpha = 0.5;
    spec.epsilon = 2.0 * g.dx();
    CHECK_THROWS_AS(spec.validate(g), InvalidArgument);

    CHECK_THROWS_AS(calibrate_stein_constant(GridFunction(g), 0.5), ZeroData);

    SteinKernelSpec ok;
    ok.normalization = SteinKernelSpec::Normalization::Exact;
    const SteinResult zero = stein_derivative(GridFunction::from_real(g, std::vector<double>(g.size(), 0.0)), ok);
    CHECK(l2_norm(zero.derivative) == 0.0);

    // Constants are annihilated by the difference kernel.
    const SteinResult c = stein_derivative(GridFunction::from_real(g, std::vector<double>(g.size(), 2.0)), ok);
    CHECK(sup_norm(c.derivative) < 1e-12);
}

TEST_CASE("Stein integral converges with resolution") {
    double prev = 1.0;
    for (std::size_t n : {256u, 512u, 1024u}) {
        const Grid1D g(n, 100.0);
        const GridFunction u = gaussian(g);
        const double c = calibrate_stein_constant(u, 0.5);
        const GridFunction s = (1.0 / c) * stein_integral(u, 0.5);
        const double err = relative_l2(s, riesz_derivative(u, 0.5));
        CHECK(err < prev);
        prev = err;
    }
}

TEST_CASE("norm equivalence report") {
    const Grid1D g = default_grid();
    const NormEquivalenceReport z = norm_equivalence_report(GridFunction(g), 0.5, 2.0);
    CHECK(z.ratio == 1.0);
    for (double p : {2.0, 4.0}) {
        for (double w : {0.5, 1.0, 3.0}) {
            const NormEquivalenceReport r = norm_equivalence_report(gaussian(g, 1.0, w), 0.5, p);
            CHECK(r.ratio > 0.3);
            CHECK(r.ratio < 3.0);
        }
    }
    // p = 2: ||J^a f|| <= ||f|| + ||D^a f|| exactly, since (1 + xi^2)^(a/2) <= 1 + |xi|^a.
    const NormEquivalenceReport two = norm_equivalence_report(gaussian(g), 0.5, 2.0);
    CHECK(two.ratio <= 1.0);
    CHECK_THROWS_AS(norm_equivalence_report(gaussian(g), 0.5, 1.0), InvalidArgument);
}
