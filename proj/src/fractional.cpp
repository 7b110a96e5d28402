#include "dispersa/fractional.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "dispersa/fourier.hpp"
#include "dispersa/presets.hpp"

namespace dispersa {

namespace {

constexpr double kMeanTolerance = 1e-12;

void require_alpha(double alpha, const char* where) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw InvalidArgument(std::string(where) + ": alpha must lie in (0, 1), got " +
                              short_number(alpha));
    }
}

double inner_real(const GridFunction& a, const GridFunction& b) {
    double sum = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) sum += (std::conj(a[j]) * b[j]).real();
    return sum * a.grid().dx();
}

}  // namespace

GridFunction riesz_derivative(const GridFunction& f, double s) {
    if (s == 0.0) return f;
    Spectrum spec = forward_transform(f);
    // Mean of the samples relative to their size; the unitary zero mode is
    // sqrt(n) * mean.
    const double n = static_cast<double>(f.size());
    if (s < 0.0) {
        const double mean = std::abs(spec[0]) / std::sqrt(n);
        if (mean >= kMeanTolerance) {
            throw NegativeOrderOnNonzeroMean("riesz_derivative: order " + short_number(s) +
                                             " < 0 needs a mean-free input, mean = " +
                                             short_number(mean));
        }
    }
    spec = multiplier_apply(spec, [s](double xi) {
        return xi == 0.0 ? Complex(0.0) : Complex(std::pow(std::abs(xi), s));
    });
    return inverse_transform(spec, f.real_valued());
}

GridFunction bessel_derivative(const GridFunction& f, double s) {
    if (s == 0.0) return f;
    return multiplier_apply(f, [s](double xi) { return Complex(std::pow(1.0 + xi * xi, 0.5 * s)); });
}

GridFunction hilbert_transform(const GridFunction& f) {
    return multiplier_apply(
        f,
        [](double xi) {
            if (xi == 0.0) return Complex(0.0);
            return Complex(0.0, xi > 0.0 ? -1.0 : 1.0);
        },
        NyquistPolicy::Zero);
}

double stein_constant_exact(double alpha) {
    require_alpha(alpha, "stein_constant_exact");
    return -2.0 * std::tgamma(1.0 - alpha) * std::cos(0.5 * std::numbers::pi * alpha) / alpha;
}

double stein_constant_printed(double alpha) {
    require_alpha(alpha, "stein_constant_printed");
    return std::sqrt(std::numbers::pi) * std::pow(2.0, -alpha) * std::tgamma(-0.5 * alpha) /
           std::tgamma(1.5);
}

void SteinKernelSpec::validate(const Grid1D& grid) const {
    require_alpha(alpha, "SteinKernelSpec");
    if (epsilon < 0.0) throw InvalidArgument("SteinKernelSpec: epsilon must be > 0");
    if (epsilon > grid.dx() * (1.0 + 1e-12)) {
        throw InvalidArgument("SteinKernelSpec: epsilon must not exceed the grid spacing");
    }
    if (normalization == Normalization::Calibrated && calibrated_value &&
        !(std::isfinite(*calibrated_value) && *calibrated_value != 0.0)) {
        throw InvalidArgument("SteinKernelSpec: calibrated constant must be finite and nonzero");
    }
}

namespace {

double periodized_kernel(double y, double period, double alpha) {
    // sum_p |y + p L|^(-1-alpha) for 0 < y < L: direct sum over the nearest
    // images, Euler-Maclaurin for the remainder of each one-sided series.
    const double s = 1.0 + alpha;
    constexpr int kDirect = 64;
    auto one_sided = [&](double a) {
        double sum = 0.0;
        for (int p = 0; p < kDirect; ++p) sum += std::pow(a + p * period, -s);
        const double z = a + kDirect * period;
        sum += std::pow(z, 1.0 - s) / (period * (s - 1.0)) + 0.5 * std::pow(z, -s) +
               s * period * std::pow(z, -s - 1.0) / 12.0;
        return sum;
    };
    return one_sided(y) + one_sided(period - y);
}

}  // namespace

GridFunction stein_integral(const GridFunction& f, double alpha, double epsilon) {
    require_alpha(alpha, "stein_integral");
    const Grid1D& grid = f.grid();
    const std::size_t n = grid.size();
    const double dx = grid.dx();
    const double eps = epsilon > 0.0 ? epsilon : dx;

    // Offsets m and n - m are the same periodic shift seen from both sides,
    // so the periodized kernel already covers the whole line.
    std::vector<double> weight(n, 0.0);
    for (std::size_t m = 1; m < n; ++m) {
        const double y = static_cast<double>(m) * dx;
        const double nearest = std::min(y, grid.length() - y);
        if (nearest >= eps * (1.0 - 1e-12)) weight[m] = dx * periodized_kernel(y, grid.length(), alpha);
    }

    const auto v = f.values();
    GridFunction out(grid);
    for (std::size_t j = 0; j < n; ++j) {
        Complex acc = 0.0;
        const Complex centre = v[j];
        for (std::size_t m = 1; m < n; ++m) {
            const std::size_t idx = j + m < n ? j + m : j + m - n;
            acc += weight[m] * (v[idx] - centre);
        }
        out[j] = acc;
    }
    out.set_real_valued(f.real_valued());
    return out;
}

double calibrate_stein_constant(const GridFunction& f, double alpha, double epsilon) {
    const GridFunction unnormalized = stein_integral(f, alpha, epsilon);
    const GridFunction reference = riesz_derivative(f, alpha);
    const double r = l2_norm(reference);
    if (r == 0.0) throw ZeroData("calibrate_stein_constant: datum has no fractional derivative");
    const double sign = inner_real(unnormalized, reference) < 0.0 ? -1.0 : 1.0;
    return sign * l2_norm(unnormalized) / r;
}

double default_calibrated_constant(double alpha) {
    require_alpha(alpha, "default_calibrated_constant");
    static std::mutex mutex;
    static std::map<double, double> cache;
    {
        std::lock_guard<std::mutex> lock(mutex);
        if (auto it = cache.find(alpha); it != cache.end()) return it->second;
    }
    const Grid1D grid = default_grid();
    const double c =
        calibrate_stein_constant(sample(PresetDatum::gaussian(1.0, 1.0), grid).function, alpha);
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(alpha, c);
    return c;
}

SteinResult stein_derivative(const GridFunction& f, const SteinKernelSpec& spec) {
    spec.validate(f.grid());
    SteinResult result{GridFunction(f.grid()), 0.0, {}};
    check_edge_decay(f, "stein_derivative input", result.warnings, 1e-8);
    switch (spec.normalization) {
        case SteinKernelSpec::Normalization::Exact:
            result.c_alpha = stein_constant_exact(spec.alpha);
            break;
        case SteinKernelSpec::Normalization::Printed:
            result.c_alpha = stein_constant_printed(spec.alpha);
            break;
        case SteinKernelSpec::Normalization::Calibrated:
            result.c_alpha = spec.calibrated_value ? *spec.calibrated_value
                                                   : default_calibrated_constant(spec.alpha);
            break;
    }
    result.derivative = stein_integral(f, spec.alpha, spec.epsilon);
    result.derivative *= 1.0 / result.c_alpha;
    return result;
}

NormEquivalenceReport norm_equivalence_report(const GridFunction& f, double alpha, double p) {
    require_alpha(alpha, "norm_equivalence_report");
    if (!(p > 1.0) || std::isinf(p)) {
        throw InvalidArgument("norm_equivalence_report: p must lie in (1, inf)");
    }
    NormEquivalenceReport report;
    report.lhs = lp_norm(bessel_derivative(f, alpha), p);
    report.rhs = lp_norm(f, p) + lp_norm(riesz_derivative(f, alpha), p);
    report.ratio = report.rhs == 0.0 ? 1.0 : report.lhs / report.rhs;
    return report;
}

}  // namespace dispersa
