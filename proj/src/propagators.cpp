#include "dispersa/propagators.hpp"

#include <cmath>
#include <numbers>

#include "dispersa/fourier.hpp"
#include "dispersa/fractional.hpp"

namespace dispersa {

namespace {

void require_alpha(double alpha, const char* where) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw InvalidArgument(std::string(where) + ": alpha must lie in (0, 1), got " +
                              short_number(alpha));
    }
}

Multiplier group_multiplier(const PhasePolynomial& phase) {
    return [phase](double xi) { return std::polar(1.0, phase.phase(xi)); };
}

}  // namespace

PhasePolynomial PhasePolynomial::dgbo(double t, double a) {
    if (!(a >= 0.0 && a < 1.0)) {
        throw InvalidArgument("DGBO dispersion parameter a must lie in [0, 1), got " +
                              short_number(a));
    }
    return {t, Symbol::Dgbo, a};
}

double PhasePolynomial::dispersion(double xi) const {
    switch (symbol) {
        case Symbol::Airy:
            return xi * xi * xi;
        case Symbol::Dgbo:
            return std::pow(std::abs(xi), 1.0 + a) * xi;
    }
    return 0.0;
}

GridFunction propagate(const GridFunction& f, const PhasePolynomial& phase) {
    if (phase.t == 0.0) return f;
    return multiplier_apply(f, group_multiplier(phase));
}

GridFunction airy_propagate(const GridFunction& f, double t) {
    return propagate(f, PhasePolynomial::airy(t));
}

GridFunction dgbo_propagate(const GridFunction& f, double t, double a) {
    return propagate(f, PhasePolynomial::dgbo(t, a));
}

GammaResult gamma_apply(const GridFunction& f, double t) {
    GammaResult result{GridFunction(f.grid()), {}};
    check_edge_decay(f, "gamma_apply input", result.warnings, 1e-10);
    const Grid1D& grid = f.grid();
    GridFunction& out = result.value;
    for (std::size_t j = 0; j < grid.size(); ++j) out[j] = grid.point(j) * f[j];
    if (t != 0.0) {
        // -3t d_xx has symbol 3t xi^2.
        const GridFunction curvature =
            multiplier_apply(f, [t](double xi) { return Complex(3.0 * t * xi * xi); });
        out += curvature;
    }
    out.set_real_valued(f.real_valued());
    return result;
}

IdentityResidualReport gamma_commutation_residual(const GridFunction& v0, double t) {
    IdentityResidualReport report;
    report.t = t;
    report.grid = v0.grid().describe();

    GammaResult lhs = gamma_apply(airy_propagate(v0, t), t);
    report.warnings.merge(lhs.warnings);
    GammaResult weighted = gamma_apply(v0, 0.0);
    report.warnings.merge(weighted.warnings);
    const GridFunction rhs = airy_propagate(weighted.value, t);

    report.residual_l2 = l2_norm(lhs.value - rhs);
    report.lhs_l2 = l2_norm(weighted.value);
    return report;
}

std::vector<double> tapered_weight(const Grid1D& grid, double r) {
    const std::size_t n = grid.size();
    const auto ramp = static_cast<std::size_t>(std::ceil(kWeightTaperFraction * static_cast<double>(n)));
    std::vector<double> w(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double x = std::abs(grid.point(j));
        w[j] = r == 0.0 ? 1.0 : std::pow(x, r);
        // Distance, in points, from the nearer end of the grid.
        const std::size_t from_edge = std::min(j, n - 1 - j);
        if (from_edge < ramp) {
            const double s = static_cast<double>(from_edge) / static_cast<double>(ramp);
            w[j] *= 0.5 - 0.5 * std::cos(std::numbers::pi * s);
        }
    }
    return w;
}

GridFunction apply_weight(const GridFunction& f, double r) {
    const std::vector<double> w = tapered_weight(f.grid(), r);
    GridFunction out = f;
    for (std::size_t j = 0; j < f.size(); ++j) out[j] *= w[j];
    return out;
}

GridFunction project_weight(const GridFunction& f, double r, std::size_t oversample) {
    const Grid1D& grid = f.grid();
    const std::size_t n = grid.size();
    const std::size_t fine_n = n * oversample;
    const Grid1D fine(fine_n, grid.length());
    // Fourier-series coefficients of the tapered weight, c_j = (1/L) int w e^{-i xi_j x} dx,
    // from a fine-grid DFT. x_0 = -L/2 contributes (-1)^j.
    const std::vector<double> w = tapered_weight(fine, r);
    const Spectrum ws = forward_transform(GridFunction::from_real(fine, w));
    const double scale = 1.0 / std::sqrt(static_cast<double>(fine_n));
    // The trapezoid sum over a grid through the cusp of |x|^r at x = 0 is off
    // by 2 zeta(-r) h^(1+r) g(0) + zeta(-r-2) h^(3+r) g''(0) (generalized
    // Euler-Maclaurin), with g = taper * exp(-i xi x); remove both terms.
    const double h = fine.dx();
    const double cusp0 = r > 0.0 ? 2.0 * std::riemann_zeta(-r) * std::pow(h, 1.0 + r) : 0.0;
    const double cusp2 = r > 0.0 ? std::riemann_zeta(-r - 2.0) * std::pow(h, 3.0 + r) : 0.0;
    auto weight_coeff = [&](long j) {
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        const double xi = grid.dxi() * static_cast<double>(j);
        const Complex raw = sign * scale * ws[fine.index_of_mode(j)];
        return raw - (cusp0 - cusp2 * xi * xi) / grid.length();
    };
    // Same convention for f on the coarse grid, in increasing-mode order.
    const Spectrum fs = forward_transform(f);
    const double fscale = 1.0 / std::sqrt(static_cast<double>(n));
    const long half = static_cast<long>(n / 2);
    std::vector<Complex> fc(n), wc(2 * n);
    for (long m = -half; m < half; ++m) {
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        fc[static_cast<std::size_t>(m + half)] = sign * fscale * fs[grid.index_of_mode(m)];
    }
    for (long d = -static_cast<long>(n) + 1; d < static_cast<long>(n); ++d) {
        wc[static_cast<std::size_t>(d + static_cast<long>(n))] = weight_coeff(d);
    }
    Spectrum out(grid);
    for (long k = -half; k < half; ++k) {
        Complex acc = 0.0;
        for (long m = -half; m < half; ++m) {
            acc += wc[static_cast<std::size_t>(k - m + static_cast<long>(n))] *
                   fc[static_cast<std::size_t>(m + half)];
        }
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        out[grid.index_of_mode(k)] = sign * acc / fscale;
    }
    // The unpaired Nyquist mode would carry cusp content that odd multipliers drop.
    out[n / 2] = 0.0;
    return inverse_transform(out, f.real_valued());
}

void check_taper_zone(const GridFunction& f, const char* label, Warnings& out, double tol) {
    const std::size_t n = f.size();
    const auto ramp = static_cast<std::size_t>(std::ceil(kWeightTaperFraction * static_cast<double>(n)));
    double outer = 0.0;
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double v = std::norm(f[j]);
        total += v;
        if (std::min(j, n - 1 - j) < ramp) outer += v;
    }
    if (total == 0.0) return;
    const double fraction = std::sqrt(outer / total);
    if (fraction > tol) {
        out.add(std::string("taper: ") + label + " has relative L2 mass " + short_number(fraction) +
                " inside the weight taper zone");
    }
}

GridFunction FrequencySamples::to_physical(bool real_valued) const {
    return inverse_continuous_transform(grid, values, real_valued);
}

double FrequencySamples::l2_norm() const {
    double sum = 0.0;
    for (const auto& v : values) sum += std::norm(v);
    return std::sqrt(sum * grid.dxi() / (2.0 * std::numbers::pi));
}

FrequencySamples to_frequency(const GridFunction& f) {
    return {f.grid(), continuous_transform(f)};
}

FrequencySamples phi_operator(const FrequencySamples& fhat, double alpha,
                              const PhasePolynomial& phase, std::optional<double> c_alpha) {
    require_alpha(alpha, "phi_operator");
    const Grid1D& grid = fhat.grid;
    const std::size_t n = grid.size();
    const double dxi = grid.dxi();
    const double c = c_alpha ? *c_alpha : stein_constant_exact(alpha);

    FrequencySamples out{grid, std::vector<Complex>(n, 0.0)};
    if (phase.t == 0.0) return out;

    std::vector<Complex> rotor(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = dxi * (static_cast<double>(i) - static_cast<double>(n / 2));
        rotor[i] = std::polar(1.0, phase.phase(xi));
    }
    // kernel[m] = dxi / |m dxi|^(1+alpha); the eta = 0 cell is excluded.
    std::vector<double> kernel(n, 0.0);
    for (std::size_t m = 1; m < n; ++m) {
        kernel[m] = dxi / std::pow(static_cast<double>(m) * dxi, 1.0 + alpha);
    }

    const auto& f = fhat.values;
    for (std::size_t i = 0; i < n; ++i) {
        const Complex back = std::conj(rotor[i]);
        Complex acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const std::size_t m = j > i ? j - i : i - j;
            acc += kernel[m] * (rotor[j] * back - 1.0) * f[j];
        }
        out.values[i] = acc / c;
    }
    return out;
}

FrequencySamples phi_operator(const GridFunction& u0, double t, double alpha,
                              const PhasePolynomial& phase) {
    PhasePolynomial p = phase;
    p.t = t;
    return phi_operator(to_frequency(u0), alpha, p);
}

namespace {

struct WeightedTerms {
    GridFunction lhs;         // |x|^a U(t) u0
    GridFunction free_term;   // U(t)(|x|^a u0)
    GridFunction correction;  // (Phi(u0hat))^vee, before propagation
    Warnings warnings;
};

WeightedTerms weighted_terms(const GridFunction& u0, double t, double alpha) {
    require_alpha(alpha, "weighted_identity_residual");
    WeightedTerms terms{GridFunction(u0.grid()), GridFunction(u0.grid()), GridFunction(u0.grid()), {}};
    const GridFunction evolved = airy_propagate(u0, t);
    check_edge_decay(evolved, "U(t)u0", terms.warnings, 1e-8);
    check_taper_zone(evolved, "U(t)u0", terms.warnings);
    check_taper_zone(u0, "u0", terms.warnings);

    terms.lhs = project_weight(evolved, alpha);
    terms.free_term = airy_propagate(project_weight(u0, alpha), t);
    terms.correction = phi_operator(to_frequency(u0), alpha, PhasePolynomial::airy(t)).to_physical();
    return terms;
}

}  // namespace

IdentityResidualReport weighted_identity_residual(const GridFunction& u0, double t, double alpha) {
    WeightedTerms terms = weighted_terms(u0, t, alpha);
    IdentityResidualReport report;
    report.t = t;
    report.alpha = alpha;
    report.grid = u0.grid().describe();
    report.taper_fraction = kWeightTaperFraction;
    report.warnings = terms.warnings;

    const GridFunction rhs = terms.free_term + airy_propagate(terms.correction, t);
    report.residual_l2 = l2_norm(terms.lhs - rhs);
    report.lhs_l2 = l2_norm(terms.lhs);

    const double scale = (1.0 + std::abs(t)) * (l2_norm(u0) + l2_norm(riesz_derivative(u0, 2.0 * alpha)));
    report.bound_ratio = scale == 0.0 ? 0.0 : l2_norm(terms.correction) / scale;
    return report;
}

IdentityResidualReport weighted_identity_residual_beta(const GridFunction& u0, double t,
                                                       double alpha, double beta) {
    require_alpha(alpha, "weighted_identity_residual_beta");
    if (!(beta > 0.0 && beta < alpha)) {
        throw InvalidArgument("weighted_identity_residual_beta: beta must lie in (0, alpha), got " +
                              short_number(beta));
    }
    WeightedTerms terms = weighted_terms(u0, t, alpha);
    IdentityResidualReport report;
    report.t = t;
    report.alpha = alpha;
    report.beta = beta;
    report.grid = u0.grid().describe();
    report.taper_fraction = kWeightTaperFraction;
    report.warnings = terms.warnings;

    const GridFunction lhs = riesz_derivative(terms.lhs, beta);
    const GridFunction correction = riesz_derivative(terms.correction, beta);
    // D^b commutes with U(t), so U(t) D^b (|x|^a u0) = D^b U(t)(|x|^a u0).
    const GridFunction rhs =
        airy_propagate(riesz_derivative(project_weight(u0, alpha), beta), t) + airy_propagate(correction, t);
    report.residual_l2 = l2_norm(lhs - rhs);
    report.lhs_l2 = l2_norm(lhs);

    const double scale =
        (1.0 + std::abs(t)) * (l2_norm(u0) + l2_norm(riesz_derivative(u0, beta + 2.0 * alpha)));
    report.bound_ratio = scale == 0.0 ? 0.0 : l2_norm(correction) / scale;
    return report;
}

double strichartz_ratio(const GridFunction& u0, double t_window, int n_times) {
    const double norm = l2_norm(u0);
    if (norm == 0.0) throw ZeroData("strichartz_ratio: u0 must be nonzero");
    if (!(t_window > 0.0) || n_times < 2) {
        throw InvalidArgument("strichartz_ratio: need t_window > 0 and n_times >= 2");
    }
    const Spectrum s0 = forward_transform(u0);
    const double dt = 2.0 * t_window / static_cast<double>(n_times - 1);
    double integral = 0.0;
    for (int i = 0; i < n_times; ++i) {
        const double t = -t_window + dt * static_cast<double>(i);
        const Spectrum st = multiplier_apply(s0, group_multiplier(PhasePolynomial::airy(t)));
        const double sup = sup_norm(inverse_transform(st));
        const double weight = (i == 0 || i == n_times - 1) ? 0.5 : 1.0;
        integral += weight * std::pow(sup, 6.0);
    }
    integral *= dt;
    return std::pow(integral, 1.0 / 6.0) / norm;
}

}  // namespace dispersa
