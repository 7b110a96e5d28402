#include "dispersa/norms.hpp"

#include <algorithm>
#include <cmath>

#include "dispersa/fourier.hpp"
#include "dispersa/fractional.hpp"
#include "dispersa/propagators.hpp"

namespace dispersa {

void WeightedNormSpec::validate() const {
    if (!std::isfinite(s)) throw InvalidArgument("WeightedNormSpec: s must be finite");
    if (!(r >= 0.0) || !std::isfinite(r)) throw InvalidArgument("WeightedNormSpec: r must be >= 0");
}

double weighted_norm(const GridFunction& f, const WeightedNormSpec& spec, Warnings* warnings) {
    spec.validate();
    const double sobolev = spec.s == 0.0 ? l2_norm(f) : l2_norm(bessel_derivative(f, spec.s));
    const double weighted = spec.r == 0.0 ? l2_norm(f) : l2_norm(apply_weight(f, spec.r));
    if (warnings && spec.r > 0.0) {
        check_edge_decay(f, "weighted_norm", *warnings, 1e-8);
        check_taper_zone(f, "weighted_norm", *warnings);
    }
    return sobolev + weighted;
}

namespace {

constexpr double kUnderflow = 1e-300;

// (sum_i weight_i |v_i|^p)^(1/p), scaled by the max to keep high powers finite.
double weighted_lp(const std::vector<double>& v, const std::vector<double>& weight, double p) {
    double top = 0.0;
    for (double x : v) top = std::max(top, x);
    if (std::isinf(p) || top == 0.0) return top;
    double sum = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] < kUnderflow || weight[i] == 0.0) continue;
        sum += weight[i] * std::pow(v[i] / top, p);
    }
    return top * std::pow(sum, 1.0 / p);
}

std::vector<double> trapezoid_weights(std::size_t count, double dt) {
    std::vector<double> w(count, dt);
    if (count == 1) {
        w[0] = 0.0;
    } else if (count > 1) {
        w.front() = 0.5 * dt;
        w.back() = 0.5 * dt;
    }
    return w;
}

void check_exponent(double e, const char* name) {
    if (!(e >= 1.0)) throw InvalidArgument(std::string("mixed_norm: ") + name + " must lie in [1, inf]");
}

}  // namespace

double mixed_norm(const SpaceTimeField& w, double p, double q, MixedOrder order) {
    check_exponent(p, "p");
    check_exponent(q, "q");
    if (w.empty()) return 0.0;
    const std::size_t frames = w.size();
    const std::size_t n = w.grid().size();
    const std::vector<double> tw = trapezoid_weights(frames, w.dt());
    const std::vector<double> xw(n, w.grid().dx());

    if (order == MixedOrder::TOuter) {
        std::vector<double> inner(frames);
        std::vector<double> column(n);
        for (std::size_t m = 0; m < frames; ++m) {
            for (std::size_t j = 0; j < n; ++j) column[j] = std::abs(w[m][j]);
            inner[m] = weighted_lp(column, xw, p);
        }
        return weighted_lp(inner, tw, q);
    }
    std::vector<double> inner(n);
    std::vector<double> row(frames);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t m = 0; m < frames; ++m) row[m] = std::abs(w[m][j]);
        inner[j] = weighted_lp(row, tw, q);
    }
    return weighted_lp(inner, xw, p);
}

SpaceTimeField mu_window(const SpaceTimeField& w, double T, TimeWindow* window) {
    if (!(T >= 0.0)) throw InvalidArgument("mu norms: T must be >= 0");
    const double slack = 1e-9 * w.dt();
    const double from = w.t0() < -slack ? -T : 0.0;
    SpaceTimeField out = w.window(from, T);
    if (window) *window = {from, T, out.size()};
    return out;
}

namespace {

GridFunction d14(const GridFunction& f) {
    return multiplier_apply(f, [](double xi) { return Complex(std::pow(std::abs(xi), 0.25), 0.0); });
}

GridFunction d14_dx(const GridFunction& f) {
    return multiplier_apply(f, [](double xi) { return Complex(0.0, std::pow(std::abs(xi), 0.25) * xi); });
}

GridFunction dx(const GridFunction& f) { return spectral_derivative(f, 1); }

}  // namespace

Mu1Terms mu1_terms(const SpaceTimeField& w, double T) {
    const SpaceTimeField v = mu_window(w, T);
    const SpaceTimeField dv = v.map(d14);
    const SpaceTimeField xv = v.map(dx);
    const SpaceTimeField dxv = v.map(d14_dx);
    Mu1Terms terms;
    terms.d14_linf_l2 = mixed_norm(dv, 2.0, kInf, MixedOrder::TOuter);
    terms.dx_l20_l52 = mixed_norm(xv, 20.0, 2.5, MixedOrder::XOuter);
    terms.d14_l5_l10 = mixed_norm(dv, 5.0, 10.0, MixedOrder::XOuter);
    terms.d14dx_linf_l2 = mixed_norm(dxv, kInf, 2.0, MixedOrder::XOuter);
    terms.w_l4_linf = mixed_norm(v, 4.0, kInf, MixedOrder::XOuter);
    return terms;
}

Mu2Extra mu2_extra(const SpaceTimeField& w, double T) {
    const SpaceTimeField v = mu_window(w, T);
    Mu2Extra extra;
    extra.w_linf_l2 = mixed_norm(v, 2.0, kInf, MixedOrder::TOuter);
    extra.dx_linf_l2 = mixed_norm(v.map(dx), kInf, 2.0, MixedOrder::XOuter);
    extra.w_l6_linf = mixed_norm(v, kInf, 6.0, MixedOrder::TOuter);
    return extra;
}

double mu1(const SpaceTimeField& w, double T) { return mu1_terms(w, T).total(); }

double mu2(const SpaceTimeField& w, double T) { return mu1(w, T) + mu2_extra(w, T).total(); }

double mu3(const SpaceTimeField& w, double T, double r) {
    if (!(r >= 0.0)) throw InvalidArgument("mu3: r must be >= 0");
    const SpaceTimeField weighted = mu_window(w, T).map([r](const GridFunction& f) { return apply_weight(f, r); });
    return mu2(w, T) + mixed_norm(weighted, 2.0, kInf, MixedOrder::TOuter);
}

}  // namespace dispersa
