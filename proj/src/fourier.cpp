#include "dispersa/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <utility>

namespace dispersa {

namespace {

// The FFTW planner is not thread-safe; executing an existing plan on new
// arrays is.
class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(std::size_t n, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_pair(n, sign);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        std::vector<Complex> in(n), out(n);
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n),
                                          reinterpret_cast<fftw_complex*>(in.data()),
                                          reinterpret_cast<fftw_complex*>(out.data()), sign,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

void run_dft(std::span<const Complex> in, std::span<Complex> out, int sign) {
    fftw_plan plan = plan_cache().get(in.size(), sign);
    // FFTW does not write to `in` for out-of-place c2c transforms.
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
    const double scale = 1.0 / std::sqrt(static_cast<double>(in.size()));
    for (auto& v : out) v *= scale;
}

bool zero_nyquist(const Multiplier& m, double xi_nyquist, NyquistPolicy policy) {
    switch (policy) {
        case NyquistPolicy::Keep:
            return false;
        case NyquistPolicy::Zero:
            return true;
        case NyquistPolicy::Auto:
            break;
    }
    const Complex lo = m(xi_nyquist);
    const Complex hi = m(-xi_nyquist);
    return std::abs(lo - hi) > 1e-14 * std::max(1.0, std::abs(lo));
}

void apply_in_place(const Grid1D& grid, std::span<Complex> coeffs, const Multiplier& m,
                    NyquistPolicy nyquist) {
    const std::size_t n = grid.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Complex factor = m(grid.frequency(k));
        if (!std::isfinite(factor.real()) || !std::isfinite(factor.imag())) {
            throw InvalidArgument("multiplier is not finite at xi = " +
                                  short_number(grid.frequency(k)));
        }
        coeffs[k] *= factor;
    }
    if (zero_nyquist(m, grid.frequency(n / 2), nyquist)) coeffs[n / 2] = 0.0;
}

}  // namespace

Spectrum forward_transform(const GridFunction& f) {
    Spectrum s(f.grid());
    run_dft(f.values(), s.coefficients(), FFTW_FORWARD);
    return s;
}

GridFunction inverse_transform(const Spectrum& s, bool real_valued) {
    GridFunction f(s.grid());
    run_dft(s.coefficients(), f.values(), FFTW_BACKWARD);
    if (real_valued) {
        for (auto& v : f.values()) v = v.real();
        f.set_real_valued(true);
    }
    return f;
}

Spectrum multiplier_apply(const Spectrum& s, const Multiplier& m, NyquistPolicy nyquist) {
    Spectrum out = s;
    apply_in_place(out.grid(), out.coefficients(), m, nyquist);
    return out;
}

GridFunction multiplier_apply(const GridFunction& f, const Multiplier& m, NyquistPolicy nyquist) {
    Spectrum s = forward_transform(f);
    apply_in_place(s.grid(), s.coefficients(), m, nyquist);
    // A Hermitian multiplier keeps real data real; project away the roundoff.
    const bool keep_real = f.real_valued() && is_hermitian(f.grid(), m);
    return inverse_transform(s, keep_real);
}

bool is_hermitian(const Grid1D& grid, const Multiplier& m, double tol) {
    const std::size_t n = grid.size();
    for (std::size_t k = 1; k < n / 2; ++k) {
        const double xi = grid.frequency(k);
        const Complex a = m(xi);
        const Complex b = m(-xi);
        if (std::abs(b - std::conj(a)) > tol * std::max(1.0, std::abs(a))) return false;
    }
    const Complex zero = m(0.0);
    return std::abs(zero.imag()) <= tol * std::max(1.0, std::abs(zero));
}

GridFunction spectral_derivative(const GridFunction& f, int order) {
    return multiplier_apply(f, [order](double xi) { return std::pow(Complex(0.0, xi), order); });
}

std::vector<Complex> continuous_transform(const GridFunction& f) {
    const Grid1D& grid = f.grid();
    const std::size_t n = grid.size();
    const Spectrum s = forward_transform(f);
    const double scale = grid.dx() * std::sqrt(static_cast<double>(n));
    std::vector<Complex> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const long m = static_cast<long>(i) - static_cast<long>(n / 2);
        // x_0 = -L/2 contributes the phase exp(i L xi / 2) = (-1)^m.
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        out[i] = sign * scale * s[grid.index_of_mode(m)];
    }
    return out;
}

GridFunction inverse_continuous_transform(const Grid1D& grid, std::span<const Complex> fhat,
                                          bool real_valued) {
    const std::size_t n = grid.size();
    if (fhat.size() != n) throw InvalidArgument("inverse_continuous_transform: size mismatch");
    Spectrum s(grid);
    const double scale = 1.0 / (grid.dx() * std::sqrt(static_cast<double>(n)));
    for (std::size_t i = 0; i < n; ++i) {
        const long m = static_cast<long>(i) - static_cast<long>(n / 2);
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        s[grid.index_of_mode(m)] = sign * scale * fhat[i];
    }
    return inverse_transform(s, real_valued);
}

double edge_ratio(const GridFunction& f) {
    const double peak = sup_norm(f);
    if (peak == 0.0) return 0.0;
    const auto v = f.values();
    return std::max(std::abs(v.front()), std::abs(v.back())) / peak;
}

bool check_edge_decay(const GridFunction& f, const char* label, Warnings& out, double tol) {
    const double ratio = edge_ratio(f);
    if (ratio <= tol) return true;
    out.add(std::string("wrap-around: ") + label + " edge/peak ratio " + short_number(ratio) +
            " exceeds " + short_number(tol));
    return false;
}

}  // namespace dispersa
