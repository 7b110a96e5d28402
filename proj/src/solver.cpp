#include "dispersa/solver.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "dispersa/fourier.hpp"
#include "dispersa/fractional.hpp"
#include "dispersa/norms.hpp"

namespace dispersa {

void SolverConfig::validate() const {
    if (k < 1) throw InvalidArgument("solver.k must be a positive integer");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("solver.dt must be positive");
    if (!(T > 0.0) || !std::isfinite(T)) throw InvalidArgument("solver.T must be positive");
    if (n_picard < 1) throw InvalidArgument("solver.n_picard must be >= 1");
    if (!(picard_tol > 0.0)) throw InvalidArgument("solver.picard_tol must be positive");
    if (!(c0 > 0.0) || !std::isfinite(c0)) throw InvalidArgument("solver.c0 must be positive");
    if (!(T_cap > 0.0)) throw InvalidArgument("solver.T_cap must be positive");
    if (!(blowup_ceiling > 0.0)) throw InvalidArgument("solver.blowup_ceiling must be positive");
}

double d14_norm(const GridFunction& f) { return l2_norm(riesz_derivative(f, 0.25)); }

double local_existence_time(double d14, const SolverConfig& cfg) {
    if (d14 == 0.0) return cfg.T_cap;
    const double t = 1.0 / (32.0 * std::pow(cfg.c0, 6) * std::pow(d14, 4));
    return std::min(t, cfg.T_cap);
}

double local_existence_time(const GridFunction& u0, const SolverConfig& cfg) {
    return local_existence_time(d14_norm(u0), cfg);
}

namespace {

// Spectral work happens on FFT-ordered coefficient vectors with the Nyquist
// mode held at zero, matching airy_propagate.
using Coeffs = std::vector<Complex>;

struct Workspace {
    Grid1D grid;
    std::vector<double> xi;
    std::vector<double> cube;
    std::vector<bool> keep;  // 2/3 rule mask

    Workspace(const Grid1D& g, bool dealias) : grid(g), xi(g.size()), cube(g.size()), keep(g.size(), true) {
        const std::size_t n = g.size();
        const long cutoff = static_cast<long>(n) / 3;
        for (std::size_t i = 0; i < n; ++i) {
            xi[i] = g.is_nyquist(i) ? 0.0 : g.frequency(i);
            cube[i] = xi[i] * xi[i] * xi[i];
            if (g.is_nyquist(i) || (dealias && std::labs(g.mode(i)) > cutoff)) keep[i] = false;
        }
    }

    Coeffs transform(const GridFunction& f) const {
        Spectrum s = forward_transform(f);
        Coeffs c(s.coefficients().begin(), s.coefficients().end());
        c[grid.size() / 2] = 0.0;
        return c;
    }

    GridFunction physical(const Coeffs& c) const { return inverse_transform(Spectrum(grid, c), false); }

    void evolve(Coeffs& c, double t) const {
        for (std::size_t i = 0; i < c.size(); ++i) c[i] *= std::polar(1.0, t * cube[i]);
    }

    Coeffs nonlinear(const Coeffs& c, int k, bool enabled) const {
        const std::size_t n = c.size();
        if (!enabled) return Coeffs(n, 0.0);
        Coeffs dc(n);
        for (std::size_t i = 0; i < n; ++i) dc[i] = Complex(0.0, xi[i]) * c[i];
        GridFunction u = physical(c);
        const GridFunction ux = physical(dc);
        for (std::size_t j = 0; j < n; ++j) {
            Complex p = ux[j];
            for (int e = 0; e < k; ++e) p *= u[j];
            u[j] = p;
        }
        Coeffs out = transform(u);
        for (std::size_t i = 0; i < n; ++i)
            if (!keep[i]) out[i] = 0.0;
        return out;
    }
};

std::size_t step_count(double T, double dt) {
    const double m = std::round(T / dt);
    if (m < 1.0) throw InvalidArgument("solver: T must cover at least one time step");
    return static_cast<std::size_t>(m);
}

SpaceTimeField to_field(const Workspace& ws, const std::vector<Coeffs>& frames, double dt) {
    SpaceTimeField out(ws.grid, 0.0, dt);
    for (const auto& c : frames) out.push_back(ws.physical(c));
    return out;
}

SpaceTimeField real_field(const SpaceTimeField& w) {
    return w.map([](const GridFunction& f) { return f.real_part(); });
}

void require_real(const GridFunction& u0, const char* where) {
    if (!u0.real_valued()) throw InvalidArgument(std::string(where) + ": u0 must be real-valued");
}

}  // namespace

GridFunction nonlinear_term(const GridFunction& u, int k, bool dealias) {
    if (k < 1) throw InvalidArgument("nonlinear_term: k must be >= 1");
    const Workspace ws(u.grid(), dealias);
    GridFunction out = ws.physical(ws.nonlinear(ws.transform(u), k, true));
    if (u.real_valued()) out = out.real_part();
    return out;
}

PicardResult picard_solve(const GridFunction& u0, const SolverConfig& cfg) {
    cfg.validate();
    require_real(u0, "picard_solve");
    const double k14 = d14_norm(u0);
    const double t_local = local_existence_time(k14, cfg);
    if (!cfg.allow_long_time && cfg.T > t_local * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "picard_solve: T = " << cfg.T << " exceeds the local existence time " << t_local;
        throw InvalidArgument(msg.str());
    }

    const Workspace ws(u0.grid(), cfg.dealias);
    const std::size_t M = step_count(cfg.T, cfg.dt);
    const double dt = cfg.T / static_cast<double>(M);

    ContractionReport report;
    report.T_used = cfg.T;
    report.ball_radius = 2.0 * cfg.c0 * k14;

    const Coeffs base = ws.transform(u0);
    std::vector<Coeffs> free(M + 1, base);
    for (std::size_t m = 0; m <= M; ++m) ws.evolve(free[m], dt * static_cast<double>(m));

    std::vector<Coeffs> current = free;
    SpaceTimeField current_field = to_field(ws, current, dt);
    report.iterate_mu1.push_back(mu1(current_field, cfg.T));

    int rising = 0;
    for (int it = 1; it <= cfg.n_picard; ++it) {
        std::vector<Coeffs> next(M + 1);
        Coeffs sum(u0.size(), 0.0);
        Coeffs prev_g;
        for (std::size_t m = 0; m <= M; ++m) {
            const double t = dt * static_cast<double>(m);
            Coeffs g = ws.nonlinear(current[m], cfg.k, cfg.nonlinear);
            ws.evolve(g, -t);
            if (m > 0)
                for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += 0.5 * dt * (prev_g[i] + g[i]);
            Coeffs duhamel = sum;
            ws.evolve(duhamel, t);
            next[m] = free[m];
            for (std::size_t i = 0; i < sum.size(); ++i) next[m][i] -= duhamel[i];
            prev_g = std::move(g);
        }

        SpaceTimeField next_field = to_field(ws, next, dt);
        const SpaceTimeField diff = next_field - current_field;
        const double diff_mu1 = mu1(diff, cfg.T);
        const double diff_l2 = linf_l2(diff);
        report.iterate_mu1.push_back(mu1(next_field, cfg.T));
        if (!report.successive_diffs.empty()) {
            const double prev = report.successive_diffs.back();
            const double ratio = prev == 0.0 ? 0.0 : diff_mu1 / prev;
            report.contraction_ratios.push_back(ratio);
            rising = ratio > 1.0 ? rising + 1 : 0;
        }
        report.successive_diffs.push_back(diff_mu1);
        report.linf_l2_diffs.push_back(diff_l2);
        report.iterations = it;
        current = std::move(next);
        current_field = std::move(next_field);

        if (!std::isfinite(diff_l2)) throw NonConvergence("picard_solve: iterate became non-finite");
        if (rising >= 3) {
            std::ostringstream msg;
            msg << "picard_solve: contraction ratio above 1 for 3 consecutive iterations (T = " << cfg.T
                << ", iteration " << it << ")";
            throw NonConvergence(msg.str());
        }
        if (diff_l2 < cfg.picard_tol) {
            report.converged = true;
            break;
        }
    }

    report.max_imag = max_imag(current_field);
    check_edge_decay(current_field[M], "picard_solve u(T)", report.warnings, 1e-8);
    return {real_field(current_field), std::move(report)};
}

SpaceTimeField reference_solve(const GridFunction& u0, const SolverConfig& cfg) {
    cfg.validate();
    require_real(u0, "reference_solve");
    const Workspace ws(u0.grid(), cfg.dealias);
    const std::size_t M = step_count(cfg.T, cfg.dt);
    const double h = cfg.T / static_cast<double>(M);
    const std::size_t n = u0.size();

    auto rhs = [&](const Coeffs& c) {
        Coeffs out = ws.nonlinear(c, cfg.k, cfg.nonlinear);
        for (auto& v : out) v = -v;
        return out;
    };
    auto combine = [n](const Coeffs& a, double s, const Coeffs& b) {
        Coeffs out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + s * b[i];
        return out;
    };

    SpaceTimeField out(u0.grid(), 0.0, h);
    Coeffs c = ws.transform(u0);
    out.push_back(ws.physical(c).real_part());
    for (std::size_t m = 1; m <= M; ++m) {
        // Lawson RK4 in v = U(-t) u.
        const Coeffs a = rhs(c);
        Coeffs half_c = c;
        ws.evolve(half_c, 0.5 * h);
        Coeffs half_a = a;
        ws.evolve(half_a, 0.5 * h);
        const Coeffs b = rhs(combine(half_c, 0.5 * h, half_a));
        const Coeffs cc = rhs(combine(half_c, 0.5 * h, b));
        Coeffs full_c = c;
        ws.evolve(full_c, h);
        Coeffs half_cc = cc;
        ws.evolve(half_cc, 0.5 * h);
        const Coeffs d = rhs(combine(full_c, h, half_cc));

        Coeffs full_a = a;
        ws.evolve(full_a, h);
        Coeffs bc(n);
        for (std::size_t i = 0; i < n; ++i) bc[i] = b[i] + cc[i];
        ws.evolve(bc, 0.5 * h);
        for (std::size_t i = 0; i < n; ++i) c[i] = full_c[i] + h / 6.0 * (full_a[i] + 2.0 * bc[i] + d[i]);

        GridFunction u = ws.physical(c).real_part();
        const double peak = sup_norm(u);
        if (!std::isfinite(peak) || peak > cfg.blowup_ceiling) {
            const double t = h * static_cast<double>(m);
            std::ostringstream msg;
            msg << "reference_solve: sup|u| exceeded " << cfg.blowup_ceiling << " at t = " << t;
            throw BlowupDetected(msg.str(), t);
        }
        out.push_back(std::move(u));
    }
    return out;
}

double ConservedTrajectory::max_relative_l2_drift() const {
    if (l2.empty() || l2.front() == 0.0) return 0.0;
    double m = 0.0;
    for (double v : l2) m = std::max(m, std::abs(v - l2.front()) / l2.front());
    return m;
}

ConservedTrajectory conserved_quantities(const SpaceTimeField& w, int k) {
    if (k < 1) throw InvalidArgument("conserved_quantities: k must be >= 1");
    ConservedTrajectory out;
    const double dx = w.grid().dx();
    const double c = 1.0 / ((k + 1.0) * (k + 2.0));
    for (const auto& f : w.frames()) {
        const GridFunction ux = spectral_derivative(f, 1);
        double energy = 0.0;
        for (std::size_t j = 0; j < f.size(); ++j) {
            const double u = f[j].real();
            const double d = ux[j].real();
            energy += 0.5 * d * d - c * std::pow(u, k + 2);
        }
        out.mass.push_back(integral(f).real());
        out.l2.push_back(l2_norm(f));
        out.energy.push_back(energy * dx);
    }
    return out;
}

SpaceTimeField free_evolution(const GridFunction& u0, double t_from, double t_to, double dt) {
    if (!(t_to > t_from)) throw InvalidArgument("free_evolution: empty time window");
    const std::size_t M = step_count(t_to - t_from, dt);
    const double h = (t_to - t_from) / static_cast<double>(M);
    const Workspace ws(u0.grid(), false);
    const Coeffs base = ws.transform(u0);
    SpaceTimeField out(u0.grid(), t_from, h);
    for (std::size_t m = 0; m <= M; ++m) {
        Coeffs c = base;
        ws.evolve(c, t_from + h * static_cast<double>(m));
        GridFunction f = ws.physical(c);
        out.push_back(u0.real_valued() ? f.real_part() : f);
    }
    return out;
}

double linear_estimate_ratio(const GridFunction& u0, double T, double dt) {
    const double k = d14_norm(u0);
    if (k == 0.0) throw ZeroData("linear_estimate_ratio: ||D^1/4 u0|| vanishes");
    return mu1(free_evolution(u0, 0.0, T, dt), T) / k;
}

C0Calibration calibrate_c0(const std::vector<GridFunction>& battery, const std::vector<double>& horizons, double dt) {
    if (horizons.empty()) throw InvalidArgument("calibrate_c0: no horizons");
    C0Calibration out;
    for (const auto& u0 : battery) {
        if (d14_norm(u0) == 0.0) continue;
        for (double T : horizons) {
            out.ratios.push_back(linear_estimate_ratio(u0, T, dt));
            out.c0 = std::max(out.c0, out.ratios.back());
        }
    }
    if (out.ratios.empty()) throw ZeroData("calibrate_c0: battery has no nonzero datum");
    return out;
}

GlobalResult solve_global(const GridFunction& u0, double T_star, const SolverConfig& cfg) {
    cfg.validate();
    require_real(u0, "solve_global");
    if (!(T_star > 0.0)) throw InvalidArgument("solve_global: T_star must be positive");
    const std::size_t total = step_count(T_star, cfg.dt);
    const double dt = T_star / static_cast<double>(total);

    GlobalResult result{SpaceTimeField(u0.grid(), 0.0, dt), {}, false, {}};
    result.field.push_back(u0);
    double K = d14_norm(u0);
    GridFunction datum = u0;
    std::size_t done = 0;
    while (done < total) {
        const double t_patch = local_existence_time(K, cfg);
        std::size_t steps = static_cast<std::size_t>(std::floor(t_patch / dt + 1e-9));
        SolverConfig patch_cfg = cfg;
        if (steps == 0) {
            steps = 1;
            patch_cfg.allow_long_time = true;
        }
        steps = std::min(steps, total - done);
        patch_cfg.dt = dt;
        patch_cfg.T = dt * static_cast<double>(steps);
        // Rounding of steps * dt must not trip the existence-time guard.
        if (patch_cfg.T > t_patch) patch_cfg.allow_long_time = true;

        std::optional<PicardResult> solved;
        try {
            solved.emplace(picard_solve(datum, patch_cfg));
        } catch (const NonConvergence& e) {
            result.aborted = true;
            result.abort_reason = e.what();
            return result;
        }
        PicardResult& patch = *solved;
        patch.report.t_start = dt * static_cast<double>(done);
        for (std::size_t m = 1; m < patch.field.size(); ++m) {
            K = std::max(K, d14_norm(patch.field[m]));
            result.field.push_back(patch.field[m]);
        }
        datum = patch.field[patch.field.size() - 1];
        result.patches.push_back(std::move(patch.report));
        done += steps;
    }
    return result;
}

}  // namespace dispersa
