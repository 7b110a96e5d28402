#include "dispersa/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "dispersa/fractional.hpp"
#include "dispersa/norms.hpp"
#include "dispersa/parallel.hpp"
#include "dispersa/presets.hpp"
#include "dispersa/propagators.hpp"

namespace dispersa {

std::vector<PersistenceResult> persistence_from_flow(const GlobalResult& flow, const SpaceTimeField& linear,
                                                     const std::vector<std::pair<double, double>>& sr) {
    std::vector<PersistenceResult> out;
    const SpaceTimeField& w = flow.field;
    const double T = w.t_end() - w.t0();
    for (const auto& [s, r] : sr) {
        PersistenceResult res;
        res.s = s;
        res.r = r;
        res.flagged = r > s / 2.0;
        res.patches = flow.patches.size();
        const WeightedNormSpec spec{s, r};
        for (std::size_t m = 0; m < w.size(); ++m) {
            res.times.push_back(w.time(m));
            res.values.push_back(weighted_norm(w[m], spec, m + 1 == w.size() ? &res.warnings : nullptr));
            res.linear_values.push_back(m < linear.size() ? weighted_norm(linear[m], spec) : 0.0);
        }
        res.initial = res.values.front();
        res.max = *std::max_element(res.values.begin(), res.values.end());
        res.min = *std::min_element(res.values.begin(), res.values.end());
        res.ratio = res.initial == 0.0 ? 1.0 : res.max / res.initial;
        res.growth_index = T > 0.0 ? std::log(res.ratio) / T : 0.0;
        out.push_back(std::move(res));
    }
    return out;
}

namespace {

struct Flow {
    GlobalResult global;
    SpaceTimeField linear;
};

Flow solve_flow(const GridFunction& u0, double T, const SolverConfig& cfg) {
    GlobalResult g = solve_global(u0, T, cfg);
    if (g.aborted) throw NonConvergence(g.abort_reason);
    SpaceTimeField lin = free_evolution(u0, 0.0, T, g.field.dt());
    return {std::move(g), std::move(lin)};
}

}  // namespace

PersistenceResult persistence_experiment(const GridFunction& u0, double s, double r, double T, const SolverConfig& cfg) {
    WeightedNormSpec{s, r}.validate();
    const Flow flow = solve_flow(u0, T, cfg);
    return persistence_from_flow(flow.global, flow.linear, {{s, r}}).front();
}

OptimalityReport optimality_probe(const GridFunction& u0, double s, std::vector<double> r_list, double T,
                                  const SolverConfig& cfg) {
    if (r_list.empty()) throw InvalidArgument("optimality_probe: r_list is empty");
    std::sort(r_list.begin(), r_list.end());
    std::vector<std::pair<double, double>> sr;
    for (double r : r_list) {
        WeightedNormSpec{s, r}.validate();
        sr.emplace_back(s, r);
    }
    const Flow flow = solve_flow(u0, T, cfg);
    OptimalityReport out;
    out.s = s;
    out.rows = persistence_from_flow(flow.global, flow.linear, sr);
    for (std::size_t i = 1; i < out.rows.size(); ++i)
        if (out.rows[i].growth_index < out.rows[i - 1].growth_index) out.nondecreasing = false;
    return out;
}

CalibratedConstants calibrate_constants(const std::vector<PresetDatum>& battery, const Grid1D& grid,
                                        const std::vector<double>& alphas, const std::vector<double>& horizons,
                                        double dt, const std::vector<double>& windows, int n_times,
                                        std::size_t threads) {
    std::vector<GridFunction> data;
    std::vector<std::string> names;
    for (const auto& d : battery) {
        if (d.kind == PresetDatum::Kind::Zero) continue;
        data.push_back(sample(d, grid).function);
        names.push_back(d.name());
    }
    if (data.empty()) throw ZeroData("calibrate: degenerate battery (no nonzero datum)");

    CalibratedConstants out;
    out.c0_table = {"c0_calibration", {"datum", "T", "mu1_over_d14_norm"}, {}};
    out.strichartz_table = {"strichartz_calibration", {"datum", "window", "strichartz_ratio"}, {}};

    const std::size_t nh = horizons.size();
    std::vector<double> ratios(data.size() * nh);
    parallel_for(ratios.size(), threads, [&](std::size_t i) {
        ratios[i] = linear_estimate_ratio(data[i / nh], horizons[i % nh], dt);
    });
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        out.c0 = std::max(out.c0, ratios[i]);
        out.c0_table.add_row({names[i / nh], horizons[i % nh], ratios[i]});
    }

    const GridFunction gauss = sample(PresetDatum::gaussian(1.0, 1.0), grid).function;
    const GridFunction sech = sample(PresetDatum::sech(1.0, 1.0), grid).function;
    out.alphas = alphas;
    out.c_alpha.resize(alphas.size());
    out.c_alpha_sech.resize(alphas.size());
    parallel_for(alphas.size(), threads, [&](std::size_t i) {
        out.c_alpha[i] = calibrate_stein_constant(gauss, alphas[i]);
        out.c_alpha_sech[i] = calibrate_stein_constant(sech, alphas[i]);
    });

    const std::size_t nw = windows.size();
    std::vector<double> str(data.size() * nw);
    parallel_for(str.size(), threads, [&](std::size_t i) {
        str[i] = strichartz_ratio(data[i / nw], windows[i % nw], n_times);
    });
    for (std::size_t i = 0; i < str.size(); ++i) {
        out.strichartz = std::max(out.strichartz, str[i]);
        out.strichartz_table.add_row({names[i / nw], windows[i % nw], str[i]});
    }
    return out;
}

std::string constants_file(const CalibratedConstants& c) {
    std::ostringstream os;
    os << "[constants]\n";
    os << "c0 = " << format_number(c.c0) << "\n";
    os << "strichartz = " << format_number(c.strichartz) << "\n";
    os << "\n[c_alpha]\n";
    for (std::size_t i = 0; i < c.alphas.size(); ++i)
        os << format_number(c.alphas[i]) << " = " << format_number(c.c_alpha[i]) << "\n";
    return os.str();
}

namespace {

std::string join_warnings(const Warnings& w) {
    std::string out;
    for (std::size_t i = 0; i < w.messages.size(); ++i) out += (i ? "; " : "") + w.messages[i];
    return out;
}

GridFunction configured_datum(const ExperimentConfig& cfg, ExperimentReport& report) {
    Sampled s = sample(cfg.datum, cfg.grid());
    report.warnings.merge(s.warnings);
    return s.function;
}

std::vector<double> betas_for(const ExperimentConfig& cfg, double alpha) {
    if (cfg.scan.beta.empty()) return {alpha / 2.0};
    std::vector<double> out;
    for (double b : cfg.scan.beta)
        if (b < alpha) out.push_back(b);
    return out;
}

void run_verify(const ExperimentConfig& cfg, std::size_t threads, ExperimentReport& report) {
    const GridFunction u0 = configured_datum(cfg, report);
    const auto& ts = cfg.scan.t;

    std::vector<IdentityResidualReport> comm(ts.size());
    parallel_for(ts.size(), threads, [&](std::size_t i) { comm[i] = gamma_commutation_residual(u0, ts[i]); });
    Table ct{"commutation",
             {"t", "commutation_residual_l2", "commutation_relative_residual", "x_v0_l2", "warnings"},
             {}};
    for (const auto& r : comm)
        ct.add_row({r.t, r.residual_l2, r.relative_residual(), r.lhs_l2, join_warnings(r.warnings)});

    struct Point {
        double alpha;
        std::optional<double> beta;
        double t;
    };
    std::vector<Point> points;
    for (double a : cfg.scan.alpha) {
        for (double t : ts) points.push_back({a, std::nullopt, t});
        for (double b : betas_for(cfg, a))
            for (double t : ts) points.push_back({a, b, t});
    }
    std::vector<IdentityResidualReport> res(points.size());
    parallel_for(points.size(), threads, [&](std::size_t i) {
        const Point& p = points[i];
        res[i] = p.beta ? weighted_identity_residual_beta(u0, p.t, p.alpha, *p.beta)
                        : weighted_identity_residual(u0, p.t, p.alpha);
    });
    Table wt{"weighted_identity",
             {"alpha", "t", "weighted_identity_residual_l2", "weighted_identity_relative_residual", "weighted_lhs_l2",
              "weighted_bound_ratio", "warnings"},
             {}};
    Table bt{"weighted_beta_identity",
             {"alpha", "beta", "t", "beta_identity_residual_l2", "beta_identity_relative_residual", "beta_lhs_l2",
              "beta_bound_ratio", "warnings"},
             {}};
    double worst = 0.0;
    for (const auto& r : res) {
        worst = std::max(worst, r.relative_residual());
        if (r.beta)
            bt.add_row({r.alpha, *r.beta, r.t, r.residual_l2, r.relative_residual(), r.lhs_l2, r.bound_ratio,
                        join_warnings(r.warnings)});
        else
            wt.add_row({r.alpha, r.t, r.residual_l2, r.relative_residual(), r.lhs_l2, r.bound_ratio,
                        join_warnings(r.warnings)});
    }

    const auto& alphas = cfg.scan.alpha;
    std::vector<std::pair<double, double>> stein(alphas.size());
    const GridFunction gauss = sample(PresetDatum::gaussian(1.0, 1.0), cfg.grid()).function;
    parallel_for(alphas.size(), threads, [&](std::size_t i) {
        const double c = calibrate_stein_constant(gauss, alphas[i]);
        SteinKernelSpec spec;
        spec.alpha = alphas[i];
        spec.calibrated_value = c;
        const GridFunction s = stein_derivative(u0, spec).derivative;
        const GridFunction r = riesz_derivative(u0, alphas[i]);
        const double rn = l2_norm(r);
        const double err = rn == 0.0 ? l2_norm(s) : l2_norm(s - r) / rn;
        stein[i] = {c, err};
    });
    Table st{"stein_riesz", {"alpha", "c_alpha_calibrated", "c_alpha_exact", "stein_riesz_relative_error"}, {}};
    for (std::size_t i = 0; i < alphas.size(); ++i)
        st.add_row({alphas[i], stein[i].first, stein_constant_exact(alphas[i]), stein[i].second});

    double worst_comm = 0.0;
    for (const auto& r : comm) worst_comm = std::max(worst_comm, r.relative_residual());
    report.summary.push_back({"max_commutation_relative_residual", worst_comm});
    report.summary.push_back({"max_weighted_relative_residual", worst});
    report.tables = {std::move(ct), std::move(wt), std::move(bt), std::move(st)};
}

void run_phi_scan(const ExperimentConfig& cfg, std::size_t threads, ExperimentReport& report) {
    const GridFunction u0 = configured_datum(cfg, report);
    std::vector<std::pair<double, double>> points;
    for (double a : cfg.scan.alpha)
        for (double t : cfg.scan.t) points.emplace_back(a, t);
    std::vector<std::pair<double, double>> out(points.size());
    parallel_for(points.size(), threads, [&](std::size_t i) {
        const auto [a, t] = points[i];
        const double phi = phi_operator(u0, t, a, PhasePolynomial::airy(t)).l2_norm();
        const double scale = (1.0 + std::abs(t)) * (l2_norm(u0) + l2_norm(riesz_derivative(u0, 2.0 * a)));
        out[i] = {phi, scale == 0.0 ? 0.0 : phi / scale};
    });
    Table t{"phi_scan", {"alpha", "t", "phi_l2", "phi_bound_ratio"}, {}};
    double worst = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        t.add_row({points[i].first, points[i].second, out[i].first, out[i].second});
        worst = std::max(worst, out[i].second);
    }
    report.summary.push_back({"max_phi_bound_ratio", worst});
    report.tables = {std::move(t)};
}

void run_solve(const ExperimentConfig& cfg, ExperimentReport& report) {
    const GridFunction u0 = configured_datum(cfg, report);
    const GlobalResult g = solve_global(u0, cfg.solver.T, cfg.solver);
    const ConservedTrajectory cq = conserved_quantities(g.field, cfg.solver.k);

    Table traj{"trajectory", {"t", "mass", "l2", "energy", "d14_norm", "sup_norm"}, {}};
    for (std::size_t m = 0; m < g.field.size(); ++m)
        traj.add_row({g.field.time(m), cq.mass[m], cq.l2[m], cq.energy[m], d14_norm(g.field[m]),
                      sup_norm(g.field[m])});

    Table patches{"patches",
                  {"patch", "t_start", "T_used", "iterations", "converged", "ball_radius", "mu1", "max_contraction_ratio",
                   "max_imag"},
                  {}};
    for (std::size_t p = 0; p < g.patches.size(); ++p) {
        const ContractionReport& r = g.patches[p];
        double worst = 0.0;
        for (double x : r.contraction_ratios) worst = std::max(worst, x);
        patches.add_row({static_cast<long>(p), r.t_start, r.T_used, static_cast<long>(r.iterations),
                         static_cast<long>(r.converged), r.ball_radius, r.iterate_mu1.back(), worst, r.max_imag});
        report.warnings.merge(r.warnings);
    }
    report.summary.push_back({"T", g.field.t_end()});
    report.summary.push_back({"patches", static_cast<long>(g.patches.size())});
    report.summary.push_back({"mu1", mu1(g.field, g.field.t_end())});
    report.summary.push_back({"l2_relative_drift", cq.max_relative_l2_drift()});
    if (g.aborted) report.failure = g.abort_reason;
    report.tables = {std::move(traj), std::move(patches)};
}

void run_persistence(const ExperimentConfig& cfg, ExperimentReport& report) {
    const GridFunction u0 = configured_datum(cfg, report);
    std::vector<std::pair<double, double>> sr = cfg.scan.sr;
    std::vector<double> probe = cfg.scan.probe_r;
    std::sort(probe.begin(), probe.end());
    for (double r : probe) sr.emplace_back(cfg.scan.probe_s, r);

    const Flow flow = solve_flow(u0, cfg.solver.T, cfg.solver);
    const auto results = persistence_from_flow(flow.global, flow.linear, sr);

    Table traj{"persistence", {"s", "r", "t", "Zsr_norm", "Zsr_norm_linear"}, {}};
    Table summary{"persistence_summary",
                  {"s", "r", "initial", "max", "min", "ratio", "growth_index", "r_above_half_s"},
                  {}};
    const std::size_t n_sr = cfg.scan.sr.size();
    for (std::size_t i = 0; i < n_sr; ++i) {
        const auto& p = results[i];
        for (std::size_t m = 0; m < p.times.size(); ++m)
            traj.add_row({p.s, p.r, p.times[m], p.values[m], p.linear_values[m]});
        summary.add_row({p.s, p.r, p.initial, p.max, p.min, p.ratio, p.growth_index, static_cast<long>(p.flagged)});
        report.warnings.merge(p.warnings);
    }
    report.tables = {std::move(traj), std::move(summary)};
    report.summary.push_back({"patches", static_cast<long>(flow.global.patches.size())});

    if (!probe.empty()) {
        Table opt{"optimality", {"s", "r", "growth_index", "r_above_half_s"}, {}};
        bool nondecreasing = true;
        for (std::size_t i = n_sr; i < results.size(); ++i) {
            const auto& p = results[i];
            opt.add_row({p.s, p.r, p.growth_index, static_cast<long>(p.flagged)});
            if (i > n_sr && p.growth_index < results[i - 1].growth_index) nondecreasing = false;
        }
        report.tables.push_back(std::move(opt));
        report.summary.push_back({"growth_index_nondecreasing", static_cast<long>(nondecreasing)});
    }
}

void run_strichartz(const ExperimentConfig& cfg, std::size_t threads, ExperimentReport& report) {
    std::vector<GridFunction> data;
    std::vector<std::string> names;
    for (const auto& d : cfg.battery) {
        Sampled s = sample(d, cfg.grid());
        report.warnings.merge(s.warnings);
        data.push_back(std::move(s.function));
        names.push_back(d.name());
    }
    const auto& windows = cfg.scan.window;
    const std::size_t nw = windows.size();
    std::vector<double> ratio(data.size() * nw, 0.0);
    std::vector<std::string> skipped(ratio.size());
    parallel_for(ratio.size(), threads, [&](std::size_t i) {
        try {
            ratio[i] = strichartz_ratio(data[i / nw], windows[i % nw], cfg.scan.strichartz_times);
        } catch (const ZeroData&) {
            skipped[i] = "zero datum";
        }
    });
    Table t{"strichartz", {"datum", "window", "n_times", "strichartz_ratio", "change_from_previous_window"}, {}};
    double constant = 0.0;
    for (std::size_t i = 0; i < ratio.size(); ++i) {
        const double change =
            (i % nw == 0 || ratio[i - 1] == 0.0) ? 0.0 : std::abs(ratio[i] - ratio[i - 1]) / ratio[i - 1];
        t.add_row({names[i / nw], windows[i % nw], static_cast<long>(cfg.scan.strichartz_times), ratio[i], change});
        constant = std::max(constant, ratio[i]);
        if (!skipped[i].empty()) report.warnings.add(names[i / nw] + ": skipped (" + skipped[i] + ")");
    }
    report.summary.push_back({"strichartz_constant", constant});
    report.tables = {std::move(t)};
}

void run_calibrate(const ExperimentConfig& cfg, std::size_t threads, ExperimentReport& report) {
    const CalibratedConstants c =
        calibrate_constants(cfg.battery, cfg.grid(), cfg.scan.alpha, cfg.scan.horizons, cfg.scan.calibration_dt,
                            cfg.scan.window, cfg.scan.strichartz_times, threads);
    Table ca{"c_alpha", {"alpha", "c_alpha_exact", "c_alpha_printed", "c_alpha_gaussian", "c_alpha_sech"}, {}};
    for (std::size_t i = 0; i < c.alphas.size(); ++i)
        ca.add_row({c.alphas[i], stein_constant_exact(c.alphas[i]), stein_constant_printed(c.alphas[i]), c.c_alpha[i],
                    c.c_alpha_sech[i]});
    report.summary.push_back({"c0", c.c0});
    report.summary.push_back({"strichartz_constant", c.strichartz});
    report.tables = {c.c0_table, std::move(ca), c.strichartz_table};
    report.attachments.push_back({"constants.ini", constants_file(c)});
}

}  // namespace

ExperimentReport run(const ExperimentConfig& cfg, std::size_t threads) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    ExperimentReport report;
    report.command = cfg.command;
    report.config_text = serialize_config(cfg);
    try {
        switch (cfg.command) {
            case Command::VerifyIdentities:
                run_verify(cfg, threads, report);
                break;
            case Command::PhiScan:
                run_phi_scan(cfg, threads, report);
                break;
            case Command::Solve:
                run_solve(cfg, report);
                break;
            case Command::Persistence:
                run_persistence(cfg, report);
                break;
            case Command::Strichartz:
                run_strichartz(cfg, threads, report);
                break;
            case Command::Calibrate:
                run_calibrate(cfg, threads, report);
                break;
        }
    } catch (const NonConvergence& e) {
        report.failure = e.what();
    } catch (const BlowupDetected& e) {
        report.failure = e.what();
    }
    report.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace dispersa
