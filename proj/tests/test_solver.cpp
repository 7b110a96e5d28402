#include <doctest.h>

#include <cmath>

#include "dispersa/fourier.hpp"
#include "dispersa/norms.hpp"
#include "dispersa/presets.hpp"
#include "dispersa/propagators.hpp"
#include "dispersa/solver.hpp"

using namespace dispersa;

namespace {

// Measured on the default battery, horizons {1, 2, 4}, dt = 0.01.
constexpr double kC0 = 3.9962;

GridFunction gaussian(const Grid1D& g, double amplitude = 1.0, double width = 1.0) {
    return sample(PresetDatum::gaussian(amplitude, width), g).function;
}

GridFunction zero(const Grid1D& g) { return GridFunction::from_real(g, std::vector<double>(g.size(), 0.0)); }

SolverConfig small_data_config(const GridFunction& u0) {
    SolverConfig cfg;
    cfg.c0 = kC0;
    cfg.T_cap = 10.0;
    cfg.T = local_existence_time(u0, cfg);
    cfg.dt = cfg.T / 50.0;
    return cfg;
}

}  // namespace

TEST_CASE("local existence time") {
    const Grid1D g = default_grid();
    SolverConfig cfg;
    cfg.T_cap = 2.0;
    CHECK(local_existence_time(zero(g), cfg) == 2.0);
    cfg.c0 = 1.0;
    cfg.T_cap = 10.0;
    CHECK(local_existence_time(1.0, cfg) == doctest::Approx(1.0 / 32.0).epsilon(1e-15));

    const GridFunction u0 = gaussian(g, 0.5);
    const double t1 = local_existence_time(u0, cfg);
    const double t2 = local_existence_time(2.0 * u0, cfg);
    CHECK(t1 / t2 == doctest::Approx(16.0).epsilon(1e-12));
    CHECK(t1 < cfg.T_cap);
}

TEST_CASE("solver configuration validation") {
    SolverConfig cfg;
    cfg.k = 0;
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
    cfg = SolverConfig{};
    cfg.dt = -1.0;
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
    cfg = SolverConfig{};
    cfg.n_picard = 0;
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);

    const Grid1D g = default_grid();
    cfg = SolverConfig{};
    cfg.c0 = kC0;
    cfg.T = 1.0;
    CHECK_THROWS_AS(picard_solve(gaussian(g), cfg), InvalidArgument);
}

TEST_CASE("Picard on zero data") {
    const Grid1D g = default_grid();
    SolverConfig cfg;
    cfg.T = 0.1;
    cfg.dt = 0.01;
    const PicardResult r = picard_solve(zero(g), cfg);
    CHECK(r.report.converged);
    CHECK(r.report.iterations == 1);
    CHECK(linf_l2(r.field) == 0.0);
    CHECK(r.field.size() == 11);
}

TEST_CASE("Picard without the nonlinearity is the free flow") {
    const Grid1D g = default_grid();
    const GridFunction u0 = gaussian(g);
    SolverConfig cfg;
    cfg.nonlinear = false;
    cfg.allow_long_time = true;
    cfg.T = 0.5;
    cfg.dt = 0.01;
    const PicardResult r = picard_solve(u0, cfg);
    const SpaceTimeField free = free_evolution(u0, 0.0, 0.5, 0.01);
    CHECK(r.field.size() == free.size());
    CHECK(relative_linf_l2(r.field, free) < 1e-12);
    CHECK(r.report.converged);
}

TEST_CASE("Picard on small data contracts and matches the reference") {
    const Grid1D g = default_grid();
    const GridFunction u0 = gaussian(g, 0.1);
    const SolverConfig cfg = small_data_config(u0);
    const PicardResult r = picard_solve(u0, cfg);
    const ContractionReport& rep = r.report;

    CHECK(rep.converged);
    CHECK(rep.iterations <= 10);
    REQUIRE(!rep.contraction_ratios.empty());
    for (double ratio : rep.contraction_ratios) CHECK(ratio <= 0.5);
    for (double m : rep.iterate_mu1) CHECK(m <= rep.ball_radius);
    CHECK(rep.ball_radius == doctest::Approx(2.0 * kC0 * d14_norm(u0)));
    CHECK(rep.max_imag <= 1e-10);
    CHECK(rep.linf_l2_diffs.back() < cfg.picard_tol);
    CHECK(rep.successive_diffs.back() <= 2.0 * cfg.picard_tol);
    CHECK(rep.warnings.empty());

    const SpaceTimeField ref = reference_solve(u0, cfg);
    CHECK(relative_linf_l2(r.field, ref) < 1e-5);

    const ConservedTrajectory c = conserved_quantities(r.field, cfg.k);
    CHECK(c.max_relative_l2_drift() <= 1e-4);
}

TEST_CASE("reference integrator") {
    const Grid1D g = default_grid();
    SolverConfig cfg;
    cfg.T = 0.5;
    cfg.dt = 0.01;
    CHECK(linf_l2(reference_solve(zero(g), cfg)) == 0.0);

    cfg.T = 1.0;
    cfg.dt = 1e-3;
    const SpaceTimeField w = reference_solve(gaussian(g), cfg);
    CHECK(w.size() == 1001);
    CHECK(conserved_quantities(w, 2).max_relative_l2_drift() <= 1e-8);
}

TEST_CASE("solitary wave converges at fourth order") {
    const Grid1D g = default_grid();
    const PresetDatum wave = mkdv_solitary_wave(0.7);
    const GridFunction u0 = sample(wave, g).function;
    GridFunction exact(g);
    for (std::size_t j = 0; j < g.size(); ++j) exact[j] = wave.evaluate(g.point(j), 1.0);

    std::vector<double> errors;
    for (double dt : {0.0025, 0.00125, 0.000625}) {
        SolverConfig cfg;
        cfg.T = 1.0;
        cfg.dt = dt;
        const SpaceTimeField w = reference_solve(u0, cfg);
        errors.push_back(l2_norm(w[w.size() - 1] - exact) / l2_norm(exact));
    }
    for (double e : errors) CHECK(e <= 1e-6);
    for (std::size_t i = 1; i < errors.size(); ++i) {
        const double ratio = errors[i - 1] / errors[i];
        CHECK(ratio > 12.0);
        CHECK(ratio < 20.0);
    }
}

TEST_CASE("conserved quantities") {
    const Grid1D g = default_grid();
    SpaceTimeField z(g, 0.0, 0.1);
    z.push_back(zero(g));
    z.push_back(zero(g));
    const ConservedTrajectory c = conserved_quantities(z, 2);
    CHECK(c.mass == std::vector<double>{0.0, 0.0});
    CHECK(c.l2 == std::vector<double>{0.0, 0.0});
    CHECK(c.energy == std::vector<double>{0.0, 0.0});
    CHECK(c.max_relative_l2_drift() == 0.0);

    // For exp(-x^2/2): mass sqrt(2 pi), int u_x^2 / 2 = sqrt(pi) / 4, int u^4 / 12 = sqrt(pi / 2) / 12.
    SpaceTimeField w(g, 0.0, 0.1);
    w.push_back(gaussian(g));
    const ConservedTrajectory q = conserved_quantities(w, 2);
    const double pi = 3.14159265358979323846;
    CHECK(q.mass[0] == doctest::Approx(std::sqrt(2.0 * pi)).epsilon(1e-12));
    CHECK(q.l2[0] == doctest::Approx(std::pow(pi, 0.25)).epsilon(1e-12));
    CHECK(q.energy[0] == doctest::Approx(std::sqrt(pi) / 4.0 - std::sqrt(pi / 2.0) / 12.0).epsilon(1e-10));
}

TEST_CASE("global solve: single patch equals Picard") {
    const Grid1D g = default_grid();
    const GridFunction u0 = gaussian(g, 0.1);
    SolverConfig cfg;
    cfg.c0 = kC0;
    cfg.dt = 1e-3;
    cfg.T = 0.03;
    const PicardResult p = picard_solve(u0, cfg);
    const GlobalResult gr = solve_global(u0, 0.03, cfg);
    CHECK(gr.patches.size() == 1);
    CHECK_FALSE(gr.aborted);
    REQUIRE(gr.field.size() == p.field.size());
    CHECK(relative_linf_l2(gr.field, p.field) < 1e-15);
}

TEST_CASE("global solve: patch count for constant K") {
    const Grid1D g = default_grid();
    const GridFunction u0 = gaussian(g, 0.1);
    SolverConfig cfg;
    cfg.nonlinear = false;
    cfg.T_cap = 0.1;
    cfg.dt = 0.01;
    REQUIRE(local_existence_time(u0, cfg) == cfg.T_cap);
    const GlobalResult gr = solve_global(u0, 0.45, cfg);
    CHECK(gr.patches.size() == static_cast<std::size_t>(std::ceil(0.45 / 0.1)));
    CHECK(gr.field.size() == 46);
    CHECK(gr.patches[4].t_start == doctest::Approx(0.4));
    CHECK(relative_linf_l2(gr.field, free_evolution(u0, 0.0, 0.45, 0.01)) < 1e-12);
}

TEST_CASE("global solve: restitched patches match the reference") {
    const Grid1D g = default_grid();
    const GridFunction u0 = gaussian(g, 0.1);
    SolverConfig cfg;
    cfg.c0 = kC0;
    cfg.T_cap = 10.0;
    const double t_patch = local_existence_time(u0, cfg);
    cfg.dt = t_patch / 20.5;
    const double T_star = 100.0 * cfg.dt;
    const GlobalResult gr = solve_global(u0, T_star, cfg);
    CHECK_FALSE(gr.aborted);
    CHECK(gr.patches.size() == 5);
    SolverConfig ref_cfg = cfg;
    ref_cfg.T = T_star;
    CHECK(relative_linf_l2(gr.field, reference_solve(u0, ref_cfg)) < 1e-4);
}

TEST_CASE("divergent Picard iteration is reported") {
    const Grid1D g = default_grid();
    SolverConfig cfg;
    cfg.allow_long_time = true;
    cfg.T = 1.0;
    cfg.dt = 0.01;
    CHECK_THROWS_AS(picard_solve(gaussian(g, 4.0), cfg), NonConvergence);

    const GlobalResult gr = [&] {
        SolverConfig c = cfg;
        c.T_cap = 1.0;
        c.c0 = 1e-3;
        return solve_global(gaussian(g, 4.0), 1.0, c);
    }();
    CHECK(gr.aborted);
    CHECK_FALSE(gr.abort_reason.empty());
    CHECK(gr.field.size() >= 1);
}

TEST_CASE("quintic nonlinearity smoke test") {
    // Either outcome is acceptable; the test records which one happened.
    const Grid1D g = default_grid();
    SolverConfig cfg;
    cfg.k = 4;
    cfg.T = 0.5;
    cfg.dt = 1e-4;
    cfg.blowup_ceiling = 50.0;
    bool blew_up = false;
    double sup = 0.0;
    try {
        const SpaceTimeField w = reference_solve(gaussian(g, 3.0, 0.5), cfg);
        for (const auto& f : w.frames()) sup = std::max(sup, sup_norm(f));
    } catch (const BlowupDetected& e) {
        blew_up = true;
        MESSAGE("k = 4 run stopped: " << e.what());
    }
    if (!blew_up) {
        MESSAGE("k = 4 run completed, sup |u| = " << sup);
        CHECK(std::isfinite(sup));
    }
}

TEST_CASE("nonlinear term") {
    const Grid1D g = default_grid();
    CHECK(sup_norm(nonlinear_term(zero(g), 2, true)) == 0.0);
    // u^2 u_x for u = exp(-x^2/2) is -x exp(-3x^2/2).
    const GridFunction u = gaussian(g);
    const GridFunction n = nonlinear_term(u, 2, false);
    double err = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double x = g.point(j);
        err = std::max(err, std::abs(n[j].real() + x * std::exp(-1.5 * x * x)));
    }
    CHECK(err < 1e-12);
    CHECK_THROWS_AS(nonlinear_term(u, 0, true), InvalidArgument);
}

TEST_CASE("c0 calibration") {
    const Grid1D g = default_grid();
    CHECK_THROWS_AS(calibrate_c0({zero(g)}, {1.0}, 0.05), ZeroData);
    CHECK_THROWS_AS(linear_estimate_ratio(zero(g), 1.0, 0.05), ZeroData);
    const C0Calibration c = calibrate_c0({zero(g), gaussian(g), gaussian(g, 1.0, 2.0)}, {0.5, 1.0}, 0.05);
    CHECK(c.ratios.size() == 4);
    CHECK(c.c0 >= 1.0);
    for (double r : c.ratios) CHECK(r <= c.c0);
    CHECK(linear_estimate_ratio(3.0 * gaussian(g), 1.0, 0.05) == doctest::Approx(c.ratios[1]).epsilon(1e-12));
}
