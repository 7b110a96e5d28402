#pragma once

#include <vector>

#include "dispersa/errors.hpp"
#include "dispersa/grid.hpp"
#include "dispersa/spacetime.hpp"

namespace dispersa {

/// Configuration for u_t + u_xxx + u^k u_x = 0.
struct SolverConfig {
    int k = 2;
    double dt = 1e-3;
    double T = 1.0;
    int n_picard = 50;
    double picard_tol = 1e-12;  ///< on sup_t ||u_{j+1} - u_j||_2
    double c0 = 1.0;
    bool dealias = true;
    double T_cap = 1.0;
    double blowup_ceiling = 1e6;
    /// Lets picard_solve run past the local existence time.
    bool allow_long_time = false;
    /// Drops u^k u_x entirely; used to isolate the linear part.
    bool nonlinear = true;

    void validate() const;
};

struct ContractionReport {
    double T_used = 0.0;
    double t_start = 0.0;
    double ball_radius = 0.0;
    std::vector<double> iterate_mu1;       ///< mu1 of u_0, u_1, ...
    std::vector<double> successive_diffs;  ///< mu1(u_{j+1} - u_j)
    std::vector<double> contraction_ratios;
    std::vector<double> linf_l2_diffs;     ///< sup_t ||u_{j+1} - u_j||_2
    int iterations = 0;
    bool converged = false;
    double max_imag = 0.0;  ///< largest imaginary part before projecting to real
    Warnings warnings;
};

/// min(1 / (32 c0^6 ||D^1/4 u0||^4), T_cap).
double local_existence_time(const GridFunction& u0, const SolverConfig& cfg);
double local_existence_time(double d14_norm, const SolverConfig& cfg);

/// ||D^1/4 f||_2.
double d14_norm(const GridFunction& f);

struct PicardResult {
    SpaceTimeField field;
    ContractionReport report;
};

/**
 * Fixed-point iteration of the Duhamel map
 *   Phi(v)(t) = U(t) u0 - int_0^t U(t - t') v^k v_x (t') dt'
 * on the time grid t_m = m dt, m = 0..M with M = round(T / dt). The integral
 * is the composite trapezoid rule over stored frames; since
 * U(t_m - t_l) = U(t_m) U(-t_l), partial sums are accumulated once per
 * iteration. Throws NonConvergence after three consecutive ratios above 1.
 */
PicardResult picard_solve(const GridFunction& u0, const SolverConfig& cfg);

/**
 * Integrating-factor RK4 on the same time grid: the linear phase is exact,
 * the nonlinear term u^k u_x is dealiased by the 2/3 rule. Throws
 * BlowupDetected when sup|u| exceeds cfg.blowup_ceiling.
 */
SpaceTimeField reference_solve(const GridFunction& u0, const SolverConfig& cfg);

struct ConservedTrajectory {
    std::vector<double> mass;
    std::vector<double> l2;
    std::vector<double> energy;

    double max_relative_l2_drift() const;
};

ConservedTrajectory conserved_quantities(const SpaceTimeField& w, int k);

struct GlobalResult {
    SpaceTimeField field;
    std::vector<ContractionReport> patches;
    bool aborted = false;
    std::string abort_reason;
};

/**
 * Picard patches over [0, T_star], each of length T' = local_existence_time
 * for the running bound K = max ||D^1/4 u(t)||_2 seen so far, snapped down to
 * a whole number of steps. A failing patch stops the run and the partial
 * trajectory is returned with aborted set.
 */
GlobalResult solve_global(const GridFunction& u0, double T_star, const SolverConfig& cfg);

/// U(t) u0 on t_m = t_from + m dt, m = 0..round((t_to - t_from) / dt).
SpaceTimeField free_evolution(const GridFunction& u0, double t_from, double t_to, double dt);

/// mu1 over [0, T] of U(t) u0, divided by ||D^1/4 u0||_2. Throws ZeroData for u0 = 0.
double linear_estimate_ratio(const GridFunction& u0, double T, double dt);

struct C0Calibration {
    double c0 = 0.0;
    std::vector<double> ratios;  ///< datum-major, then T
};

/// Largest linear_estimate_ratio over data and horizons; zero data are skipped
/// and an all-zero battery throws ZeroData.
C0Calibration calibrate_c0(const std::vector<GridFunction>& battery, const std::vector<double>& horizons, double dt);

/// N(u) = u^k u_x, optionally 2/3 dealiased.
GridFunction nonlinear_term(const GridFunction& u, int k, bool dealias);

}  // namespace dispersa
