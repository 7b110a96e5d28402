#pragma once

#include <vector>

#include "dispersa/config.hpp"
#include "dispersa/report.hpp"
#include "dispersa/solver.hpp"

namespace dispersa {

struct PersistenceResult {
    double s = 0.0;
    double r = 0.0;
    std::vector<double> times;
    std::vector<double> values;         ///< weighted_norm(u(t), (s, r)) along the nonlinear flow
    std::vector<double> linear_values;  ///< same norm along U(t) u0
    double initial = 0.0;
    double max = 0.0;
    double min = 0.0;
    double ratio = 1.0;         ///< max / initial, 1 for the zero trajectory
    double growth_index = 0.0;  ///< log(ratio) / T
    bool flagged = false;       ///< r > s / 2
    std::size_t patches = 0;
    Warnings warnings;
};

/// Z_{s,r} norm along the patched solution of [0, T].
PersistenceResult persistence_experiment(const GridFunction& u0, double s, double r, double T, const SolverConfig& cfg);

/// Evaluates weighted norms for several (s, r) along one already computed flow.
std::vector<PersistenceResult> persistence_from_flow(const GlobalResult& flow, const SpaceTimeField& linear,
                                                     const std::vector<std::pair<double, double>>& sr);

struct OptimalityReport {
    double s = 0.0;
    std::vector<PersistenceResult> rows;  ///< sorted by r
    bool nondecreasing = true;            ///< growth index nondecreasing in r
};

OptimalityReport optimality_probe(const GridFunction& u0, double s, std::vector<double> r_list, double T,
                                  const SolverConfig& cfg);

struct CalibratedConstants {
    double c0 = 0.0;
    std::vector<double> alphas;
    std::vector<double> c_alpha;       ///< gaussian calibration
    std::vector<double> c_alpha_sech;  ///< sech calibration, for cross-checking
    double strichartz = 0.0;
    Table c0_table;
    Table strichartz_table;
};

/// c0 over battery and horizons, Stein constants per alpha, Strichartz maximum
/// over battery and windows. Throws ZeroData for an all-zero battery.
CalibratedConstants calibrate_constants(const std::vector<PresetDatum>& battery, const Grid1D& grid,
                                        const std::vector<double>& alphas, const std::vector<double>& horizons,
                                        double dt, const std::vector<double>& windows, int n_times,
                                        std::size_t threads = 1);

/// Text written to constants.ini by the calibrate command.
std::string constants_file(const CalibratedConstants& c);

/**
 * Executes the configured command. NonConvergence and BlowupDetected are
 * caught and recorded in report.failure; other errors propagate.
 */
ExperimentReport run(const ExperimentConfig& cfg, std::size_t threads = 1);

}  // namespace dispersa
