#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dispersa/errors.hpp"
#include "dispersa/presets.hpp"
#include "dispersa/solver.hpp"

namespace dispersa {

enum class Command { VerifyIdentities, Solve, Persistence, PhiScan, Strichartz, Calibrate };
enum class OutputFormat { Csv, Json };

std::string to_string(Command c);
Command parse_command(const std::string& text);
std::string to_string(OutputFormat f);
OutputFormat parse_format(const std::string& text);

/// Invalid configuration; key() names the offending entry ("section.key").
class ConfigError : public InvalidArgument {
public:
    ConfigError(std::string key, const std::string& message)
        : InvalidArgument(key + ": " + message), key_(std::move(key)) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

struct ScanLists {
    std::vector<double> t{0.1, 0.5, 1.0};
    std::vector<double> alpha{0.25, 0.5, 0.75};
    /// Empty means beta = alpha / 2 for every alpha.
    std::vector<double> beta;
    std::vector<std::pair<double, double>> sr{{1.0, 0.5}};
    std::vector<double> probe_r;
    double probe_s = 1.0;
    std::vector<double> window{1.0, 2.0};
    std::vector<double> horizons{1.0, 2.0, 4.0};
    int strichartz_times = 401;
    double calibration_dt = 0.01;
};

/**
 * Experiment description. Text form:
 *
 *   command = persistence
 *   seed = 0
 *   [grid]     n, L
 *   [datum]    preset = gaussian(0.1,1,0)
 *   [battery]  data = gaussian(1,1,0); sech(1,1,0)
 *   [solver]   k, dt, T, n_picard, picard_tol, c0, dealias, T_cap, blowup_ceiling
 *   [scan]     t, alpha, beta, sr (s:r pairs), probe_r, probe_s, window, horizons,
 *              strichartz_times, calibration_dt
 *   [output]   dir, format
 *
 * Lists are comma separated (battery entries by ';'). Lines starting with
 * '#' or ';' are comments.
 */
struct ExperimentConfig {
    Command command = Command::Solve;
    std::uint64_t seed = 0;
    std::size_t n = 1024;
    double L = 100.0;
    PresetDatum datum = PresetDatum::gaussian(0.1, 1.0);
    std::vector<PresetDatum> battery = default_battery();
    SolverConfig solver;
    ScanLists scan;
    std::string out_dir = "dispersa-out";
    OutputFormat format = OutputFormat::Csv;

    Grid1D grid() const { return Grid1D(n, L); }
    /// Throws ConfigError naming the first offending key.
    void validate() const;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string serialize_config(const ExperimentConfig& cfg);

/// "%.17g"
std::string format_number(double v);

}  // namespace dispersa
