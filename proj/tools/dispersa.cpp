// dispersa <command> --config <path> [--out <dir>] [--format csv|json] [--threads N]

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "dispersa/config.hpp"
#include "dispersa/experiments.hpp"
#include "dispersa/parallel.hpp"
#include "dispersa/report.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;
constexpr int kExitIo = 4;

}  // namespace

int main(int argc, char** argv) {
    using namespace dispersa;

    CLI::App app{"Numerical experiments for dispersive equations with fractional weights"};
    std::string command;
    std::string config_path;
    std::string out_dir;
    std::string format;
    std::size_t threads = 0;
    app.add_option("command", command,
                   "verify-identities | solve | persistence | phi-scan | strichartz | calibrate")
        ->required();
    app.add_option("--config", config_path, "experiment configuration file")->required();
    app.add_option("--out", out_dir, "output directory (overrides output.dir)");
    app.add_option("--format", format, "report format: csv or json (overrides output.format)");
    app.add_option("--threads", threads, "worker threads (default: DISPERSA_THREADS or 1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitValidation;
    }

    ExperimentConfig cfg;
    try {
        cfg = load_config(config_path);
        cfg.command = parse_command(command);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (!format.empty()) cfg.format = parse_format(format);
        cfg.validate();
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const Error& e) {
        std::fprintf(stderr, "invalid configuration: %s\n", e.what());
        return kExitValidation;
    }

    if (threads == 0) threads = default_thread_count();

    ExperimentReport report;
    try {
        report = run(cfg, threads);
    } catch (const InvalidArgument& e) {
        std::fprintf(stderr, "invalid configuration: %s\n", e.what());
        return kExitValidation;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitSolver;
    }

    try {
        for (const auto& path : write_report(report, cfg.out_dir, cfg.format)) std::printf("wrote %s\n", path.c_str());
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    }
    for (const auto& w : report.warnings.messages) std::fprintf(stderr, "warning: %s\n", w.c_str());
    if (!report.failure.empty()) {
        std::fprintf(stderr, "run stopped: %s\n", report.failure.c_str());
        return kExitSolver;
    }
    return 0;
}
