#include <doctest.h>

#include <string>

#include "dispersa/config.hpp"

using namespace dispersa;

namespace {

std::string error_key(const std::string& text) {
    try {
        parse_config(text).validate();
    } catch (const ConfigError& e) {
        return e.key();
    }
    return {};
}

}  // namespace

TEST_CASE("defaults validate") {
    ExperimentConfig cfg;
    for (Command c : {Command::VerifyIdentities, Command::Solve, Command::Persistence, Command::PhiScan,
                      Command::Strichartz, Command::Calibrate}) {
        cfg.command = c;
        CHECK_NOTHROW(cfg.validate());
        CHECK(parse_command(to_string(c)) == c);
    }
    CHECK_THROWS_AS(parse_command("plot"), InvalidArgument);
    CHECK(parse_format("json") == OutputFormat::Json);
    CHECK_THROWS_AS(parse_format("xml"), InvalidArgument);
}

TEST_CASE("parsing sections and lists") {
    const ExperimentConfig cfg = parse_config(
        "command = persistence\n"
        "# comment\n"
        "[grid]\n"
        "n = 512\n"
        "L = 60\n"
        "[datum]\n"
        "preset = sech(1,0.5,0.25)\n"
        "[battery]\n"
        "data = gaussian(1,1); zero\n"
        "[solver]\n"
        "k = 3\n"
        "dealias = false\n"
        "[scan]\n"
        "sr = 1:0.5, 2:0.75\n"
        "probe_r = 0.25, 0.5\n"
        "[output]\n"
        "format = json\n");
    CHECK(cfg.command == Command::Persistence);
    CHECK(cfg.n == 512);
    CHECK(cfg.L == 60.0);
    CHECK(cfg.datum.kind == PresetDatum::Kind::Sech);
    CHECK(cfg.datum.speed == 0.25);
    CHECK(cfg.battery.size() == 2);
    CHECK(cfg.solver.k == 3);
    CHECK_FALSE(cfg.solver.dealias);
    REQUIRE(cfg.scan.sr.size() == 2);
    CHECK(cfg.scan.sr[1].first == 2.0);
    CHECK(cfg.scan.sr[1].second == 0.75);
    CHECK(cfg.scan.probe_r == std::vector<double>{0.25, 0.5});
    CHECK(cfg.format == OutputFormat::Json);
}

TEST_CASE("round trip is idempotent") {
    ExperimentConfig cfg;
    cfg.command = Command::Calibrate;
    cfg.seed = 42;
    cfg.solver.c0 = 3.9962;
    cfg.solver.dt = 1.0 / 3.0;
    cfg.scan.beta = {0.1, 0.2};
    cfg.scan.probe_r = {0.25};
    cfg.datum = PresetDatum::gaussian(0.1, 1.0, -2.5);
    const std::string once = serialize_config(cfg);
    const ExperimentConfig back = parse_config(once);
    CHECK(serialize_config(back) == once);
    CHECK(back.solver.dt == cfg.solver.dt);
    CHECK(back.seed == 42);

    const std::string text = "[solver]\ndt = 0.002\n";
    const std::string first = serialize_config(parse_config(text));
    CHECK(serialize_config(parse_config(first)) == first);
}

TEST_CASE("errors name the offending key") {
    CHECK(error_key("[grid]\nbogus = 1\n") == "grid.bogus");
    CHECK(error_key("[grid]\nn = 100\nn = 200\n") == "grid.n");
    CHECK(error_key("[grid]\nn = 1001\n") == "grid.n");
    CHECK(error_key("[solver]\ndt = fast\n") == "solver.dt");
    CHECK(error_key("[datum]\npreset = triangle(1)\n") == "datum.preset");
    CHECK(error_key("command = verify-identities\n[scan]\nt =\n") == "scan.t");
    CHECK(error_key("command = persistence\n[scan]\nsr = 1:-0.5\n") == "scan.sr");
    CHECK(error_key("command = calibrate\n[battery]\ndata = zero\n") == "battery.data");
    CHECK(error_key("command = calibrate\n[scan]\nalpha = 1.5\n") == "scan.alpha");

    try {
        parse_config("command = verify-identities\n[scan]\nt =\n").validate();
        FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("empty") != std::string::npos);
    }
}

TEST_CASE("missing files are I/O errors") {
    CHECK_THROWS_AS(load_config("/nonexistent/dispersa.ini"), IoError);
}

TEST_CASE("number formatting keeps 17 digits") {
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(2.0) == "2");
    CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}
