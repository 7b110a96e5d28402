#include "dispersa/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace dispersa {

namespace {

const std::vector<std::pair<Command, std::string>> kCommands = {
    {Command::VerifyIdentities, "verify-identities"}, {Command::Solve, "solve"},
    {Command::Persistence, "persistence"},           {Command::PhiScan, "phi-scan"},
    {Command::Strichartz, "strichartz"},             {Command::Calibrate, "calibrate"},
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    if (trim(s).empty()) return out;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) out.push_back(trim(item));
    return out;
}

double to_double(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(v))
        throw ConfigError(key, "expected a finite number, got '" + text + "'");
    return v;
}

long to_integer(const std::string& key, const std::string& text) {
    const double v = to_double(key, text);
    if (v != std::round(v)) throw ConfigError(key, "expected an integer, got '" + text + "'");
    return static_cast<long>(v);
}

bool to_bool(const std::string& key, const std::string& text) {
    static const std::set<std::string> yes{"true", "1", "yes", "on"};
    static const std::set<std::string> no{"false", "0", "no", "off"};
    if (yes.count(text)) return true;
    if (no.count(text)) return false;
    throw ConfigError(key, "expected true or false, got '" + text + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    for (const auto& item : split(text, ',')) out.push_back(to_double(key, item));
    return out;
}

std::string join(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_number(v[i]);
    return out;
}

using Setter = void (*)(ExperimentConfig&, const std::string& key, const std::string& value);

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"command", [](ExperimentConfig& c, const std::string&, const std::string& v) { c.command = parse_command(v); }},
        {"seed",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             const long s = to_integer(k, v);
             if (s < 0) throw ConfigError(k, "must be >= 0");
             c.seed = static_cast<std::uint64_t>(s);
         }},
        {"grid.n",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             const long n = to_integer(k, v);
             if (n < 2) throw ConfigError(k, "must be >= 2");
             c.n = static_cast<std::size_t>(n);
         }},
        {"grid.L", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.L = to_double(k, v); }},
        {"datum.preset",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             try {
                 c.datum = parse_preset(v);
             } catch (const InvalidArgument& e) {
                 throw ConfigError(k, e.what());
             }
         }},
        {"battery.data",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.battery.clear();
             for (const auto& item : split(v, ';')) {
                 try {
                     c.battery.push_back(parse_preset(item));
                 } catch (const InvalidArgument& e) {
                     throw ConfigError(k, e.what());
                 }
             }
         }},
        {"solver.k",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.solver.k = static_cast<int>(to_integer(k, v));
         }},
        {"solver.dt", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.solver.dt = to_double(k, v); }},
        {"solver.T", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.solver.T = to_double(k, v); }},
        {"solver.n_picard",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.solver.n_picard = static_cast<int>(to_integer(k, v));
         }},
        {"solver.picard_tol",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.solver.picard_tol = to_double(k, v); }},
        {"solver.c0", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.solver.c0 = to_double(k, v); }},
        {"solver.dealias",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.solver.dealias = to_bool(k, v); }},
        {"solver.T_cap", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.solver.T_cap = to_double(k, v); }},
        {"solver.blowup_ceiling",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.solver.blowup_ceiling = to_double(k, v); }},
        {"scan.t", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.scan.t = to_list(k, v); }},
        {"scan.alpha", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.scan.alpha = to_list(k, v); }},
        {"scan.beta", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.scan.beta = to_list(k, v); }},
        {"scan.sr",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.scan.sr.clear();
             for (const auto& item : split(v, ',')) {
                 const auto colon = item.find(':');
                 if (colon == std::string::npos) throw ConfigError(k, "expected s:r pairs, got '" + item + "'");
                 c.scan.sr.emplace_back(to_double(k, trim(item.substr(0, colon))),
                                        to_double(k, trim(item.substr(colon + 1))));
             }
         }},
        {"scan.probe_r", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.scan.probe_r = to_list(k, v); }},
        {"scan.probe_s", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.scan.probe_s = to_double(k, v); }},
        {"scan.window", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.scan.window = to_list(k, v); }},
        {"scan.horizons",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.scan.horizons = to_list(k, v); }},
        {"scan.strichartz_times",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.scan.strichartz_times = static_cast<int>(to_integer(k, v));
         }},
        {"scan.calibration_dt",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.scan.calibration_dt = to_double(k, v); }},
        {"output.dir", [](ExperimentConfig& c, const std::string&, const std::string& v) { c.out_dir = v; }},
        {"output.format",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             try {
                 c.format = parse_format(v);
             } catch (const InvalidArgument& e) {
                 throw ConfigError(k, e.what());
             }
         }},
    };
    return table;
}

void require_nonempty(const std::vector<double>& v, const char* key) {
    if (v.empty()) throw ConfigError(key, "scan list is empty");
}

}  // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string to_string(Command c) {
    for (const auto& [cmd, name] : kCommands)
        if (cmd == c) return name;
    return "unknown";
}

Command parse_command(const std::string& text) {
    for (const auto& [cmd, name] : kCommands)
        if (name == text) return cmd;
    throw ConfigError("command", "unknown command '" + text + "'");
}

std::string to_string(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

OutputFormat parse_format(const std::string& text) {
    if (text == "csv") return OutputFormat::Csv;
    if (text == "json") return OutputFormat::Json;
    throw ConfigError("output.format", "expected csv or json, got '" + text + "'");
}

void ExperimentConfig::validate() const {
    if (n < 2 || n % 2 != 0) throw ConfigError("grid.n", "must be even and >= 2");
    if (!(L > 0.0)) throw ConfigError("grid.L", "must be positive");
    try {
        datum.validate(grid());
    } catch (const InvalidArgument& e) {
        throw ConfigError("datum.preset", e.what());
    }
    try {
        solver.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError("solver", e.what());
    }
    for (const auto& [s, r] : scan.sr) {
        if (!(r >= 0.0)) throw ConfigError("scan.sr", "weight power r must be >= 0");
        (void)s;
    }
    for (double r : scan.probe_r)
        if (!(r >= 0.0)) throw ConfigError("scan.probe_r", "weight power r must be >= 0");
    for (double a : scan.alpha)
        if (!(a > 0.0 && a < 1.0)) throw ConfigError("scan.alpha", "alpha must lie in (0, 1)");
    for (double b : scan.beta)
        if (!(b > 0.0 && b < 1.0)) throw ConfigError("scan.beta", "beta must lie in (0, 1)");
    if (scan.strichartz_times < 2) throw ConfigError("scan.strichartz_times", "must be >= 2");
    if (!(scan.calibration_dt > 0.0)) throw ConfigError("scan.calibration_dt", "must be positive");

    switch (command) {
        case Command::VerifyIdentities:
        case Command::PhiScan:
            require_nonempty(scan.t, "scan.t");
            require_nonempty(scan.alpha, "scan.alpha");
            break;
        case Command::Persistence:
            if (scan.sr.empty()) throw ConfigError("scan.sr", "scan list is empty");
            break;
        case Command::Strichartz:
            require_nonempty(scan.window, "scan.window");
            for (double w : scan.window)
                if (!(w > 0.0)) throw ConfigError("scan.window", "windows must be positive");
            if (battery.empty()) throw ConfigError("battery.data", "battery is empty");
            break;
        case Command::Calibrate: {
            require_nonempty(scan.alpha, "scan.alpha");
            require_nonempty(scan.horizons, "scan.horizons");
            require_nonempty(scan.window, "scan.window");
            const bool any = std::any_of(battery.begin(), battery.end(),
                                         [](const PresetDatum& d) { return d.kind != PresetDatum::Kind::Zero; });
            if (!any) throw ConfigError("battery.data", "degenerate battery: no nonzero datum");
            break;
        }
        case Command::Solve:
            break;
    }
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::set<std::string> seen;
    std::string section;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("line " + std::to_string(line_no), "malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no), "expected key = value");
        const std::string name = trim(line.substr(0, eq));
        const std::string key = section.empty() ? name : section + "." + name;
        const std::string value = trim(line.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) throw ConfigError(key, "unknown key");
        if (!seen.insert(key).second) throw ConfigError(key, "duplicate key");
        it->second(cfg, key, value);
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string serialize_config(const ExperimentConfig& c) {
    std::ostringstream os;
    os << "command = " << to_string(c.command) << "\n";
    os << "seed = " << c.seed << "\n";
    os << "\n[grid]\n";
    os << "n = " << c.n << "\n";
    os << "L = " << format_number(c.L) << "\n";
    os << "\n[datum]\n";
    os << "preset = " << c.datum.name() << "\n";
    os << "\n[battery]\n";
    os << "data = ";
    for (std::size_t i = 0; i < c.battery.size(); ++i) os << (i ? "; " : "") << c.battery[i].name();
    os << "\n";
    const SolverConfig& s = c.solver;
    os << "\n[solver]\n";
    os << "k = " << s.k << "\n";
    os << "dt = " << format_number(s.dt) << "\n";
    os << "T = " << format_number(s.T) << "\n";
    os << "n_picard = " << s.n_picard << "\n";
    os << "picard_tol = " << format_number(s.picard_tol) << "\n";
    os << "c0 = " << format_number(s.c0) << "\n";
    os << "dealias = " << (s.dealias ? "true" : "false") << "\n";
    os << "T_cap = " << format_number(s.T_cap) << "\n";
    os << "blowup_ceiling = " << format_number(s.blowup_ceiling) << "\n";
    os << "\n[scan]\n";
    os << "t = " << join(c.scan.t) << "\n";
    os << "alpha = " << join(c.scan.alpha) << "\n";
    os << "beta = " << join(c.scan.beta) << "\n";
    os << "sr = ";
    for (std::size_t i = 0; i < c.scan.sr.size(); ++i)
        os << (i ? ", " : "") << format_number(c.scan.sr[i].first) << ":" << format_number(c.scan.sr[i].second);
    os << "\n";
    os << "probe_r = " << join(c.scan.probe_r) << "\n";
    os << "probe_s = " << format_number(c.scan.probe_s) << "\n";
    os << "window = " << join(c.scan.window) << "\n";
    os << "horizons = " << join(c.scan.horizons) << "\n";
    os << "strichartz_times = " << c.scan.strichartz_times << "\n";
    os << "calibration_dt = " << format_number(c.scan.calibration_dt) << "\n";
    os << "\n[output]\n";
    os << "dir = " << c.out_dir << "\n";
    os << "format = " << to_string(c.format) << "\n";
    return os.str();
}

}  // namespace dispersa
