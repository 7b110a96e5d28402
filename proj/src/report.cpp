#include "dispersa/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace dispersa {

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size())
        throw InvalidArgument("table " + name + ": row has " + std::to_string(row.size()) + " cells, expected " +
                              std::to_string(columns.size()));
    rows.push_back(std::move(row));
}

const Table* ExperimentReport::table(const std::string& name) const {
    for (const auto& t : tables)
        if (t.name == name) return &t;
    return nullptr;
}

const Cell* ExperimentReport::summary_value(const std::string& key) const {
    for (const auto& [k, v] : summary)
        if (k == key) return &v;
    return nullptr;
}

std::string format_cell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
    if (const auto* l = std::get_if<long>(&c)) return std::to_string(*l);
    return std::get<std::string>(c);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::string table_to_csv(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + csv_field(t.columns[i]);
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_field(format_cell(row[i]));
        out += '\n';
    }
    return out;
}

namespace {

using nlohmann::ordered_json;

ordered_json cell_json(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) {
        if (!std::isfinite(*d)) return format_number(*d);
        return *d;
    }
    if (const auto* l = std::get_if<long>(&c)) return *l;
    return std::get<std::string>(c);
}

std::string timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << body;
    out.close();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace

std::string report_to_json(const ExperimentReport& report) {
    ordered_json doc;
    doc["header"] = {{"version", kVersion},
                     {"generated_at", timestamp()},
                     {"wall_clock_seconds", report.wall_clock_seconds}};
    doc["command"] = to_string(report.command);
    doc["config"] = report.config_text;
    ordered_json summary = ordered_json::object();
    for (const auto& [k, v] : report.summary) summary[k] = cell_json(v);
    doc["summary"] = summary;
    ordered_json tables = ordered_json::object();
    for (const auto& t : report.tables) {
        ordered_json rows = ordered_json::array();
        for (const auto& row : t.rows) {
            ordered_json r = ordered_json::object();
            for (std::size_t i = 0; i < row.size(); ++i) r[t.columns[i]] = cell_json(row[i]);
            rows.push_back(r);
        }
        tables[t.name] = rows;
    }
    doc["tables"] = tables;
    doc["warnings"] = report.warnings.messages;
    if (!report.failure.empty()) doc["failure"] = report.failure;
    return doc.dump(2) + "\n";
}

std::vector<std::string> write_report(const ExperimentReport& report, const std::string& dir, OutputFormat format) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());

    std::vector<std::string> written;
    for (const auto& t : report.tables) {
        const fs::path path = fs::path(dir) / (t.name + ".csv");
        write_file(path, table_to_csv(t));
        written.push_back(path.string());
    }
    for (const auto& [name, content] : report.attachments) {
        const fs::path path = fs::path(dir) / name;
        write_file(path, content);
        written.push_back(path.string());
    }

    if (format == OutputFormat::Json) {
        const fs::path path = fs::path(dir) / "report.json";
        write_file(path, report_to_json(report));
        written.push_back(path.string());
        return written;
    }

    // Run-dependent metadata stays in '#' lines so the body is reproducible.
    std::ostringstream os;
    os << "# dispersa " << kVersion << "\n";
    os << "# generated_at " << timestamp() << "\n";
    os << "# wall_clock_seconds " << format_number(report.wall_clock_seconds) << "\n";
    Table body{"report", {"key", "value"}, {}};
    body.add_row({std::string("command"), to_string(report.command)});
    for (const auto& [k, v] : report.summary) body.add_row({k, v});
    for (const auto& w : report.warnings.messages) body.add_row({std::string("warning"), w});
    if (!report.failure.empty()) body.add_row({std::string("failure"), report.failure});
    os << table_to_csv(body);
    const fs::path path = fs::path(dir) / "report.csv";
    write_file(path, os.str());
    written.push_back(path.string());
    return written;
}

}  // namespace dispersa
