#pragma once

#include <string>
#include <variant>
#include <vector>

#include "dispersa/config.hpp"
#include "dispersa/errors.hpp"

namespace dispersa {

inline constexpr const char* kVersion = "0.1.0";

using Cell = std::variant<double, long, std::string>;

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

struct ExperimentReport {
    Command command = Command::Solve;
    std::string config_text;
    std::vector<std::pair<std::string, Cell>> summary;
    std::vector<Table> tables;
    Warnings warnings;
    /// Extra files (name, content) written next to the report.
    std::vector<std::pair<std::string, std::string>> attachments;
    double wall_clock_seconds = 0.0;
    /// Set when a run stopped early (NonConvergence, BlowupDetected).
    std::string failure;

    const Table* table(const std::string& name) const;
    const Cell* summary_value(const std::string& key) const;
};

std::string format_cell(const Cell& c);
/// RFC 4180 quoting for fields with commas, quotes or newlines.
std::string csv_field(const std::string& s);
/// Header line plus rows, '\n' line endings, numbers at 17 significant digits.
std::string table_to_csv(const Table& t);

/// Writes <dir>/report.{csv,json} and <dir>/<table>.csv; returns written paths.
/// Throws IoError.
std::vector<std::string> write_report(const ExperimentReport& report, const std::string& dir, OutputFormat format);

/// The JSON document written for OutputFormat::Json.
std::string report_to_json(const ExperimentReport& report);

}  // namespace dispersa
