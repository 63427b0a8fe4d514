#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace opsplit::harness {

struct ReportRow {
    double dx = 0.0;
    double dt = 0.0;
    std::optional<double> err_l1;
    std::optional<double> err_max;
    std::optional<double> rho_l1;   // defined from the second row on
    std::optional<double> rho_max;
    double wall_ms = 0.0;
    std::string error;  // per-row failure message, empty on success
};

struct ConvergenceReport {
    std::vector<ReportRow> rows;
    std::map<std::string, std::string> metadata;  // scheme, problem, version, ...
};

/// CSV with header `dx,dt,err_l1,err_max,rho_l1,rho_max,wall_ms`; undefined
/// rates serialize as empty cells. Numbers print in shortest round-trip form.
std::string to_csv(const ConvergenceReport& report);

/// JSON mirror including metadata and per-row failure messages; undefined
/// values serialize as null.
std::string to_json(const ConvergenceReport& report);
ConvergenceReport report_from_json(const std::string& json_text);

enum class ReportFormat { csv, json };

/// Writes the report to path ("" or "-" = stdout). I/O failures carry the path.
void emit(const ConvergenceReport& report, ReportFormat format, const std::string& path);

}  // namespace opsplit::harness
