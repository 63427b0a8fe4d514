#include "opsplit/harness/report.hpp"

#include <charconv>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "opsplit/errors.hpp"

namespace opsplit::harness {

using nlohmann::json;

namespace {

// Shortest representation that round-trips exactly.
std::string fmt(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

}  // namespace

std::string to_csv(const ConvergenceReport& report) {
    std::string out = "dx,dt,err_l1,err_max,rho_l1,rho_max,wall_ms\n";
    for (const ReportRow& r : report.rows) {
        out += fmt(r.dx);
        out += ',';
        out += fmt(r.dt);
        out += ',';
        out += fmt_opt(r.err_l1);
        out += ',';
        out += fmt_opt(r.err_max);
        out += ',';
        out += fmt_opt(r.rho_l1);
        out += ',';
        out += fmt_opt(r.rho_max);
        out += ',';
        out += fmt(r.wall_ms);
        out += '\n';
    }
    return out;
}

namespace {

json opt_to_json(const std::optional<double>& v) {
    if (!v) return nullptr;
    return *v;
}

std::optional<double> opt_from_json(const json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

}  // namespace

std::string to_json(const ConvergenceReport& report) {
    json doc;
    doc["metadata"] = report.metadata;
    json rows = json::array();
    for (const ReportRow& r : report.rows) {
        json row;
        row["dx"] = r.dx;
        row["dt"] = r.dt;
        row["err_l1"] = opt_to_json(r.err_l1);
        row["err_max"] = opt_to_json(r.err_max);
        row["rho_l1"] = opt_to_json(r.rho_l1);
        row["rho_max"] = opt_to_json(r.rho_max);
        row["wall_ms"] = r.wall_ms;
        row["error"] = r.error;
        rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

ConvergenceReport report_from_json(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("report is not valid JSON: ") + e.what());
    }
    ConvergenceReport report;
    try {
        if (doc.contains("metadata"))
            report.metadata = doc["metadata"].get<std::map<std::string, std::string>>();
        for (const json& row : doc.value("rows", json::array())) {
            ReportRow r;
            r.dx = row.value("dx", 0.0);
            r.dt = row.value("dt", 0.0);
            r.err_l1 = opt_from_json(row.value("err_l1", json()));
            r.err_max = opt_from_json(row.value("err_max", json()));
            r.rho_l1 = opt_from_json(row.value("rho_l1", json()));
            r.rho_max = opt_from_json(row.value("rho_max", json()));
            r.wall_ms = row.value("wall_ms", 0.0);
            r.error = row.value("error", std::string());
            report.rows.push_back(std::move(r));
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed report field: ") + e.what());
    }
    return report;
}

void emit(const ConvergenceReport& report, ReportFormat format, const std::string& path) {
    const std::string payload = format == ReportFormat::csv ? to_csv(report) : to_json(report);
    if (path.empty() || path == "-") {
        std::cout << payload;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file '" + path + "'");
    out << payload;
    if (!out) throw Error("write failed for output file '" + path + "'");
}

}  // namespace opsplit::harness
