#include "opsplit/harness/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "opsplit/errors.hpp"

namespace opsplit::harness {

using nlohmann::json;

namespace {

const std::vector<std::string> kProblems = {"burgers2d", "harmonic", "logistic"};

bool known_problem(const std::string& id) {
    for (const auto& p : kProblems)
        if (p == id) return true;
    return false;
}

bool known_scheme(const std::string& id) {
    static const std::vector<std::string> fixed = {
        "ab",      "strang-aba", "strang-bab",    "symmetric-sum", "dunn", "burstein-mirin",
        "iter-one", "iter-alt",  "zassenhaus-ab", "t2",            "t4",   "t6",
        "t8",       "t10",       "mpe"};
    for (const auto& s : fixed)
        if (s == id) return true;
    return id.rfind("mpe:k=", 0) == 0;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (!known_problem(problem.id))
        throw ConfigError("unknown problem id '" + problem.id + "'");
    if (!known_scheme(scheme.id)) throw ConfigError("unknown scheme id '" + scheme.id + "'");
    if (ladder.empty()) throw ConfigError("empty step ladder");
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        if (!(ladder[i].dt > 0.0))
            throw ConfigError("ladder entry " + std::to_string(i) + ": dt must be positive");
        if (ladder[i].dx < 0.0)
            throw ConfigError("ladder entry " + std::to_string(i) + ": dx must be >= 0");
        if (i > 0) {
            const bool non_increasing =
                ladder[i].dt <= ladder[i - 1].dt && ladder[i].dx <= ladder[i - 1].dx;
            const bool strictly_finer =
                ladder[i].dt < ladder[i - 1].dt || ladder[i].dx < ladder[i - 1].dx;
            if (!non_increasing || !strictly_finer)
                throw ConfigError("step ladder must be strictly decreasing at entry " +
                                  std::to_string(i));
        }
    }
    if (problem.id == "burgers2d") {
        for (const auto& e : ladder)
            if (!(e.dx > 0.0))
                throw ConfigError("burgers2d ladder entries need dx > 0");
    }
    if (!(t_end != t0)) throw ConfigError("t_end must differ from t0");
    if (norms != "l1" && norms != "max" && norms != "both")
        throw ConfigError("norms must be one of l1|max|both, got '" + norms + "'");
    if (format != "csv" && format != "json")
        throw ConfigError("format must be csv or json, got '" + format + "'");
    if (scheme.id == "iter-one" || scheme.id == "iter-alt") {
        if (scheme.iterations < 1) throw ConfigError("iterative scheme needs iterations >= 1");
        if (scheme.id == "iter-alt" &&
            (scheme.switch_index < 1 || scheme.switch_index > scheme.iterations))
            throw ConfigError("iter-alt switch_index must lie in [1, iterations]");
    }
    if (scheme.id == "zassenhaus-ab" && scheme.zassenhaus_order != 2 &&
        scheme.zassenhaus_order != 3)
        throw ConfigError("zassenhaus_order must be 2 or 3");
    if (scheme.init_policy != "constant" && scheme.init_policy != "linear-in-time")
        throw ConfigError("init_policy must be constant or linear-in-time");
}

namespace {

double require_number(const json& j, const char* key, const char* ctx) {
    if (!j.contains(key) || !j[key].is_number())
        throw ConfigError(std::string(ctx) + ": missing numeric field '" + key + "'");
    return j[key].get<double>();
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config root must be a JSON object");

    ExperimentConfig cfg;
    try {
        if (doc.contains("problem")) {
            const json& p = doc["problem"];
            if (p.is_string()) {
                cfg.problem.id = p.get<std::string>();
            } else if (p.is_object()) {
                cfg.problem.id = p.value("id", cfg.problem.id);
                for (auto it = p.begin(); it != p.end(); ++it)
                    if (it.value().is_number())
                        cfg.problem.params[it.key()] = it.value().get<double>();
            } else {
                throw ConfigError("'problem' must be a string or object");
            }
        }
        if (doc.contains("scheme")) {
            const json& s = doc["scheme"];
            if (s.is_string()) {
                cfg.scheme.id = s.get<std::string>();
            } else if (s.is_object()) {
                cfg.scheme.id = s.value("id", cfg.scheme.id);
                if (s.contains("k")) {
                    if (s["k"].is_array())
                        cfg.scheme.k_list = s["k"].get<std::vector<int>>();
                    else if (s["k"].is_string()) {
                        // parsed later against KSequence rules
                        std::string text = s["k"].get<std::string>();
                        std::istringstream in(text);
                        std::string tok;
                        while (std::getline(in, tok, ','))
                            cfg.scheme.k_list.push_back(std::stoi(tok));
                    } else
                        throw ConfigError("'scheme.k' must be an array or comma string");
                }
                cfg.scheme.iterations = s.value("iterations", cfg.scheme.iterations);
                cfg.scheme.switch_index = s.value("switch_index", cfg.scheme.switch_index);
                cfg.scheme.zassenhaus_order =
                    s.value("zassenhaus_order", cfg.scheme.zassenhaus_order);
                cfg.scheme.inner_tol = s.value("inner_tol", cfg.scheme.inner_tol);
                cfg.scheme.init_policy = s.value("init_policy", cfg.scheme.init_policy);
            } else {
                throw ConfigError("'scheme' must be a string or object");
            }
        }

        if (doc.contains("ladder")) {
            const json& l = doc["ladder"];
            if (l.is_array()) {
                for (const json& e : l) {
                    LadderEntry entry;
                    entry.dt = require_number(e, "dt", "ladder entry");
                    entry.dx = e.value("dx", 0.0);
                    cfg.ladder.push_back(entry);
                }
            } else if (l.is_object()) {
                const int halvings = static_cast<int>(require_number(l, "halvings", "ladder"));
                const double dt0 = require_number(l, "dt0", "ladder");
                const double dx0 = l.value("dx0", 0.0);
                if (halvings < 0) throw ConfigError("ladder.halvings must be >= 0");
                for (int i = 0; i <= halvings; ++i) {
                    LadderEntry entry;
                    entry.dt = dt0 / std::pow(2.0, i);
                    entry.dx = dx0 > 0.0 ? dx0 / std::pow(2.0, i) : 0.0;
                    cfg.ladder.push_back(entry);
                }
            } else {
                throw ConfigError("'ladder' must be an array or {halvings, dt0[, dx0]}");
            }
        }

        cfg.t0 = doc.value("t0", cfg.t0);
        cfg.t_end = doc.value("t_end", cfg.t_end);
        cfg.norms = doc.value("norms", cfg.norms);
        cfg.out_path = doc.value("out", cfg.out_path);
        cfg.format = doc.value("format", cfg.format);
        cfg.seed = doc.value("seed", cfg.seed);
        cfg.oracle_tol = doc.value("oracle_tol", cfg.oracle_tol);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config field: ") + e.what());
    }

    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace opsplit::harness
