#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace opsplit::harness {

/// One resolution of the study ladder. dx ≤ 0 means "not spatial" (ODE
/// problems); dt must be positive.
struct LadderEntry {
    double dx = 0.0;
    double dt = 0.0;
};

struct SchemeSpec {
    std::string id = "strang-aba";
    std::vector<int> k_list;       // MPE only; empty = derive from id
    int iterations = 1;            // iterative schemes: m
    int switch_index = 1;          // iter-alt: j
    int zassenhaus_order = 2;      // zassenhaus-ab
    double inner_tol = 1e-8;       // iterative inner integrator
    std::string init_policy = "constant";  // iterative c0: constant | linear-in-time
};

struct ProblemSpec {
    std::string id = "logistic";
    /// Numeric parameters (mu, u0, mass, spring_k, q0, v0, t_end, ...).
    std::map<std::string, double> params;

    double param(const std::string& key, double fallback) const {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    }
};

struct ExperimentConfig {
    ProblemSpec problem;
    SchemeSpec scheme;
    std::vector<LadderEntry> ladder;
    double t0 = 0.0;
    double t_end = 1.0;
    std::string norms = "both";  // "l1" | "max" | "both"
    std::string out_path;        // empty = stdout
    std::string format = "csv";  // "csv" | "json"
    std::uint64_t seed = 0;
    double oracle_tol = 1e-12;   // reference-flow tolerance for problems
                                 // without a closed-form solution

    /// Throws ConfigError unless ids are known, the ladder is strictly
    /// decreasing, and rates are computable (≥ 2 entries).
    void validate() const;
};

/// Parses the JSON config document. Accepts either an explicit "ladder" array
/// of {dx, dt} objects or {"halvings": n, "dt0": ..., "dx0": ...}.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

}  // namespace opsplit::harness
