#include <cmath>

#include "opsplit/errors.hpp"
#include "opsplit/harness/run.hpp"
#include "opsplit/linearize.hpp"
#include "opsplit/problems/burgers.hpp"
#include "opsplit/problems/hamiltonian.hpp"
#include "opsplit/problems/logistic.hpp"

namespace opsplit::harness {

std::vector<std::string> known_problem_ids() { return {"burgers2d", "harmonic", "logistic"}; }

std::vector<std::string> known_scheme_ids() {
    return {"ab",       "strang-aba", "strang-bab",    "symmetric-sum", "dunn",
            "burstein-mirin", "iter-one",   "iter-alt",      "zassenhaus-ab", "t2",
            "t4",       "t6",         "t8",            "t10",           "mpe:k=..."};
}

ProblemInstance make_problem(const ProblemSpec& spec, double dx, double t0, double oracle_tol) {
    ProblemInstance inst;
    inst.dx = dx;

    if (spec.id == "logistic") {
        const double u0 = spec.param("u0", 0.1);
        inst.system = logistic_split();
        inst.initial = {u0};
        inst.exact = [u0, t0](double t) { return StateVec{logistic_solution(u0, t - t0)}; };
        return inst;
    }

    if (spec.id == "harmonic") {
        const double mass = spec.param("mass", 1.0);
        const double k = spec.param("spring_k", 1.0);
        const double q0 = spec.param("q0", 1.0);
        const double v0 = spec.param("v0", 0.0);
        if (mass <= 0.0 || k <= 0.0) throw ConfigError("harmonic: mass and spring_k must be > 0");
        inst.system = drift_kick_split(harmonic_system(mass, k));
        inst.initial = {q0, v0};
        inst.exact = [mass, k, q0, v0, t0](double t) {
            return harmonic_solution(mass, k, q0, v0, t - t0);
        };
        return inst;
    }

    if (spec.id == "burgers2d") {
        if (!(dx > 0.0)) throw ConfigError("burgers2d needs dx > 0 in the ladder");
        const double nx_real = 1.0 / dx;
        const int nx = static_cast<int>(std::lround(nx_real));
        if (std::fabs(nx_real - nx) > 1e-9 || nx < 2)
            throw ConfigError("burgers2d: dx must divide the unit square, got dx=" +
                              std::to_string(dx));
        BurgersConfig bcfg;
        bcfg.mu = spec.param("mu", 0.05);
        bcfg.nx = nx;
        bcfg.ny = nx;
        bcfg.flow_tol = spec.param("flow_tol", 1e-7);
        inst.system = burgers_build(bcfg);
        inst.initial = burgers_exact_state(bcfg, t0);
        inst.exact = [bcfg](double t) { return burgers_exact_state(bcfg, t); };
        return inst;
    }

    (void)oracle_tol;
    throw ConfigError("unknown problem id '" + spec.id + "'");
}

namespace {

StepMap mpe_stepper(const SplitSystem& sys, std::vector<int> k_list) {
    MpeScheme scheme = make_mpe_scheme(sys, KSequence::checked(std::move(k_list)));
    return [scheme](double t, double h, const StateVec& c) { return mpe_step(scheme, t, h, c); };
}

}  // namespace

StepMap make_stepper(const SchemeSpec& spec, const SplitSystem& sys) {
    const std::string& id = spec.id;

    if (id == "ab")
        return [sys](double t, double h, const StateVec& c) { return ab_step(sys, t, h, c); };
    if (id == "strang-aba")
        return [sys](double t, double h, const StateVec& c) {
            return strang_step(sys, t, h, c, StrangOrder::aba);
        };
    if (id == "strang-bab")
        return [sys](double t, double h, const StateVec& c) {
            return strang_step(sys, t, h, c, StrangOrder::bab);
        };
    if (id == "symmetric-sum")
        return [sys](double t, double h, const StateVec& c) {
            return symmetric_sum_step(sys, t, h, c);
        };
    if (id == "dunn")
        return [sys](double t, double h, const StateVec& c) { return dunn_step(sys, t, h, c); };
    if (id == "burstein-mirin")
        return [sys](double t, double h, const StateVec& c) {
            return burstein_mirin_step(sys, t, h, c);
        };

    if (id == "iter-one" || id == "iter-alt") {
        IterativeConfig icfg;
        icfg.iterations = spec.iterations;
        icfg.switch_index = spec.switch_index;
        icfg.inner_tol = spec.inner_tol;
        icfg.init = spec.init_policy == "linear-in-time"
                        ? IterativeConfig::InitPolicy::linear_in_time
                        : IterativeConfig::InitPolicy::constant;
        if (id == "iter-one")
            return [sys, icfg](double t, double h, const StateVec& c) {
                return iterative_split_one(sys, t, h, c, icfg);
            };
        return [sys, icfg](double t, double h, const StateVec& c) {
            return iterative_split_alternating(sys, t, h, c, icfg);
        };
    }

    if (id == "zassenhaus-ab") {
        ZassenhausCorrection corr;
        corr.order = spec.zassenhaus_order;
        return [sys, corr](double t, double h, const StateVec& c) {
            return zassenhaus_ab_step(sys, t, h, c, corr);
        };
    }

    if (id == "t2") return mpe_stepper(sys, {1});
    if (id == "t4") return mpe_stepper(sys, {1, 2});
    if (id == "t6") return mpe_stepper(sys, {1, 2, 3});
    if (id == "t8") return mpe_stepper(sys, {1, 2, 3, 4});
    if (id == "t10") return mpe_stepper(sys, {1, 2, 3, 4, 5});

    if (id.rfind("mpe:k=", 0) == 0) return mpe_stepper(sys, parse_k_list(id.substr(6)));
    if (id == "mpe") {
        if (spec.k_list.empty()) throw ConfigError("scheme 'mpe' needs a k-list");
        return mpe_stepper(sys, spec.k_list);
    }

    throw ConfigError("unknown scheme id '" + id + "'");
}

}  // namespace opsplit::harness
