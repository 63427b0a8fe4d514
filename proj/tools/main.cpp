// Command-line front end: MPE weight tables, convergence studies, single
// trajectories, and the 3x3 viscous-Burgers ladder.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "opsplit/errors.hpp"
#include "opsplit/harness/config.hpp"
#include "opsplit/harness/report.hpp"
#include "opsplit/harness/run.hpp"
#include "opsplit/mpe.hpp"
#include "opsplit/norms.hpp"
#include "opsplit/version.hpp"

namespace {

using namespace opsplit;
using namespace opsplit::harness;

struct CoeffsArgs {
    std::string k_text;
    bool rational_only = false;
    bool solve = false;
};

int run_coeffs(const CoeffsArgs& args) {
    KSequence seq = KSequence::checked(parse_k_list(args.k_text));
    MpeWeights w = mpe_weights(seq, args.solve ? WeightMode::solve : WeightMode::closed_form);

    std::string klist;
    for (std::size_t i = 0; i < seq.k.size(); ++i)
        klist += (i ? "," : "") + std::to_string(seq.k[i]);
    std::printf("k = {%s}  (order %d)\n", klist.c_str(), seq.order());

    for (std::size_t i = 0; i < w.values.size(); ++i) {
        const std::string frac = i < w.fractions.size() ? w.fractions[i] : std::string();
        if (args.rational_only) {
            if (frac.empty())
                throw ConfigError("exact fractions unavailable for k > 100; drop --rational");
            std::printf("c[%d] = %s\n", seq.k[i], frac.c_str());
        } else if (!frac.empty()) {
            std::printf("c[%d] = %s = %.17g\n", seq.k[i], frac.c_str(), w.values[i]);
        } else {
            std::printf("c[%d] = %.17g\n", seq.k[i], w.values[i]);
        }
    }
    return 0;
}

struct ConvergeArgs {
    std::string config_path;
    std::string out_path;
    std::string format;
};

int run_converge(const ConvergeArgs& args) {
    ExperimentConfig cfg = load_config(args.config_path);
    if (!args.out_path.empty()) cfg.out_path = args.out_path;
    if (!args.format.empty()) cfg.format = args.format;
    cfg.validate();

    ConvergenceReport report = run_convergence(cfg);
    emit(report, cfg.format == "json" ? ReportFormat::json : ReportFormat::csv, cfg.out_path);

    // A study whose every row failed is a numerical failure, not a report.
    bool any_ok = report.rows.empty();
    for (const ReportRow& r : report.rows)
        if (r.error.empty()) any_ok = true;
    if (!any_ok) {
        std::fprintf(stderr, "all ladder rows failed; first error: %s\n",
                     report.rows.front().error.c_str());
        return 2;
    }
    return 0;
}

struct StepArgs {
    std::string problem = "logistic";
    std::string scheme = "t6";
    double h = 0.05;
    double t0 = 0.0;
    double t_end = 1.0;
    double u0 = 0.1;
    double mu = 0.05;
    double dx = 0.025;
    double mass = 1.0;
    double spring_k = 1.0;
    double q0 = 1.0;
    double v0 = 0.0;
    int iterations = 1;
    int switch_index = 1;
    int zassenhaus_order = 2;
    double inner_tol = 1e-8;
};

int run_step(const StepArgs& args) {
    ProblemSpec problem;
    problem.id = args.problem;
    problem.params["u0"] = args.u0;
    problem.params["mu"] = args.mu;
    problem.params["mass"] = args.mass;
    problem.params["spring_k"] = args.spring_k;
    problem.params["q0"] = args.q0;
    problem.params["v0"] = args.v0;

    SchemeSpec scheme;
    scheme.id = args.scheme;
    scheme.iterations = args.iterations;
    scheme.switch_index = args.switch_index;
    scheme.zassenhaus_order = args.zassenhaus_order;
    scheme.inner_tol = args.inner_tol;

    if (!(args.h > 0.0)) throw ConfigError("step: h must be positive");
    if (!(args.t_end > args.t0)) throw ConfigError("step: t_end must exceed t0");

    ProblemInstance inst = make_problem(problem, args.problem == "burgers2d" ? args.dx : 0.0,
                                        args.t0, 1e-12);
    StepMap step = make_stepper(scheme, inst.system);

    const double span = args.t_end - args.t0;
    long nsteps = std::lround(span / args.h);
    if (nsteps < 1) nsteps = 1;
    const double dt = span / static_cast<double>(nsteps);

    StateVec state = inst.initial;
    for (long s = 0; s < nsteps; ++s) state = step(args.t0 + s * dt, dt, state);

    std::printf("problem: %s  scheme: %s\n", args.problem.c_str(), args.scheme.c_str());
    std::printf("t0: %g  t_end: %g  h: %.12g  steps: %ld\n", args.t0, args.t_end, dt, nsteps);
    if (state.size() <= 8) {
        std::printf("final state:");
        for (double v : state) std::printf(" %.12g", v);
        std::printf("\n");
    } else {
        std::printf("final state: %zu values, first 4:", state.size());
        for (std::size_t i = 0; i < 4; ++i) std::printf(" %.12g", state[i]);
        std::printf("\n");
    }
    ErrorNorms norms = error_norms(state, inst.exact(args.t_end));
    std::printf("err_l1: %.6e  err_max: %.6e\n", norms.l1, norms.max);
    return 0;
}

struct Table1Args {
    double mu = 0.05;
    int iterations = 2;
    double inner_tol = 1e-4;
};

int run_table1(const Table1Args& args) {
    // The published study alternates the active operator: a convection-active
    // sweep followed by a diffusion-active (implicit) sweep. Keeping diffusion
    // active in the last sweep is what makes the coarse time steps stable.
    std::printf("viscous Burgers, alternating iterative splitting (m=%d, switch after 1), "
                "t_end=1.25\n",
                args.iterations);
    std::printf("methodology reproduction, not bit reproduction\n\n");
    std::printf("%-8s %-8s %-12s %-9s %-12s %-9s %s\n", "dx", "dt", "err_l1", "rho_l1", "err_max",
                "rho_max", "wall_ms");

    // The published layout groups rows by time step: within each dt block the
    // mesh halves 1/10 -> 1/20 -> 1/40 and the rates pair across that halving.
    const std::vector<int> resolutions = {10, 20, 40};
    for (int nt : resolutions) {
        ExperimentConfig cfg;
        cfg.problem.id = "burgers2d";
        cfg.problem.params["mu"] = args.mu;
        cfg.scheme.id = "iter-alt";
        cfg.scheme.iterations = args.iterations;
        cfg.scheme.switch_index = 1;
        cfg.scheme.inner_tol = args.inner_tol;
        cfg.t_end = 1.25;
        for (int nx : resolutions) cfg.ladder.push_back({1.0 / nx, 1.0 / nt});

        ConvergenceReport report = run_convergence(cfg);
        for (const ReportRow& r : report.rows) {
            if (!r.error.empty()) {
                std::printf("1/%-6.0f 1/%-6d failed: %s\n", 1.0 / r.dx, nt, r.error.c_str());
                continue;
            }
            char rho_l1[32] = "-", rho_max[32] = "-";
            if (r.rho_l1) std::snprintf(rho_l1, sizeof rho_l1, "%.4f", *r.rho_l1);
            if (r.rho_max) std::snprintf(rho_max, sizeof rho_max, "%.4f", *r.rho_max);
            std::printf("1/%-6.0f 1/%-6d %-12.4e %-9s %-12.4e %-9s %.1f\n", 1.0 / r.dx, nt,
                        r.err_l1.value_or(0.0), rho_l1, r.err_max.value_or(0.0), rho_max,
                        r.wall_ms);
        }
        std::printf("\n");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exponential operator splitting with multi-product extrapolation"};
    app.set_version_flag("--version", opsplit::version_string);
    app.require_subcommand(1);

    CoeffsArgs coeffs;
    CLI::App* coeffs_cmd = app.add_subcommand("coeffs", "print extrapolation weights for a k-list");
    coeffs_cmd->add_option("--k", coeffs.k_text, "comma-separated kernel multipliers, e.g. 1,2,3")
        ->required();
    coeffs_cmd->add_flag("--rational", coeffs.rational_only, "print exact fractions only");
    coeffs_cmd->add_flag("--solve", coeffs.solve, "use the linear-system route instead of the closed form");

    ConvergeArgs converge;
    CLI::App* converge_cmd = app.add_subcommand("converge", "run a convergence study from a JSON config");
    converge_cmd->add_option("--config", converge.config_path, "path to the study config")->required();
    converge_cmd->add_option("--out", converge.out_path, "output path (default: config value or stdout)");
    converge_cmd->add_option("--format", converge.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    StepArgs step;
    CLI::App* step_cmd = app.add_subcommand("step", "integrate a single trajectory and report the error");
    step_cmd->set_help_flag("--help", "print help");  // frees -h for the step size
    step_cmd->add_option("--problem", step.problem, "logistic | harmonic | burgers2d");
    step_cmd->add_option("--scheme", step.scheme, "scheme id, e.g. strang-aba, t6, mpe:k=1,2,4");
    step_cmd->add_option("--h", step.h, "time step")->required();
    step_cmd->add_option("--t0", step.t0, "start time");
    step_cmd->add_option("--t-end", step.t_end, "end time")->required();
    step_cmd->add_option("--u0", step.u0, "logistic initial value");
    step_cmd->add_option("--mu", step.mu, "burgers viscosity");
    step_cmd->add_option("--dx", step.dx, "burgers grid spacing (1/nx)");
    step_cmd->add_option("--mass", step.mass, "harmonic mass");
    step_cmd->add_option("--spring-k", step.spring_k, "harmonic spring constant");
    step_cmd->add_option("--q0", step.q0, "harmonic initial position");
    step_cmd->add_option("--v0", step.v0, "harmonic initial velocity");
    step_cmd->add_option("--iterations", step.iterations, "iterative scheme sweep count m");
    step_cmd->add_option("--switch-index", step.switch_index, "iter-alt switch index j");
    step_cmd->add_option("--zassenhaus-order", step.zassenhaus_order, "zassenhaus-ab correction order");
    step_cmd->add_option("--inner-tol", step.inner_tol, "iterative inner-integrator tolerance");

    Table1Args table1;
    CLI::App* table1_cmd =
        app.add_subcommand("table1", "3x3 (dx, dt) Burgers ladder with iterative splitting");
    table1_cmd->add_option("--mu", table1.mu, "viscosity");
    table1_cmd->add_option("--iterations", table1.iterations, "iterative sweeps per step");
    table1_cmd->add_option("--inner-tol", table1.inner_tol, "inner-integrator tolerance");

    try {
        app.parse(argc, argv);
        if (coeffs_cmd->parsed()) return run_coeffs(coeffs);
        if (converge_cmd->parsed()) return run_converge(converge);
        if (step_cmd->parsed()) return run_step(step);
        if (table1_cmd->parsed()) return run_table1(table1);
        return 1;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const opsplit::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 2;
    }
}
