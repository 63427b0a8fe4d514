#pragma once

#include <functional>
#include <string>
#include <vector>

#include "opsplit/harness/config.hpp"
#include "opsplit/harness/report.hpp"
#include "opsplit/mpe.hpp"

namespace opsplit::harness {

/// A benchmark problem instantiated at one spatial resolution.
struct ProblemInstance {
    SplitSystem system;
    StateVec initial;                         // state at t0
    std::function<StateVec(double)> exact;    // analytic/oracle solution sampler
    double dx = 0.0;                          // 0 for ODE problems
};

/// Instantiates "burgers2d" (dx > 0 required), "harmonic", or "logistic".
ProblemInstance make_problem(const ProblemSpec& spec, double dx, double t0, double oracle_tol);

/// Resolves a scheme id against a split system. Known ids: "ab", "strang-aba",
/// "strang-bab", "symmetric-sum", "dunn", "burstein-mirin", "iter-one",
/// "iter-alt", "zassenhaus-ab", "t2".."t10", "mpe:k=...".
StepMap make_stepper(const SchemeSpec& spec, const SplitSystem& sys);

std::vector<std::string> known_scheme_ids();
std::vector<std::string> known_problem_ids();

/// Empirical order for one resolution halving: log(err_fine/err_coarse)/log(0.5).
double convergence_rate(double err_coarse, double err_fine);

/// Generalized two-point order log(e2/e1)/log(h2/h1) for non-halved ladders.
double convergence_rate(double e1, double h1, double e2, double h2);

/// Least-squares slope of log err vs log h. The ladder (h descending) is
/// truncated at the roundoff floor (first successive error ratio < 1.5);
/// max_points > 0 keeps only that many of the coarsest surviving points.
double fit_order(const std::vector<double>& hs, const std::vector<double>& errs,
                 int max_points = 0);

/// Runs the scheme over every ladder entry, measuring error norms against the
/// problem's exact solution at t_end and filling per-pair rates. Rows run
/// concurrently (capped by env MPE_THREADS); failures are recorded per row.
ConvergenceReport run_convergence(const ExperimentConfig& cfg);

}  // namespace opsplit::harness
