#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "opsplit/errors.hpp"
#include "opsplit/harness/run.hpp"
#include "opsplit/norms.hpp"
#include "opsplit/version.hpp"

namespace opsplit::harness {

double convergence_rate(double err_coarse, double err_fine) {
    if (!(err_coarse > 0.0) || !(err_fine > 0.0))
        throw ConfigError("convergence_rate: errors must be positive");
    return std::log(err_fine / err_coarse) / std::log(0.5);
}

double convergence_rate(double e1, double h1, double e2, double h2) {
    if (!(e1 > 0.0) || !(e2 > 0.0))
        throw ConfigError("convergence_rate: errors must be positive");
    if (!(h1 > 0.0) || !(h2 > 0.0) || h1 == h2)
        throw ConfigError("convergence_rate: resolutions must be positive and distinct");
    return std::log(e2 / e1) / std::log(h2 / h1);
}

double fit_order(const std::vector<double>& hs, const std::vector<double>& errs, int max_points) {
    if (hs.size() != errs.size()) throw ConfigError("fit_order: size mismatch");
    if (hs.size() < 2) throw ConfigError("fit_order: need at least 2 points");
    for (std::size_t i = 1; i < hs.size(); ++i)
        if (!(hs[i] > 0.0) || !(hs[i] < hs[i - 1]))
            throw ConfigError("fit_order: h ladder must be positive and strictly decreasing");

    // Truncate at the roundoff floor: the first pair whose error stops
    // shrinking by at least 1.5x, or a nonpositive error.
    std::size_t usable = hs.size();
    for (std::size_t i = 0; i + 1 < hs.size(); ++i) {
        if (!(errs[i] > 0.0)) {
            usable = i;
            break;
        }
        if (!(errs[i + 1] > 0.0) || errs[i] / errs[i + 1] < 1.5) {
            usable = i + 1;
            break;
        }
    }
    if (usable < 2)
        throw Error("fit_order: ladder is inside the roundoff floor, no asymptotic range");

    std::size_t count = usable;
    if (max_points > 0 && static_cast<std::size_t>(max_points) < count)
        count = static_cast<std::size_t>(max_points);

    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        sx += std::log(hs[i]);
        sy += std::log(errs[i]);
    }
    const double mx = sx / count, my = sy / count;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double dx = std::log(hs[i]) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(errs[i]) - my);
    }
    return sxy / sxx;
}

namespace {

int thread_cap(std::size_t rows) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    long cap = static_cast<long>(hw);
    if (const char* env = std::getenv("MPE_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) cap = v;
    }
    if (cap > static_cast<long>(rows)) cap = static_cast<long>(rows);
    return static_cast<int>(std::max(1L, cap));
}

void run_row(const ExperimentConfig& cfg, const LadderEntry& entry, ReportRow& row) {
    namespace chrono = std::chrono;
    const auto start = chrono::steady_clock::now();
    row.dx = entry.dx;
    row.dt = entry.dt;
    try {
        ProblemInstance inst = make_problem(cfg.problem, entry.dx, cfg.t0, cfg.oracle_tol);
        StepMap step = make_stepper(cfg.scheme, inst.system);

        const double span = cfg.t_end - cfg.t0;
        long nsteps = std::lround(span / entry.dt);
        if (nsteps < 1) nsteps = 1;
        const double dt_eff = span / static_cast<double>(nsteps);

        StateVec state = inst.initial;
        for (long s = 0; s < nsteps; ++s) state = step(cfg.t0 + s * dt_eff, dt_eff, state);

        ErrorNorms norms = error_norms(state, inst.exact(cfg.t_end));
        if (cfg.norms != "max") row.err_l1 = norms.l1;
        if (cfg.norms != "l1") row.err_max = norms.max;
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    row.wall_ms = chrono::duration<double, std::milli>(chrono::steady_clock::now() - start).count();
}

}  // namespace

ConvergenceReport run_convergence(const ExperimentConfig& cfg) {
    cfg.validate();

    ConvergenceReport report;
    report.rows.resize(cfg.ladder.size());

    const int workers = thread_cap(cfg.ladder.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < cfg.ladder.size(); ++i)
            run_row(cfg, cfg.ladder[i], report.rows[i]);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&]() {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= cfg.ladder.size()) return;
                    run_row(cfg, cfg.ladder[i], report.rows[i]);
                }
            });
        }
        for (std::thread& th : pool) th.join();
    }

    // Per-pair rates, defined from the second row on. The pair's resolution is
    // dx when it changes, dt otherwise.
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
        const ReportRow& prev = report.rows[i - 1];
        ReportRow& cur = report.rows[i];
        if (!prev.error.empty() || !cur.error.empty()) continue;
        const bool spatial = prev.dx != cur.dx && prev.dx > 0.0 && cur.dx > 0.0;
        const double h1 = spatial ? prev.dx : prev.dt;
        const double h2 = spatial ? cur.dx : cur.dt;
        if (prev.err_l1 && cur.err_l1 && *prev.err_l1 > 0.0 && *cur.err_l1 > 0.0)
            cur.rho_l1 = convergence_rate(*prev.err_l1, h1, *cur.err_l1, h2);
        if (prev.err_max && cur.err_max && *prev.err_max > 0.0 && *cur.err_max > 0.0)
            cur.rho_max = convergence_rate(*prev.err_max, h1, *cur.err_max, h2);
    }

    report.metadata["problem"] = cfg.problem.id;
    report.metadata["scheme"] = cfg.scheme.id;
    report.metadata["version"] = version_string;
    report.metadata["t0"] = std::to_string(cfg.t0);
    report.metadata["t_end"] = std::to_string(cfg.t_end);
    report.metadata["seed"] = std::to_string(cfg.seed);
    return report;
}

}  // namespace opsplit::harness
