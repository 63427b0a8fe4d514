// Microbenchmarks for the hot paths: extrapolation-weight construction,
// single splitting steps on the scalar ODE and the 2-D viscous problem,
// and the dense Newton kernel used by implicit sub-flows.
#include <benchmark/benchmark.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "opsplit/harness/run.hpp"
#include "opsplit/linearize.hpp"
#include "opsplit/mpe.hpp"
#include "opsplit/problems/burgers.hpp"
#include "opsplit/problems/logistic.hpp"

namespace {

using namespace opsplit;

std::vector<int> natural_list(int n) {
    std::vector<int> ks(static_cast<std::size_t>(n));
    std::iota(ks.begin(), ks.end(), 1);
    return ks;
}

// Exact-rational weight tables for the natural sequence {1..n}.
void BM_WeightsClosedForm(benchmark::State& state) {
    const KSequence ks = KSequence::checked(natural_list(static_cast<int>(state.range(0))));
    for (auto _ : state) {
        MpeWeights w = mpe_weights(ks, WeightMode::closed_form);
        benchmark::DoNotOptimize(w.values.data());
    }
}
BENCHMARK(BM_WeightsClosedForm)->DenseRange(2, 6);

// Same tables through the rational moment-system solve (Gaussian elimination).
void BM_WeightsSolve(benchmark::State& state) {
    const KSequence ks = KSequence::checked(natural_list(static_cast<int>(state.range(0))));
    for (auto _ : state) {
        MpeWeights w = mpe_weights(ks, WeightMode::solve);
        benchmark::DoNotOptimize(w.values.data());
    }
}
BENCHMARK(BM_WeightsSolve)->DenseRange(2, 6);

// One extrapolated step on the logistic ODE. The t2..t10 ids map to the
// natural sequences {1}, {1,2}, ..., {1..5}; kernel evaluations grow as
// n(n+1)/2, which should show directly in the timings.
void BM_LogisticStep(benchmark::State& state, const char* scheme_id) {
    SplitSystem sys = logistic_split();
    harness::SchemeSpec spec;
    spec.id = scheme_id;
    StepMap step = harness::make_stepper(spec, sys);
    const StateVec u0 = {0.05};
    for (auto _ : state) {
        StateVec u1 = step(0.0, 0.05, u0);
        benchmark::DoNotOptimize(u1.data());
    }
}
BENCHMARK_CAPTURE(BM_LogisticStep, strang, "strang-aba");
BENCHMARK_CAPTURE(BM_LogisticStep, t2, "t2");
BENCHMARK_CAPTURE(BM_LogisticStep, t4, "t4");
BENCHMARK_CAPTURE(BM_LogisticStep, t6, "t6");
BENCHMARK_CAPTURE(BM_LogisticStep, t8, "t8");
BENCHMARK_CAPTURE(BM_LogisticStep, t10, "t10");

// One splitting step of the 2-D viscous front problem: explicit upwind
// convection plus a conjugate-gradient diffusion solve on a 19x19 interior.
// flow_tol matches the study configuration; the 1e-7 default forces the
// first-order implicit diffusion march through ~2^14 substeps per step.
void BM_BurgersStep(benchmark::State& state, const char* scheme_id) {
    BurgersConfig cfg;
    cfg.nx = cfg.ny = 20;
    cfg.flow_tol = 1e-5;
    SplitSystem sys = burgers_build(cfg);
    harness::SchemeSpec spec;
    spec.id = scheme_id;
    StepMap step = harness::make_stepper(spec, sys);
    const StateVec u0 = burgers_exact_state(cfg, 0.0);
    for (auto _ : state) {
        StateVec u1 = step(0.0, 0.025, u0);
        benchmark::DoNotOptimize(u1.data());
    }
}
BENCHMARK_CAPTURE(BM_BurgersStep, strang, "strang-aba");
BENCHMARK_CAPTURE(BM_BurgersStep, t4, "t4");

// Dense finite-difference Newton on x^2 = 2 from x0 = 1.5.
void BM_NewtonSqrt2(benchmark::State& state) {
    VectorField f;
    f.rhs = [](double, const StateVec& x, StateVec& out) { out[0] = x[0] * x[0] - 2.0; };
    SolverConfig cfg;
    cfg.tol = 1e-12;
    const StateVec x0 = {1.5};
    for (auto _ : state) {
        NewtonResult r = newton_solve(f, x0, cfg);
        benchmark::DoNotOptimize(r.x.data());
    }
}
BENCHMARK(BM_NewtonSqrt2);

}  // namespace

BENCHMARK_MAIN();
