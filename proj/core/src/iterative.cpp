#include <utility>

#include "opsplit/errors.hpp"
#include "opsplit/ode.hpp"
#include "opsplit/splitting.hpp"

namespace opsplit {

namespace {

// Solves ∂t x = active(x) + frozen(prev(s)) over [t, t+h] starting from c,
// returning the iterate sampled for the next sweep. Dispatches to implicit
// Euler when the active field carries the hook (stiff diffusion), RK4 with
// substep doubling otherwise.
SampledPath solve_iterate(const VectorField& active, const VectorField& frozen,
                          const SampledPath& prev, double t, double h, const StateVec& c,
                          const IterativeConfig& cfg) {
    const int segments = std::max(1, cfg.trajectory_segments);
    std::vector<StateVec> samples;
    samples.reserve(segments + 1);
    samples.push_back(c);

    if (active.implicit_step) {
        std::function<StateVec(double)> source = [&](double s) {
            return frozen.eval(s, prev.eval(s));
        };
        StateVec y = c;
        const double slice = h / segments;
        for (int s = 0; s < segments; ++s) {
            y = implicit_euler_doubling(active, t + s * slice, slice, y, cfg.inner_tol, &source);
            samples.push_back(y);
        }
    } else {
        OdeRhs rhs = [&](double s, const StateVec& y, StateVec& dydt) {
            active.eval_into(s, y, dydt);
            StateVec src = frozen.eval(s, prev.eval(s));
            for (std::size_t i = 0; i < dydt.size(); ++i) dydt[i] += src[i];
        };
        StateVec y = c;
        const double slice = h / segments;
        for (int s = 0; s < segments; ++s) {
            y = rk4_doubling(rhs, t + s * slice, slice, y, cfg.inner_tol);
            samples.push_back(y);
        }
    }
    return SampledPath(t, h, std::move(samples));
}

SampledPath initial_path(const SplitSystem& sys, double t, double h, const StateVec& c,
                         const IterativeConfig& cfg) {
    if (cfg.init == IterativeConfig::InitPolicy::linear_in_time) {
        StateVec slope = sys.combined_field().eval(t, c);
        return SampledPath::line(t, h, c, slope);
    }
    return SampledPath::constant(t, h, c);
}

}  // namespace

StateVec iterative_split_one(const SplitSystem& sys, double t, double h, const StateVec& c,
                             const IterativeConfig& cfg) {
    if (cfg.iterations < 1)
        throw ConfigError("iterative_split_one: iterations m=" + std::to_string(cfg.iterations) +
                          ", need m >= 1");
    if (h == 0.0) return c;
    SampledPath prev = initial_path(sys, t, h, c, cfg);
    for (int i = 1; i <= cfg.iterations; ++i)
        prev = solve_iterate(sys.a_field, sys.b_field, prev, t, h, c, cfg);
    return prev.eval(t + h);
}

StateVec iterative_split_alternating(const SplitSystem& sys, double t, double h, const StateVec& c,
                                     const IterativeConfig& cfg) {
    if (cfg.iterations < 1)
        throw ConfigError("iterative_split_alternating: iterations m=" +
                          std::to_string(cfg.iterations) + ", need m >= 1");
    if (cfg.switch_index < 1 || cfg.switch_index > cfg.iterations)
        throw ConfigError("iterative_split_alternating: switch index j=" +
                          std::to_string(cfg.switch_index) + " outside [1, m=" +
                          std::to_string(cfg.iterations) + "]");
    if (h == 0.0) return c;
    SampledPath prev = initial_path(sys, t, h, c, cfg);
    for (int i = 1; i <= cfg.switch_index; ++i)
        prev = solve_iterate(sys.a_field, sys.b_field, prev, t, h, c, cfg);
    for (int i = cfg.switch_index + 1; i <= cfg.iterations; ++i)
        prev = solve_iterate(sys.b_field, sys.a_field, prev, t, h, c, cfg);
    return prev.eval(t + h);
}

}  // namespace opsplit
