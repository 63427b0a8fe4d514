#pragma once

#include <functional>

#include "opsplit/vector_field.hpp"

namespace opsplit {

using OdeRhs = std::function<void(double t, const StateVec& y, StateVec& dydt)>;

struct AdaptiveOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    long max_steps = 5'000'000;
};

/// Adaptive Dormand-Prince 5(4) march from t0 to t0+h. h may be negative or 0.
/// Throws FlowError on step-size underflow or step-budget exhaustion.
StateVec integrate_dopri5(const OdeRhs& rhs, double t0, double h, StateVec y,
                          const AdaptiveOptions& opt = {});

/// Classical RK4 with a fixed number of equal substeps.
StateVec rk4_fixed(const OdeRhs& rhs, double t0, double h, StateVec y, int substeps);

/// RK4 with substep doubling until two consecutive endpoint answers agree to
/// tol·(1+‖y‖∞). Returns the finer answer.
StateVec rk4_doubling(const OdeRhs& rhs, double t0, double h, const StateVec& y, double tol,
                      int max_doublings = 24);

/// Implicit Euler driven through the field's implicit_step hook, with an added
/// frozen source term (may be null). Substep count doubles until two runs agree
/// to tol·(1+‖y‖∞).
StateVec implicit_euler_doubling(const VectorField& g, double t0, double h, const StateVec& y,
                                 double tol,
                                 const std::function<StateVec(double)>* source = nullptr,
                                 int max_doublings = 24);

/// Trajectory sampled on a uniform grid over [t0, t0+h], evaluated elsewhere by
/// piecewise-linear interpolation (clamped at the ends).
class SampledPath {
public:
    SampledPath() = default;
    SampledPath(double t0, double h, std::vector<StateVec> samples);

    static SampledPath constant(double t0, double h, const StateVec& value);
    /// value(s) = v0 + (s − t0)·slope
    static SampledPath line(double t0, double h, const StateVec& v0, const StateVec& slope);

    StateVec eval(double t) const;
    int segments() const { return static_cast<int>(samples_.size()) - 1; }
    const std::vector<StateVec>& samples() const { return samples_; }

private:
    double t0_ = 0.0;
    double h_ = 0.0;
    std::vector<StateVec> samples_;
};

/// Integrates rhs over [t0, t0+h] with RK4 substep doubling on each of
/// `segments` equal slices, recording the slice endpoints.
SampledPath integrate_sampled(const OdeRhs& rhs, double t0, double h, const StateVec& y0,
                              double tol, int segments);

}  // namespace opsplit
