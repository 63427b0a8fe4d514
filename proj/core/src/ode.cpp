#include "opsplit/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "opsplit/errors.hpp"

namespace opsplit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Dormand-Prince 5(4) tableau (FSAL).
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// b (order 5) minus b̂ (order 4): the embedded error estimate.
constexpr double d1 = 71.0 / 57600, d3 = -71.0 / 16695, d4 = 71.0 / 1920,
                 d5 = -17253.0 / 339200, d6 = 22.0 / 525, d7 = -1.0 / 40;

StateVec combine(const StateVec& y, double h, std::initializer_list<std::pair<double, const StateVec*>> parts) {
    StateVec r = y;
    for (const auto& [coef, k] : parts)
        for (std::size_t i = 0; i < r.size(); ++i) r[i] += h * coef * (*k)[i];
    return r;
}

}  // namespace

StateVec integrate_dopri5(const OdeRhs& rhs, double t0, double h, StateVec y,
                          const AdaptiveOptions& opt) {
    if (h == 0.0 || y.empty()) return y;

    const double dir = h > 0 ? 1.0 : -1.0;
    const double t_end = t0 + h;
    double t = t0;
    double dt = h;  // first attempt: the whole interval

    const std::size_t n = y.size();
    StateVec k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);

    rhs(t, y, k1);
    long steps = 0;
    bool k1_fresh = true;

    while (dir * (t_end - t) > 0.0) {
        if (++steps > opt.max_steps)
            throw FlowError("adaptive integrator exceeded step budget at t=" + std::to_string(t));

        // Clip to land exactly on t_end.
        if (dir * (t + dt - t_end) > 0.0) dt = t_end - t;
        if (std::fabs(dt) <= 64.0 * kEps * std::max(std::fabs(t), std::fabs(h)))
            throw FlowError("adaptive integrator step-size underflow at t=" + std::to_string(t) +
                            " (stiffness beyond budget)");

        if (!k1_fresh) rhs(t, y, k1);
        StateVec y2 = combine(y, dt, {{a21, &k1}});
        rhs(t + c2 * dt, y2, k2);
        StateVec y3 = combine(y, dt, {{a31, &k1}, {a32, &k2}});
        rhs(t + c3 * dt, y3, k3);
        StateVec y4 = combine(y, dt, {{a41, &k1}, {a42, &k2}, {a43, &k3}});
        rhs(t + c4 * dt, y4, k4);
        StateVec y5 = combine(y, dt, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
        rhs(t + c5 * dt, y5, k5);
        StateVec y6 = combine(y, dt, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
        rhs(t + dt, y6, k6);
        StateVec ynew = combine(y, dt, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        rhs(t + dt, ynew, k7);

        // Scaled RMS of the embedded difference.
        double err_sq = 0.0;
        bool finite = all_finite(ynew);
        if (finite) {
            for (std::size_t i = 0; i < n; ++i) {
                double e = dt * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] +
                                 d7 * k7[i]);
                double sc = opt.abs_tol + opt.rel_tol * std::max(std::fabs(y[i]), std::fabs(ynew[i]));
                err_sq += (e / sc) * (e / sc);
            }
        }
        double err = finite ? std::sqrt(err_sq / n) : std::numeric_limits<double>::infinity();

        if (err <= 1.0) {
            t += dt;
            y.swap(ynew);
            k1.swap(k7);  // FSAL
            k1_fresh = true;
            double grow = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            dt *= grow;
        } else {
            double shrink = std::isfinite(err) ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0)
                                               : 0.2;
            dt *= std::min(shrink, 0.9);
            k1_fresh = true;  // k1 still matches (t, y)
        }
    }
    return y;
}

StateVec rk4_fixed(const OdeRhs& rhs, double t0, double h, StateVec y, int substeps) {
    if (h == 0.0 || y.empty()) return y;
    if (substeps < 1) substeps = 1;
    const double tau = h / substeps;
    const std::size_t n = y.size();
    StateVec k1(n), k2(n), k3(n), k4(n), tmp(n);
    for (int s = 0; s < substeps; ++s) {
        const double t = t0 + s * tau;
        rhs(t, y, k1);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * tau * k1[i];
        rhs(t + 0.5 * tau, tmp, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * tau * k2[i];
        rhs(t + 0.5 * tau, tmp, k3);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + tau * k3[i];
        rhs(t + tau, tmp, k4);
        for (std::size_t i = 0; i < n; ++i)
            y[i] += tau / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return y;
}

StateVec rk4_doubling(const OdeRhs& rhs, double t0, double h, const StateVec& y, double tol,
                      int max_doublings) {
    if (h == 0.0 || y.empty()) return y;
    int n = 1;
    StateVec coarse = rk4_fixed(rhs, t0, h, y, n);
    for (int d = 0; d < max_doublings; ++d) {
        n *= 2;
        StateVec fine = rk4_fixed(rhs, t0, h, y, n);
        double delta = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i)
            delta = std::max(delta, std::fabs(fine[i] - coarse[i]));
        if (all_finite(fine) && delta <= tol * (1.0 + inf_norm(fine))) return fine;
        coarse.swap(fine);
    }
    throw FlowError("explicit inner integrator failed to reach tolerance within " +
                    std::to_string(1 << max_doublings) + " substeps over h=" + std::to_string(h));
}

namespace {

StateVec implicit_euler_fixed(const VectorField& g, double t0, double h, const StateVec& y0,
                              int substeps, const std::function<StateVec(double)>* source) {
    const double tau = h / substeps;
    StateVec y = y0;
    for (int s = 0; s < substeps; ++s) {
        const double t_next = t0 + (s + 1) * tau;
        StateVec rhs_vec = y;
        if (source) {
            StateVec src = (*source)(t_next);
            axpy(tau, src, rhs_vec);
        }
        y = g.implicit_step(t_next, tau, rhs_vec);
        if (!all_finite(y))
            throw EvaluationError(g.label + ": non-finite implicit-step result at t=" +
                                  std::to_string(t_next));
    }
    return y;
}

}  // namespace

StateVec implicit_euler_doubling(const VectorField& g, double t0, double h, const StateVec& y,
                                 double tol, const std::function<StateVec(double)>* source,
                                 int max_doublings) {
    if (h == 0.0 || y.empty()) return y;
    if (!g.implicit_step)
        throw FlowError(g.label + ": implicit inner integrator requested without implicit_step hook");
    int n = 1;
    StateVec coarse = implicit_euler_fixed(g, t0, h, y, n, source);
    for (int d = 0; d < max_doublings; ++d) {
        n *= 2;
        StateVec fine = implicit_euler_fixed(g, t0, h, y, n, source);
        double delta = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i)
            delta = std::max(delta, std::fabs(fine[i] - coarse[i]));
        if (delta <= tol * (1.0 + inf_norm(fine))) return fine;
        coarse.swap(fine);
    }
    throw FlowError("implicit inner integrator failed to reach tolerance within " +
                    std::to_string(1 << max_doublings) + " substeps over h=" + std::to_string(h));
}

SampledPath::SampledPath(double t0, double h, std::vector<StateVec> samples)
    : t0_(t0), h_(h), samples_(std::move(samples)) {
    if (samples_.size() < 2) throw DimensionError("SampledPath needs at least 2 samples");
}

SampledPath SampledPath::constant(double t0, double h, const StateVec& value) {
    return SampledPath(t0, h, {value, value});
}

SampledPath SampledPath::line(double t0, double h, const StateVec& v0, const StateVec& slope) {
    StateVec v1 = v0;
    axpy(h, slope, v1);
    return SampledPath(t0, h, {v0, v1});
}

StateVec SampledPath::eval(double t) const {
    const int nseg = segments();
    double s = h_ == 0.0 ? 0.0 : (t - t0_) / h_ * nseg;
    s = std::clamp(s, 0.0, static_cast<double>(nseg));
    int lo = std::min(static_cast<int>(s), nseg - 1);
    double w = s - lo;
    const StateVec& a = samples_[lo];
    const StateVec& b = samples_[lo + 1];
    StateVec r(a.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = (1.0 - w) * a[i] + w * b[i];
    return r;
}

SampledPath integrate_sampled(const OdeRhs& rhs, double t0, double h, const StateVec& y0,
                              double tol, int segments) {
    if (segments < 1) segments = 1;
    std::vector<StateVec> samples;
    samples.reserve(segments + 1);
    samples.push_back(y0);
    StateVec y = y0;
    const double slice = h / segments;
    for (int s = 0; s < segments; ++s) {
        y = rk4_doubling(rhs, t0 + s * slice, slice, y, tol);
        samples.push_back(y);
    }
    return SampledPath(t0, h, std::move(samples));
}

}  // namespace opsplit
