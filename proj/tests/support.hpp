#pragma once

// Shared helpers for the test binaries: dense matrix arithmetic, an
// independent matrix exponential (scaling and squaring over a Taylor series),
// split systems with exact linear sub-flows, and slope fitting for
// measured-order checks. Everything here is test-side so the checks stay
// independent of the library's own integrators.

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "opsplit/flow.hpp"
#include "opsplit/vector_field.hpp"

namespace testkit {

using opsplit::StateVec;
using Mat = std::vector<double>;  // row-major n×n

inline Mat mat_mul(const Mat& a, const Mat& b, std::size_t n) {
    Mat out(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const double aik = a[i * n + k];
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) out[i * n + j] += aik * b[k * n + j];
        }
    return out;
}

inline StateVec mat_vec(const Mat& m, const StateVec& v, std::size_t n) {
    StateVec out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i] += m[i * n + j] * v[j];
    return out;
}

inline Mat mat_add(const Mat& a, const Mat& b) {
    Mat out(a);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
    return out;
}

inline Mat mat_sub(const Mat& a, const Mat& b) {
    Mat out(a);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
    return out;
}

inline Mat mat_scale(Mat a, double s) {
    for (double& v : a) v *= s;
    return a;
}

/// ab − ba.
inline Mat mat_comm(const Mat& a, const Mat& b, std::size_t n) {
    return mat_sub(mat_mul(a, b, n), mat_mul(b, a, n));
}

inline Mat mat_identity(std::size_t n) {
    Mat out(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) out[i * n + i] = 1.0;
    return out;
}

/// Matrix exponential by scaling and squaring over a Taylor series. Accurate
/// to machine precision for the modest norms these tests use.
inline Mat expm(Mat a, std::size_t n) {
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += std::abs(a[i * n + j]);
        norm = std::max(norm, row);
    }
    int s = 0;
    while (norm > 0.5) {
        norm *= 0.5;
        ++s;
    }
    for (double& v : a) v = std::ldexp(v, -s);

    Mat result = mat_identity(n);
    Mat term = mat_identity(n);
    for (int k = 1; k <= 40; ++k) {
        term = mat_scale(mat_mul(term, a, n), 1.0 / k);
        result = mat_add(result, term);
        double tmax = 0.0;
        for (double v : term) tmax = std::max(tmax, std::abs(v));
        if (tmax < 1e-20) break;
    }
    for (int i = 0; i < s; ++i) result = mat_mul(result, result, n);
    return result;
}

inline double max_abs_diff(const StateVec& a, const StateVec& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

/// Split system for matrix fields u̇ = A u, u̇ = B u with closed-form
/// sub-flows e^{hA}, e^{hB} built from the test-side exponential.
inline opsplit::SplitSystem linear_split_exact(const Mat& a, const Mat& b, std::size_t n) {
    opsplit::SplitSystem sys;
    sys.a_field = opsplit::linear_field(a, n, "a");
    sys.b_field = opsplit::linear_field(b, n, "b");
    sys.a_flow = opsplit::exact_flow(
        sys.a_field,
        [a, n](double, double h, const StateVec& c) { return mat_vec(expm(mat_scale(a, h), n), c, n); },
        "exp-a");
    sys.b_flow = opsplit::exact_flow(
        sys.b_field,
        [b, n](double, double h, const StateVec& c) { return mat_vec(expm(mat_scale(b, h), n), c, n); },
        "exp-b");
    return sys;
}

/// Frozen non-commuting 2×2 pair and start state used by the order batteries.
inline const Mat& battery_a() {
    static const Mat m = {0.3, 1.0, 0.0, -0.35};
    return m;
}
inline const Mat& battery_b() {
    static const Mat m = {-0.15, 0.0, 0.85, 0.2};
    return m;
}
inline const StateVec& battery_c0() {
    static const StateVec c = {0.7, -0.4};
    return c;
}
inline opsplit::SplitSystem battery_split() {
    return linear_split_exact(battery_a(), battery_b(), 2);
}
/// exp(T·(A+B))·c0 for the battery pair.
inline StateVec battery_exact(double t_final) {
    return mat_vec(expm(mat_scale(mat_add(battery_a(), battery_b()), t_final), 2), battery_c0(), 2);
}

using StepFn = std::function<StateVec(double t, double h, const StateVec& c)>;

/// Global error at t_end after marching with fixed steps of (approximately) h.
inline double global_error(const StepFn& step, const StateVec& u0, double t0, double t_end,
                           double h, const std::function<StateVec(double)>& exact) {
    const double span = t_end - t0;
    long n = std::lround(span / h);
    if (n < 1) n = 1;
    const double dt = span / static_cast<double>(n);
    StateVec u = u0;
    for (long i = 0; i < n; ++i) u = step(t0 + i * dt, dt, u);
    return max_abs_diff(u, exact(t_end));
}

/// Least-squares slope of log err against log h over all points.
inline double slope(const std::vector<double>& hs, const std::vector<double>& errs) {
    const std::size_t n = hs.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += std::log(hs[i]);
        my += std::log(errs[i]);
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = std::log(hs[i]) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(errs[i]) - my);
    }
    return sxy / sxx;
}

/// Slope restricted to the asymptotic range: truncate at the first successive
/// pair whose error stops shrinking by at least 1.5×, then fit over at most
/// max_points coarsest remaining points (0 = all usable).
inline double floored_slope(const std::vector<double>& hs, const std::vector<double>& errs,
                            std::size_t max_points = 0) {
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
    if (usable < 2) return 0.0;
    std::size_t count = usable;
    if (max_points > 0 && max_points < count) count = max_points;
    return slope(std::vector<double>(hs.begin(), hs.begin() + count),
                 std::vector<double>(errs.begin(), errs.begin() + count));
}

/// Errors of a stepper over a ladder of step sizes (shared march settings).
inline std::vector<double> error_ladder(const StepFn& step, const StateVec& u0, double t0,
                                        double t_end, const std::vector<double>& hs,
                                        const std::function<StateVec(double)>& exact) {
    std::vector<double> errs;
    errs.reserve(hs.size());
    for (double h : hs) errs.push_back(global_error(step, u0, t0, t_end, h, exact));
    return errs;
}

}  // namespace testkit
