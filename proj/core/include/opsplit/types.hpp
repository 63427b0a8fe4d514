#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace opsplit {

/// Dense state vector. Grid problems store fields row-major; coupled systems
/// concatenate their components.
using StateVec = std::vector<double>;

inline double inf_norm(const StateVec& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

inline double two_norm(const StateVec& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline bool all_finite(const StateVec& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

/// y += a*x
inline void axpy(double a, const StateVec& x, StateVec& y) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

inline StateVec scaled(const StateVec& x, double a) {
    StateVec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = a * x[i];
    return r;
}

inline StateVec diff(const StateVec& a, const StateVec& b) {
    StateVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

}  // namespace opsplit
