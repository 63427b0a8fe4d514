#pragma once

#include <functional>
#include <string>
#include <utility>

#include "opsplit/errors.hpp"
#include "opsplit/types.hpp"

namespace opsplit {

/// Right-hand side F(t, c) of an evolution equation, plus optional hooks.
struct VectorField {
    /// Writes F(t, c) into out (out is pre-sized to c.size()).
    std::function<void(double t, const StateVec& c, StateVec& out)> rhs;
    bool autonomous = true;
    std::string label = "field";

    /// Optional implicit-Euler hook: returns x solving x − tau·F(t, x) = rhs_vec.
    /// Fields whose implicit solve is cheap (e.g. linear diffusion) provide this
    /// so stiff sub-problems can be stepped without a stability limit.
    std::function<StateVec(double t, double tau, const StateVec& rhs_vec)> implicit_step;

    bool valid() const { return static_cast<bool>(rhs); }

    void eval_into(double t, const StateVec& c, StateVec& out) const {
        out.resize(c.size());
        rhs(t, c, out);
        if (out.size() != c.size())
            throw DimensionError(label + ": output dim " + std::to_string(out.size()) +
                                 " != input dim " + std::to_string(c.size()));
        if (!all_finite(out))
            throw EvaluationError(label + ": non-finite value in field evaluation at t=" +
                                  std::to_string(t));
    }

    StateVec eval(double t, const StateVec& c) const {
        StateVec out;
        eval_into(t, c, out);
        return out;
    }
};

inline VectorField zero_field() {
    VectorField f;
    f.rhs = [](double, const StateVec& c, StateVec& out) { out.assign(c.size(), 0.0); };
    f.label = "zero";
    return f;
}

/// Field c ↦ M·c for a dense row-major d×d matrix.
inline VectorField linear_field(std::vector<double> m, std::size_t d, std::string label = "linear") {
    if (m.size() != d * d) throw DimensionError("linear_field: matrix size mismatch");
    VectorField f;
    f.rhs = [m = std::move(m), d](double, const StateVec& c, StateVec& out) {
        if (c.size() != d)
            throw DimensionError("linear field: state dim " + std::to_string(c.size()) +
                                 " != matrix dim " + std::to_string(d));
        for (std::size_t i = 0; i < d; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < d; ++j) s += m[i * d + j] * c[j];
            out[i] = s;
        }
    };
    f.label = std::move(label);
    return f;
}

inline VectorField sum_field(VectorField a, VectorField b, std::string label = "sum") {
    VectorField f;
    f.autonomous = a.autonomous && b.autonomous;
    f.rhs = [a = std::move(a), b = std::move(b)](double t, const StateVec& c, StateVec& out) {
        StateVec tmp;
        a.eval_into(t, c, out);
        b.eval_into(t, c, tmp);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += tmp[i];
    };
    f.label = std::move(label);
    return f;
}

}  // namespace opsplit
