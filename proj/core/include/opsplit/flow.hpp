#pragma once

#include <functional>
#include <string>

#include "opsplit/vector_field.hpp"

namespace opsplit {

/// One sub-problem solver: the flow map of a single vector field over [t0, t0+h].
struct SubFlow {
    enum class Kind { exact, numeric };

    VectorField field;
    /// Flow map c(t0) ↦ c(t0+h). Negative h is allowed.
    std::function<StateVec(double t0, double h, const StateVec& c)> map;
    Kind kind = Kind::numeric;
    double tol = 1e-12;  // numeric kind only
    std::string label = "flow";

    bool valid() const { return static_cast<bool>(map); }

    /// h = 0 short-circuits to the identity so compositions with vanishing
    /// stage fractions stay bit-exact.
    StateVec apply(double t0, double h, const StateVec& c) const;
};

/// Wraps a closed-form flow map.
SubFlow exact_flow(VectorField field,
                   std::function<StateVec(double, double, const StateVec&)> map,
                   std::string label = "exact-flow");

/// Integrates the field with the adaptive reference method to tolerance tol.
/// Fields carrying an implicit_step hook are advanced by tolerance-controlled
/// implicit Euler instead, which has no stability limit.
SubFlow numeric_flow(VectorField field, double tol = 1e-12, std::string label = "numeric-flow");

/// The split problem ∂t u = A(u) + B(u) with solvers for both halves.
struct SplitSystem {
    VectorField a_field;
    VectorField b_field;
    SubFlow a_flow;
    SubFlow b_flow;
    VectorField full_field;  // optional; A+B is synthesized when absent

    bool has_full_field() const { return full_field.valid(); }

    /// full_field when present, otherwise A(t,c)+B(t,c).
    VectorField combined_field() const;

    /// Checks ‖full_field(c) − A(c) − B(c)‖∞ ≤ 1e-12·(1+‖c‖∞) on the given states.
    void check_consistency(const std::vector<StateVec>& samples, double t = 0.0) const;
};

/// Convenience constructor: numeric flows for both fields.
SplitSystem make_split_system(VectorField a, VectorField b, double tol = 1e-12);

}  // namespace opsplit
