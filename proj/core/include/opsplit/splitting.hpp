#pragma once

#include <string>
#include <vector>

#include "opsplit/flow.hpp"

namespace opsplit {

enum class PairOrder { a_first, b_first };
enum class StrangOrder { aba, bab };

/// One exponential factor in a product: which operator and what fraction of h.
struct ProductFactor {
    char op;          // 'A' or 'B'
    double fraction;  // multiple of h, may be negative
};

/// A weighted product Π e^{fraction·h·Op} stored in application order
/// (first entry acts on the state first).
struct ProductTerm {
    double weight;
    std::vector<ProductFactor> factors;
};

/// Linear combination of operator products. Construction validates Σ weights = 1
/// and, within each term, A-fractions and B-fractions each summing to 1.
struct ProductScheme {
    std::string name;
    std::vector<ProductTerm> terms;

    static ProductScheme checked(std::string name, std::vector<ProductTerm> terms);
};

ProductScheme ab_scheme(PairOrder order = PairOrder::a_first);
ProductScheme strang_scheme(StrangOrder order = StrangOrder::aba);
ProductScheme symmetric_sum_scheme();
ProductScheme dunn_scheme();
ProductScheme burstein_mirin_scheme();

/// Applies a ProductScheme to c. Each sub-flow advances its own copy of the
/// clock: a factor (Op, f) acts over [t_op, t_op + f·h] where t_op accumulates
/// the fractions of Op already applied in that term.
StateVec product_step(const ProductScheme& scheme, const SplitSystem& sys, double t, double h,
                      const StateVec& c);

StateVec ab_step(const SplitSystem& sys, double t, double h, const StateVec& c,
                 PairOrder order = PairOrder::a_first);
StateVec strang_step(const SplitSystem& sys, double t, double h, const StateVec& c,
                     StrangOrder order = StrangOrder::aba);
StateVec symmetric_sum_step(const SplitSystem& sys, double t, double h, const StateVec& c);
StateVec dunn_step(const SplitSystem& sys, double t, double h, const StateVec& c);
StateVec burstein_mirin_step(const SplitSystem& sys, double t, double h, const StateVec& c);

struct IterativeConfig {
    enum class InitPolicy { constant, linear_in_time };

    int iterations = 1;    // m ≥ 1
    int switch_index = 1;  // j, alternating variant only, 1 ≤ j ≤ m
    double inner_tol = 1e-8;
    InitPolicy init = InitPolicy::constant;
    int trajectory_segments = 8;  // sampling resolution of stored iterates
};

/// Iterative splitting with one implicit operator: for i = 1..m solve
/// ∂t c_i = A(c_i) + B(c_{i−1}(s)) over [t, t+h], every c_i starting from c.
/// Returns c_m(t+h).
StateVec iterative_split_one(const SplitSystem& sys, double t, double h, const StateVec& c,
                             const IterativeConfig& cfg);

/// Alternating variant: iterations 1..j treat A implicitly (as above), then
/// j+1..m swap roles and solve ∂t c_i = A(c_{i−1}(s)) + B(c_i).
StateVec iterative_split_alternating(const SplitSystem& sys, double t, double h, const StateVec& c,
                                     const IterativeConfig& cfg);

}  // namespace opsplit
