#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "opsplit/splitting.hpp"

namespace opsplit {

/// Strictly increasing positive kernel multipliers {k_i}; n entries give a
/// scheme of order 2n.
struct KSequence {
    std::vector<int> k;

    static KSequence checked(std::vector<int> k);
    static KSequence natural(int n);  // {1, 2, ..., n}

    int n() const { return static_cast<int>(k.size()); }
    int order() const { return 2 * n(); }
};

enum class WeightMode { closed_form, solve };

/// Extrapolation weights c_i. `fractions` holds exact values ("-16/15") when
/// the rational path was taken (all k_i ≤ 100), otherwise stays empty.
struct MpeWeights {
    std::vector<double> values;
    std::vector<std::string> fractions;
    KSequence k_source;
};

/// closed_form evaluates c_i = Π_{j≠i} k_i²/(k_i²−k_j²); solve solves the
/// moment system Σ_i c_i·k_i^{−2m} = δ_{m0}, m = 0..n−1. Both run in exact
/// rational arithmetic when every k_i ≤ 100.
MpeWeights mpe_weights(const KSequence& k, WeightMode mode = WeightMode::closed_form);

/// Generic single-step map (t, h, c) ↦ c'.
using StepMap = std::function<StateVec(double t, double h, const StateVec& c)>;

/// Extrapolated integrator: weighted combination of kernel powers T₂^k(h/k).
struct MpeScheme {
    MpeWeights weights;
    StepMap kernel;  // left-right symmetric second-order step
};

/// Builds the scheme with a Strang kernel over sys.
MpeScheme make_mpe_scheme(const SplitSystem& sys, const KSequence& k,
                          StrangOrder kernel_order = StrangOrder::aba,
                          WeightMode mode = WeightMode::closed_form);

/// Applies the kernel k times with step h/k, advancing time between substeps.
StateVec t2_power(const MpeScheme& scheme, int k, double t, double h, const StateVec& c);

/// Σ_i c_i · T₂^{k_i}(h/k_i) applied to c. Order 2n for n weights.
StateVec mpe_step(const MpeScheme& scheme, double t, double h, const StateVec& c);

/// Parses "1,2,4" into a k-list (validation via KSequence::checked).
std::vector<int> parse_k_list(std::string_view text);

}  // namespace opsplit
