#include "opsplit/splitting.hpp"

#include <cmath>

#include "opsplit/errors.hpp"

namespace opsplit {

ProductScheme ProductScheme::checked(std::string name, std::vector<ProductTerm> terms) {
    double weight_sum = 0.0;
    for (std::size_t k = 0; k < terms.size(); ++k) {
        const ProductTerm& term = terms[k];
        weight_sum += term.weight;
        double a_sum = 0.0, b_sum = 0.0;
        for (const ProductFactor& f : term.factors) {
            if (f.op == 'A')
                a_sum += f.fraction;
            else if (f.op == 'B')
                b_sum += f.fraction;
            else
                throw ConfigError(name + ": unknown operator tag '" + std::string(1, f.op) + "'");
        }
        if (std::fabs(a_sum - 1.0) > 1e-12 || std::fabs(b_sum - 1.0) > 1e-12)
            throw ConfigError(name + ": term " + std::to_string(k) +
                              " fraction sums (A=" + std::to_string(a_sum) +
                              ", B=" + std::to_string(b_sum) + ") must both be 1");
    }
    if (std::fabs(weight_sum - 1.0) > 1e-12)
        throw ConfigError(name + ": weights sum to " + std::to_string(weight_sum) + ", need 1");
    ProductScheme s;
    s.name = std::move(name);
    s.terms = std::move(terms);
    return s;
}

ProductScheme ab_scheme(PairOrder order) {
    if (order == PairOrder::a_first)
        return ProductScheme::checked("ab", {{1.0, {{'A', 1.0}, {'B', 1.0}}}});
    return ProductScheme::checked("ba", {{1.0, {{'B', 1.0}, {'A', 1.0}}}});
}

ProductScheme strang_scheme(StrangOrder order) {
    if (order == StrangOrder::aba)
        return ProductScheme::checked("strang-aba",
                                      {{1.0, {{'A', 0.5}, {'B', 1.0}, {'A', 0.5}}}});
    return ProductScheme::checked("strang-bab", {{1.0, {{'B', 0.5}, {'A', 1.0}, {'B', 0.5}}}});
}

ProductScheme symmetric_sum_scheme() {
    return ProductScheme::checked("symmetric-sum", {
                                                       {0.5, {{'A', 1.0}, {'B', 1.0}}},
                                                       {0.5, {{'B', 1.0}, {'A', 1.0}}},
                                                   });
}

ProductScheme dunn_scheme() {
    // (4/3)·(S_AB + S_BA)/2 − (1/3)·(e^A e^B + e^B e^A)/2, all four products
    // spelled out as weighted terms.
    return ProductScheme::checked("dunn", {
                                              {2.0 / 3.0, {{'B', 0.5}, {'A', 1.0}, {'B', 0.5}}},
                                              {2.0 / 3.0, {{'A', 0.5}, {'B', 1.0}, {'A', 0.5}}},
                                              {-1.0 / 6.0, {{'B', 1.0}, {'A', 1.0}}},
                                              {-1.0 / 6.0, {{'A', 1.0}, {'B', 1.0}}},
                                          });
}

ProductScheme burstein_mirin_scheme() {
    // (9/8)e^{(h/3)A}e^{(2h/3)B}e^{(2h/3)A}e^{(h/3)B} − (1/8)e^{hA}e^{hB},
    // factors applied right-to-left onto the state.
    return ProductScheme::checked(
        "burstein-mirin",
        {
            {9.0 / 8.0, {{'B', 1.0 / 3.0}, {'A', 2.0 / 3.0}, {'B', 2.0 / 3.0}, {'A', 1.0 / 3.0}}},
            {-1.0 / 8.0, {{'B', 1.0}, {'A', 1.0}}},
        });
}

StateVec product_step(const ProductScheme& scheme, const SplitSystem& sys, double t, double h,
                      const StateVec& c) {
    StateVec acc(c.size(), 0.0);
    for (std::size_t k = 0; k < scheme.terms.size(); ++k) {
        const ProductTerm& term = scheme.terms[k];
        StateVec state = c;
        double t_a = t, t_b = t;
        for (std::size_t s = 0; s < term.factors.size(); ++s) {
            const ProductFactor& f = term.factors[s];
            const SubFlow& flow = f.op == 'A' ? sys.a_flow : sys.b_flow;
            double& clock = f.op == 'A' ? t_a : t_b;
            try {
                state = flow.apply(clock, f.fraction * h, state);
            } catch (const CflError& e) {
                throw CflError(scheme.name + " term " + std::to_string(k) + " stage " +
                                   std::to_string(s) + " (" + std::string(1, f.op) +
                                   "): " + e.what(),
                               e.admissible_dt);
            } catch (const Error& e) {
                throw FlowError(scheme.name + " term " + std::to_string(k) + " stage " +
                                std::to_string(s) + " (" + std::string(1, f.op) + "): " + e.what());
            }
            clock += f.fraction * h;
        }
        axpy(term.weight, state, acc);
    }
    return acc;
}

StateVec ab_step(const SplitSystem& sys, double t, double h, const StateVec& c, PairOrder order) {
    static const ProductScheme fwd = ab_scheme(PairOrder::a_first);
    static const ProductScheme rev = ab_scheme(PairOrder::b_first);
    return product_step(order == PairOrder::a_first ? fwd : rev, sys, t, h, c);
}

StateVec strang_step(const SplitSystem& sys, double t, double h, const StateVec& c,
                     StrangOrder order) {
    static const ProductScheme aba = strang_scheme(StrangOrder::aba);
    static const ProductScheme bab = strang_scheme(StrangOrder::bab);
    return product_step(order == StrangOrder::aba ? aba : bab, sys, t, h, c);
}

StateVec symmetric_sum_step(const SplitSystem& sys, double t, double h, const StateVec& c) {
    static const ProductScheme scheme = symmetric_sum_scheme();
    return product_step(scheme, sys, t, h, c);
}

StateVec dunn_step(const SplitSystem& sys, double t, double h, const StateVec& c) {
    static const ProductScheme scheme = dunn_scheme();
    return product_step(scheme, sys, t, h, c);
}

StateVec burstein_mirin_step(const SplitSystem& sys, double t, double h, const StateVec& c) {
    static const ProductScheme scheme = burstein_mirin_scheme();
    return product_step(scheme, sys, t, h, c);
}

}  // namespace opsplit
