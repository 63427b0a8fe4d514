#include "opsplit/problems/logistic.hpp"

#include <cmath>

namespace opsplit {

SplitSystem logistic_split() {
    SplitSystem sys;

    VectorField a;
    a.label = "logistic-a";
    a.rhs = [](double, const StateVec& c, StateVec& out) {
        for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i];
    };

    VectorField b;
    b.label = "logistic-b";
    b.rhs = [](double, const StateVec& c, StateVec& out) {
        for (std::size_t i = 0; i < c.size(); ++i) out[i] = -c[i] * c[i];
    };

    VectorField full;
    full.label = "logistic";
    full.rhs = [](double, const StateVec& c, StateVec& out) {
        for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i] * (1.0 - c[i]);
    };

    sys.a_flow = exact_flow(a,
                            [](double, double h, const StateVec& c) {
                                StateVec r(c.size());
                                const double g = std::exp(h);
                                for (std::size_t i = 0; i < c.size(); ++i) r[i] = g * c[i];
                                return r;
                            },
                            "exp-growth");
    sys.b_flow = exact_flow(b,
                            [](double, double h, const StateVec& c) {
                                StateVec r(c.size());
                                for (std::size_t i = 0; i < c.size(); ++i)
                                    r[i] = c[i] / (1.0 + h * c[i]);
                                return r;
                            },
                            "quadratic-decay");
    sys.a_field = std::move(a);
    sys.b_field = std::move(b);
    sys.full_field = std::move(full);
    return sys;
}

double logistic_solution(double u0, double t) {
    const double g = std::exp(t);
    return u0 * g / (1.0 + u0 * (g - 1.0));
}

}  // namespace opsplit
