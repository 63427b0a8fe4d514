#include "opsplit/flow.hpp"

#include "opsplit/errors.hpp"
#include "opsplit/ode.hpp"

namespace opsplit {

StateVec SubFlow::apply(double t0, double h, const StateVec& c) const {
    if (!valid()) throw FlowError(label + ": sub-flow has no map");
    if (h == 0.0) return c;
    StateVec out = map(t0, h, c);
    if (out.size() != c.size())
        throw DimensionError(label + ": flow changed dimension " + std::to_string(c.size()) +
                             " -> " + std::to_string(out.size()));
    if (!all_finite(out))
        throw EvaluationError(label + ": non-finite state after flow over h=" + std::to_string(h));
    return out;
}

SubFlow exact_flow(VectorField field, std::function<StateVec(double, double, const StateVec&)> map,
                   std::string label) {
    SubFlow f;
    f.field = std::move(field);
    f.map = std::move(map);
    f.kind = SubFlow::Kind::exact;
    f.label = std::move(label);
    return f;
}

SubFlow numeric_flow(VectorField field, double tol, std::string label) {
    SubFlow f;
    f.kind = SubFlow::Kind::numeric;
    f.tol = tol;
    f.label = std::move(label);
    if (field.implicit_step) {
        f.map = [field, tol](double t0, double h, const StateVec& c) {
            return implicit_euler_doubling(field, t0, h, c, tol);
        };
    } else {
        OdeRhs rhs = [field](double t, const StateVec& y, StateVec& dydt) {
            field.eval_into(t, y, dydt);
        };
        f.map = [rhs, tol](double t0, double h, const StateVec& c) {
            AdaptiveOptions opt;
            opt.abs_tol = tol;
            opt.rel_tol = tol;
            return integrate_dopri5(rhs, t0, h, c, opt);
        };
    }
    f.field = std::move(field);
    return f;
}

VectorField SplitSystem::combined_field() const {
    if (has_full_field()) return full_field;
    return sum_field(a_field, b_field, "a+b");
}

void SplitSystem::check_consistency(const std::vector<StateVec>& samples, double t) const {
    if (!has_full_field()) return;
    for (const StateVec& c : samples) {
        StateVec full = full_field.eval(t, c);
        StateVec a = a_field.eval(t, c);
        StateVec b = b_field.eval(t, c);
        double worst = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i)
            worst = std::max(worst, std::fabs(full[i] - a[i] - b[i]));
        if (worst > 1e-12 * (1.0 + inf_norm(c)))
            throw EvaluationError("split system inconsistent: ||F - A - B|| = " +
                                  std::to_string(worst));
    }
}

SplitSystem make_split_system(VectorField a, VectorField b, double tol) {
    SplitSystem sys;
    sys.a_flow = numeric_flow(a, tol, "a-flow");
    sys.b_flow = numeric_flow(b, tol, "b-flow");
    sys.a_field = std::move(a);
    sys.b_field = std::move(b);
    return sys;
}

}  // namespace opsplit
