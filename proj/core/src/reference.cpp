#include "opsplit/reference.hpp"

#include "opsplit/errors.hpp"
#include "opsplit/ode.hpp"

namespace opsplit {

StateVec reference_flow(const VectorField& field, double t0, double h, const StateVec& c,
                        double tol) {
    if (tol <= 0.0) throw ConfigError("reference_flow: tol must be positive");
    OdeRhs rhs = [&field](double t, const StateVec& y, StateVec& dydt) {
        field.eval_into(t, y, dydt);
    };
    AdaptiveOptions opt;
    opt.abs_tol = tol;
    opt.rel_tol = tol;
    return integrate_dopri5(rhs, t0, h, c, opt);
}

StateVec reference_flow(const SplitSystem& sys, double t0, double h, const StateVec& c,
                        double tol) {
    return reference_flow(sys.combined_field(), t0, h, c, tol);
}

}  // namespace opsplit
