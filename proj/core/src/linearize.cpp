#include "opsplit/linearize.hpp"

#include <cmath>
#include <limits>

#include "opsplit/errors.hpp"
#include "opsplit/ode.hpp"

namespace opsplit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Increment for the outer stage of a nested difference: balances the ∛u-level
// noise of the inner central difference against outer truncation.
double nested_increment(const StateVec& at) {
    return std::min(1e-2, std::pow(kEps, 2.0 / 9.0) * (1.0 + inf_norm(at)));
}

}  // namespace

double JacobianProbe::increment(const StateVec& at) const {
    if (epsilon != 0.0) {
        if (epsilon < 1e-10 || epsilon > 1e-2)
            throw ConfigError("JacobianProbe: epsilon " + std::to_string(epsilon) +
                              " outside [1e-10, 1e-2]");
        return epsilon;
    }
    const double scale = 1.0 + inf_norm(at);
    return mode == Mode::forward ? std::sqrt(kEps) * scale : std::cbrt(kEps) * scale;
}

StateVec jvp(const VectorField& f, const StateVec& c, const StateVec& v,
             const JacobianProbe& probe, double t) {
    if (c.size() != v.size())
        throw DimensionError("jvp: state dim " + std::to_string(c.size()) + " vs direction dim " +
                             std::to_string(v.size()));
    const double vnorm = two_norm(v);
    if (vnorm == 0.0) return StateVec(c.size(), 0.0);

    const double eps = probe.increment(c);
    StateVec shifted(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) shifted[i] = c[i] + eps * v[i] / vnorm;
    StateVec plus = f.eval(t, shifted);

    StateVec result(c.size());
    if (probe.mode == JacobianProbe::Mode::forward) {
        StateVec base = f.eval(t, c);
        for (std::size_t i = 0; i < c.size(); ++i)
            result[i] = (plus[i] - base[i]) / eps * vnorm;
    } else {
        for (std::size_t i = 0; i < c.size(); ++i) shifted[i] = c[i] - eps * v[i] / vnorm;
        StateVec minus = f.eval(t, shifted);
        for (std::size_t i = 0; i < c.size(); ++i)
            result[i] = (plus[i] - minus[i]) / (2.0 * eps) * vnorm;
    }
    return result;
}

StateVec commutator(const VectorField& f1, const VectorField& f2, const StateVec& c,
                    const JacobianProbe& probe, double t) {
    StateVec r = jvp(f2, c, f1.eval(t, c), probe, t);
    StateVec s = jvp(f1, c, f2.eval(t, c), probe, t);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= s[i];
    return r;
}

VectorField commutator_field(VectorField f1, VectorField f2, JacobianProbe probe) {
    VectorField g;
    g.autonomous = f1.autonomous && f2.autonomous;
    g.label = "[" + f1.label + "," + f2.label + "]";
    g.rhs = [f1 = std::move(f1), f2 = std::move(f2), probe](double t, const StateVec& c,
                                                            StateVec& out) {
        out = commutator(f1, f2, c, probe, t);
    };
    return g;
}

StateVec ab_leading_error(const VectorField& f1, const VectorField& f2, const StateVec& c,
                          double tau, const JacobianProbe& probe) {
    if (tau <= 0.0) throw ConfigError("ab_leading_error: tau must be positive");
    StateVec r = commutator(f1, f2, c, probe);
    for (double& x : r) x *= tau;
    return r;
}

namespace {

// ([F2,[F2,F1]] − 2[F1,[F1,F2]])(c) with the outer differences taken at an
// enlarged increment, inner ones at the probe's own scale.
StateVec strang_combo(const VectorField& f1, const VectorField& f2, const StateVec& c,
                      const JacobianProbe& inner_probe, double outer_eps) {
    JacobianProbe outer = inner_probe;
    outer.epsilon = outer_eps;

    VectorField c21 = commutator_field(f2, f1, inner_probe);
    StateVec r = commutator(f2, c21, c, outer);

    VectorField c12 = commutator_field(f1, f2, inner_probe);
    StateVec s = commutator(f1, c12, c, outer);

    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= 2.0 * s[i];
    return r;
}

}  // namespace

StateVec strang_leading_error(const VectorField& f1, const VectorField& f2, const StateVec& c,
                              double tau, const JacobianProbe& probe) {
    if (tau <= 0.0) throw ConfigError("strang_leading_error: tau must be positive");

    const double eps1 = std::min(nested_increment(c), 5e-3);
    StateVec g1 = strang_combo(f1, f2, c, probe, eps1);
    StateVec g2 = strang_combo(f1, f2, c, probe, std::min(2.0 * eps1, 1e-2));

    double drift = 0.0, mag = 0.0;
    for (std::size_t i = 0; i < g1.size(); ++i) {
        drift = std::max(drift, std::fabs(g1[i] - g2[i]));
        mag = std::max(mag, std::max(std::fabs(g1[i]), std::fabs(g2[i])));
    }
    if (drift > 0.1 * mag + 1e-6 * (1.0 + inf_norm(c)))
        throw EvaluationError(
            "strang_leading_error: nested finite differences are noise-dominated (result moved " +
            std::to_string(drift) + " under a doubled increment)");

    StateVec result(g1.size());
    const double scale = tau * tau / 24.0;
    for (std::size_t i = 0; i < g1.size(); ++i) result[i] = scale * g1[i];
    return result;
}

StateVec zassenhaus_ab_step(const SplitSystem& sys, double t, double h, const StateVec& c,
                            const ZassenhausCorrection& corr, const JacobianProbe& probe) {
    if (corr.order != 2 && corr.order != 3)
        throw ConfigError("zassenhaus_ab_step: order " + std::to_string(corr.order) +
                          " not supported (2 or 3)");
    if (h == 0.0) return c;

    AdaptiveOptions opt;
    opt.abs_tol = corr.flow_tol;
    opt.rel_tol = corr.flow_tol;

    // Fields are frozen at the physical step time; the correction flows run in
    // pseudo-time.
    const VectorField& fa = sys.a_field;
    const VectorField& fb = sys.b_field;

    StateVec state = c;

    if (corr.order == 3) {
        const double outer_eps = std::min(nested_increment(c), 5e-3);
        JacobianProbe outer = probe;
        outer.epsilon = outer_eps;

        VectorField ba = commutator_field(fb, fa, probe);
        VectorField ab = commutator_field(fa, fb, probe);
        OdeRhs rhs3 = [&](double, const StateVec& y, StateVec& dydt) {
            StateVec bba = commutator(fb, ba, y, outer, t);
            StateVec aab = commutator(fa, ab, y, outer, t);
            dydt.resize(y.size());
            for (std::size_t i = 0; i < y.size(); ++i)
                dydt[i] = bba[i] / 6.0 - aab[i] / 3.0;
        };
        state = integrate_dopri5(rhs3, 0.0, h * h * h, state, opt);
    }

    OdeRhs rhs2 = [&](double, const StateVec& y, StateVec& dydt) {
        dydt = commutator(fb, fa, y, probe, t);
    };
    state = integrate_dopri5(rhs2, 0.0, 0.5 * h * h, state, opt);

    state = sys.a_flow.apply(t, h, state);
    state = sys.b_flow.apply(t, h, state);
    return state;
}

}  // namespace opsplit
