#include "opsplit/problems/hamiltonian.hpp"

#include <cmath>

#include "opsplit/errors.hpp"

namespace opsplit {

StateVec HamiltonianSystem::acceleration(const StateVec& q) const {
    StateVec g = grad_v(q);
    if (g.size() != q.size())
        throw DimensionError("HamiltonianSystem: grad_v dim mismatch");
    for (double& x : g) x = -x / mass;
    return g;
}

std::pair<StateVec, StateVec> verlet_step(const HamiltonianSystem& ham, const StateVec& q,
                                          const StateVec& v, double h) {
    StateVec a = ham.acceleration(q);
    StateVec v_half = v;
    axpy(0.5 * h, a, v_half);
    StateVec q_next = q;
    axpy(h, v_half, q_next);
    StateVec a_next = ham.acceleration(q_next);
    StateVec v_next = v_half;
    axpy(0.5 * h, a_next, v_next);
    return {q_next, v_next};
}

SplitSystem drift_kick_split(const HamiltonianSystem& ham) {
    const std::size_t d = ham.dim;

    // Stacked state (q, v). Drift: q̇ = v. Kick: v̇ = a(q).
    VectorField drift;
    drift.label = "drift";
    drift.rhs = [d](double, const StateVec& z, StateVec& out) {
        for (std::size_t i = 0; i < d; ++i) {
            out[i] = z[d + i];
            out[d + i] = 0.0;
        }
    };

    VectorField kick;
    kick.label = "kick";
    kick.rhs = [ham, d](double, const StateVec& z, StateVec& out) {
        StateVec q(z.begin(), z.begin() + d);
        StateVec a = ham.acceleration(q);
        for (std::size_t i = 0; i < d; ++i) {
            out[i] = 0.0;
            out[d + i] = a[i];
        }
    };

    SplitSystem sys;
    sys.a_flow = exact_flow(drift,
                            [d](double, double h, const StateVec& z) {
                                StateVec r = z;
                                for (std::size_t i = 0; i < d; ++i) r[i] += h * z[d + i];
                                return r;
                            },
                            "drift-shift");
    sys.b_flow = exact_flow(kick,
                            [ham, d](double, double h, const StateVec& z) {
                                StateVec q(z.begin(), z.begin() + d);
                                StateVec a = ham.acceleration(q);
                                StateVec r = z;
                                for (std::size_t i = 0; i < d; ++i) r[d + i] += h * a[i];
                                return r;
                            },
                            "kick-shift");
    sys.a_field = std::move(drift);
    sys.b_field = std::move(kick);
    return sys;
}

HamiltonianSystem harmonic_system(double mass, double spring_k) {
    HamiltonianSystem ham;
    ham.mass = mass;
    ham.dim = 1;
    ham.grad_v = [spring_k](const StateVec& q) {
        StateVec g(q.size());
        for (std::size_t i = 0; i < q.size(); ++i) g[i] = spring_k * q[i];
        return g;
    };
    return ham;
}

StateVec harmonic_solution(double mass, double spring_k, double q0, double v0, double t) {
    const double omega = std::sqrt(spring_k / mass);
    const double q = q0 * std::cos(omega * t) + v0 / omega * std::sin(omega * t);
    const double v = -q0 * omega * std::sin(omega * t) + v0 * std::cos(omega * t);
    return {q, v};
}

double harmonic_energy(double mass, double spring_k, const StateVec& q, const StateVec& v) {
    double e = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i)
        e += 0.5 * mass * v[i] * v[i] + 0.5 * spring_k * q[i] * q[i];
    return e;
}

}  // namespace opsplit
