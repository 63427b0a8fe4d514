#pragma once

#include <functional>
#include <utility>

#include "opsplit/flow.hpp"

namespace opsplit {

/// Separable Hamiltonian H = p²/(2m) + V(q) described by its mass and the
/// gradient of the potential. Acceleration a(q) = −∇V(q)/m.
struct HamiltonianSystem {
    double mass = 1.0;
    std::function<StateVec(const StateVec& q)> grad_v;
    std::size_t dim = 1;

    StateVec acceleration(const StateVec& q) const;
};

/// Velocity form kick-drift-kick: v½ = v + (h/2)a(q); q′ = q + h·v½;
/// v′ = v½ + (h/2)a(q′).
std::pair<StateVec, StateVec> verlet_step(const HamiltonianSystem& ham, const StateVec& q,
                                          const StateVec& v, double h);

/// The same dynamics as a SplitSystem on the stacked state (q, v):
/// A = drift (q̇ = v), B = kick (v̇ = a(q)), both with exact shift sub-flows.
SplitSystem drift_kick_split(const HamiltonianSystem& ham);

/// Unit harmonic oscillator helpers: V(q) = ½k·q², default m = k = 1.
HamiltonianSystem harmonic_system(double mass = 1.0, double spring_k = 1.0);

/// Exact harmonic solution for initial (q0, v0), returned stacked as (q, v).
StateVec harmonic_solution(double mass, double spring_k, double q0, double v0, double t);

/// Energy H(q, v) = ½m·v² + ½k·q² of the harmonic system.
double harmonic_energy(double mass, double spring_k, const StateVec& q, const StateVec& v);

}  // namespace opsplit
