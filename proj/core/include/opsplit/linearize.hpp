#pragma once

#include <functional>

#include "opsplit/flow.hpp"

namespace opsplit {

/// Finite-difference increment policy for directional derivatives.
struct JacobianProbe {
    enum class Mode { forward, central };

    Mode mode = Mode::central;
    /// 0 selects the scale-aware default: √u·(1+‖c‖∞) forward, ∛u·(1+‖c‖∞)
    /// central, u = machine epsilon. Explicit values must lie in [1e-10, 1e-2].
    double epsilon = 0.0;

    double increment(const StateVec& at) const;
};

/// Directional derivative F′(c)·v by finite differences. v = 0 returns zeros.
StateVec jvp(const VectorField& f, const StateVec& c, const StateVec& v,
             const JacobianProbe& probe = {}, double t = 0.0);

/// Nonlinear commutator [F1,F2](c) = (F2′(c)∘F1)(c) − (F1′(c)∘F2)(c).
/// For linear fields Ac, Bc this is (BA−AB)c.
StateVec commutator(const VectorField& f1, const VectorField& f2, const StateVec& c,
                    const JacobianProbe& probe = {}, double t = 0.0);

/// The commutator packaged as a vector field (evaluation nests finite
/// differences; epsilon grows one ∛u stage per nesting level).
VectorField commutator_field(VectorField f1, VectorField f2, JacobianProbe probe = {});

/// Leading term of the sequential-splitting defect: τ·[F1,F2](c).
StateVec ab_leading_error(const VectorField& f1, const VectorField& f2, const StateVec& c,
                          double tau, const JacobianProbe& probe = {});

/// Leading Strang defect (τ²/24)·([F2,[F2,F1]](c) − 2[F1,[F1,F2]](c)).
/// Runs an ε vs 2ε sensitivity check and throws EvaluationError when the two
/// answers disagree by more than 10% above the difference-noise floor.
StateVec strang_leading_error(const VectorField& f1, const VectorField& f2, const StateVec& c,
                              double tau, const JacobianProbe& probe = {});

/// Order-raising initial-state corrections for sequential splitting.
struct ZassenhausCorrection {
    int order = 2;  // 2 or 3
    double flow_tol = 1e-10;
};

/// Sequential B∘A step preceded by commutator correction flows of the initial
/// state: p=2 applies the flow of [B,A](·) over pseudo-time h²/2; p=3 first
/// applies the flow of (1/6)[B,[B,A]](·) − (1/3)[A,[A,B]](·) over pseudo-time
/// h³. Correction flows are integrated by the reference method at flow_tol.
StateVec zassenhaus_ab_step(const SplitSystem& sys, double t, double h, const StateVec& c,
                            const ZassenhausCorrection& corr = {},
                            const JacobianProbe& probe = {});

struct SolverConfig {
    double tol = 1e-10;
    int max_iter = 50;
};

struct FixedPointResult {
    StateVec x;
    int iterations = 0;
    bool converged = false;
    double contraction_ratio = 0.0;  // max observed ‖Δx_{i+1}‖/‖Δx_i‖
};

/// Picard iteration x_{i+1} = K(x_i), stopping on ‖x_{i+1}−x_i‖₂ ≤ tol.
FixedPointResult fixed_point_solve(const std::function<StateVec(const StateVec&)>& K,
                                   const StateVec& x0, const SolverConfig& cfg);

struct NewtonResult {
    StateVec x;
    int iterations = 0;
    bool converged = false;
};

/// Newton's method for F(x) = 0: F′(x_i)Δx = −F(x_i) with a dense
/// finite-difference Jacobian and partial-pivot LU. Stops on ‖F(x)‖₂ ≤ tol.
NewtonResult newton_solve(const VectorField& f, const StateVec& x0, const SolverConfig& cfg,
                          const JacobianProbe& probe = {});

/// Gradient callbacks of a Hamiltonian H(p, q), both mapping to dim(q) = dim(p).
struct HamiltonianEvaluator {
    std::function<StateVec(const StateVec& p, const StateVec& q)> dh_dp;
    std::function<StateVec(const StateVec& p, const StateVec& q)> dh_dq;
};

struct HamiltonianStepResult {
    StateVec p;
    StateVec q;
    int iterations = 0;  // refinement sweeps after the first inner solve
    bool converged = false;
};

/// One step of the staggered fixed-point decoupling: iterate i integrates
/// q̇_i = ∂H/∂p(p_i, q_{i−1}(s)), ṗ_i = −∂H/∂q(p_{i−1}(s), q_i) over [t, t+h]
/// from (p, q), previous iterates entering as frozen sampled trajectories.
/// Stops when max(‖p_i − p_{i−1}‖₂, ‖q_i − q_{i−1}‖₂) ≤ cfg.tol at t+h.
HamiltonianStepResult hamiltonian_fixed_point_step(const HamiltonianEvaluator& ham,
                                                   const StateVec& p, const StateVec& q, double h,
                                                   const SolverConfig& cfg,
                                                   double inner_tol = 1e-10, int segments = 16);

}  // namespace opsplit
