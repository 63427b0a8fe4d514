#include <cmath>
#include <limits>

#include "dense_lu.hpp"
#include "opsplit/errors.hpp"
#include "opsplit/linearize.hpp"
#include "opsplit/ode.hpp"

namespace opsplit {

FixedPointResult fixed_point_solve(const std::function<StateVec(const StateVec&)>& K,
                                   const StateVec& x0, const SolverConfig& cfg) {
    FixedPointResult res;
    res.x = x0;
    double prev_delta = -1.0;
    const double ratio_guard = 100.0 * std::numeric_limits<double>::epsilon();

    for (int i = 0; i < cfg.max_iter; ++i) {
        StateVec next = K(res.x);
        if (next.size() != res.x.size())
            throw DimensionError("fixed_point_solve: map changed dimension");
        double delta = 0.0;
        for (std::size_t j = 0; j < next.size(); ++j) {
            double d = next[j] - res.x[j];
            delta += d * d;
        }
        delta = std::sqrt(delta);
        res.x.swap(next);
        res.iterations = i + 1;

        if (prev_delta > ratio_guard * (1.0 + two_norm(res.x)))
            res.contraction_ratio = std::max(res.contraction_ratio, delta / prev_delta);
        prev_delta = delta;

        if (delta <= cfg.tol) {
            res.converged = true;
            return res;
        }
    }
    return res;  // converged stays false, last iterate returned
}

NewtonResult newton_solve(const VectorField& f, const StateVec& x0, const SolverConfig& cfg,
                          const JacobianProbe& probe) {
    NewtonResult res;
    res.x = x0;
    const std::size_t n = x0.size();

    for (int i = 0; i <= cfg.max_iter; ++i) {
        StateVec fx = f.eval(0.0, res.x);
        if (two_norm(fx) <= cfg.tol) {
            res.converged = true;
            return res;
        }
        if (i == cfg.max_iter) break;

        // Dense Jacobian, one directional derivative per column.
        std::vector<double> jac(n * n);
        StateVec e(n, 0.0);
        for (std::size_t col = 0; col < n; ++col) {
            e[col] = 1.0;
            StateVec je = jvp(f, res.x, e, probe);
            e[col] = 0.0;
            for (std::size_t row = 0; row < n; ++row) jac[row * n + col] = je[row];
        }

        std::vector<double> rhs(n);
        for (std::size_t j = 0; j < n; ++j) rhs[j] = -fx[j];
        std::vector<double> delta = detail::lu_solve(std::move(jac), std::move(rhs), n);
        for (std::size_t j = 0; j < n; ++j) res.x[j] += delta[j];
        res.iterations = i + 1;
    }
    return res;
}

HamiltonianStepResult hamiltonian_fixed_point_step(const HamiltonianEvaluator& ham,
                                                   const StateVec& p, const StateVec& q, double h,
                                                   const SolverConfig& cfg, double inner_tol,
                                                   int segments) {
    if (p.size() != q.size())
        throw DimensionError("hamiltonian_fixed_point_step: dim(p) != dim(q)");
    const std::size_t d = p.size();

    HamiltonianStepResult res;
    res.p = p;
    res.q = q;
    if (h == 0.0) {
        res.converged = true;
        return res;
    }

    // Stacked iterate state z = (q, p); previous iterate enters frozen.
    SampledPath prev_q = SampledPath::constant(0.0, h, q);
    SampledPath prev_p = SampledPath::constant(0.0, h, p);
    StateVec prev_q_end = q, prev_p_end = p;

    StateVec z0(2 * d);
    for (std::size_t i = 0; i < d; ++i) {
        z0[i] = q[i];
        z0[d + i] = p[i];
    }

    for (int sweep = 0; sweep < cfg.max_iter; ++sweep) {
        OdeRhs rhs = [&](double s, const StateVec& z, StateVec& dzds) {
            StateVec zq(z.begin(), z.begin() + d);
            StateVec zp(z.begin() + d, z.end());
            StateVec hp = ham.dh_dp(zp, prev_q.eval(s));
            StateVec hq = ham.dh_dq(prev_p.eval(s), zq);
            if (hp.size() != d || hq.size() != d)
                throw DimensionError("hamiltonian_fixed_point_step: gradient dim mismatch");
            dzds.resize(2 * d);
            for (std::size_t i = 0; i < d; ++i) {
                dzds[i] = hp[i];
                dzds[d + i] = -hq[i];
            }
        };
        SampledPath z_path = integrate_sampled(rhs, 0.0, h, z0, inner_tol, segments);

        // Split the stacked samples back into q and p trajectories.
        std::vector<StateVec> q_samples, p_samples;
        for (const StateVec& z : z_path.samples()) {
            q_samples.emplace_back(z.begin(), z.begin() + d);
            p_samples.emplace_back(z.begin() + d, z.end());
        }
        StateVec q_end = q_samples.back();
        StateVec p_end = p_samples.back();

        double dq = 0.0, dp = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            dq += (q_end[i] - prev_q_end[i]) * (q_end[i] - prev_q_end[i]);
            dp += (p_end[i] - prev_p_end[i]) * (p_end[i] - prev_p_end[i]);
        }
        res.q = q_end;
        res.p = p_end;
        res.iterations = sweep;  // refinements after the first solve

        if (std::max(std::sqrt(dq), std::sqrt(dp)) <= cfg.tol) {
            res.converged = true;
            return res;
        }

        prev_q = SampledPath(0.0, h, std::move(q_samples));
        prev_p = SampledPath(0.0, h, std::move(p_samples));
        prev_q_end = q_end;
        prev_p_end = p_end;
    }
    return res;
}

}  // namespace opsplit
