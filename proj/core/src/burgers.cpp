#include "opsplit/problems/burgers.hpp"

#include <cmath>

#include "opsplit/errors.hpp"
#include "opsplit/ode.hpp"

namespace opsplit {

double burgers_analytic(double x, double y, double t, double mu) {
    const double z = (x + y - t) / (2.0 * mu);
    if (z > 500.0) return 0.0;  // exp would overflow; the front value is ~e^{-z}
    return 1.0 / (1.0 + std::exp(z));
}

StateVec Grid2D::sample(const std::function<double(double, double)>& f) const {
    StateVec u(size());
    for (int j = 1; j <= inner_y(); ++j)
        for (int i = 1; i <= inner_x(); ++i) u[index(i, j)] = f(x(i), y(j));
    return u;
}

Grid2D burgers_grid(const BurgersConfig& cfg) {
    if (cfg.nx < 2 || cfg.ny < 2)
        throw ConfigError("burgers: nx, ny must be >= 2 (no interior otherwise)");
    return Grid2D{cfg.nx, cfg.ny};
}

StateVec burgers_exact_state(const BurgersConfig& cfg, double t) {
    const Grid2D g = burgers_grid(cfg);
    const double mu = cfg.mu;
    return g.sample([mu, t](double x, double y) { return burgers_analytic(x, y, t, mu); });
}

double burgers_admissible_dt(const Grid2D& g, const StateVec& u) {
    const double speed = inf_norm(u) * (1.0 / g.dx() + 1.0 / g.dy());
    if (speed < 1e-12) return 1e9;  // no advection limit at rest
    return 0.9 / speed;
}

namespace {

struct Stencils {
    Grid2D g;
    double mu;
    std::function<double(double, double, double)> boundary;
    std::function<double(double, double, double)> forcing;

    double bval(int i, int j, double t) const { return boundary(g.x(i), g.y(j), t); }

    // Sign-dependent first-order upwind convection −u·(∂x u + ∂y u).
    void convection(double t, const StateVec& u, StateVec& out) const {
        const double dx = g.dx(), dy = g.dy();
        for (int j = 1; j <= g.inner_y(); ++j) {
            for (int i = 1; i <= g.inner_x(); ++i) {
                const double uc = u[g.index(i, j)];
                const double west = i > 1 ? u[g.index(i - 1, j)] : bval(0, j, t);
                const double east = i < g.inner_x() ? u[g.index(i + 1, j)] : bval(g.nx, j, t);
                const double south = j > 1 ? u[g.index(i, j - 1)] : bval(i, 0, t);
                const double north = j < g.inner_y() ? u[g.index(i, j + 1)] : bval(i, g.ny, t);
                const double ux = uc >= 0.0 ? (uc - west) / dx : (east - uc) / dx;
                const double uy = uc >= 0.0 ? (uc - south) / dy : (north - uc) / dy;
                out[g.index(i, j)] = -uc * (ux + uy);
            }
        }
    }

    // Second-order central Laplacian with zero Dirichlet closure (the pure
    // linear part; boundary data enters through boundary_lap).
    void lap0(const StateVec& u, StateVec& out) const {
        const double rdx2 = 1.0 / (g.dx() * g.dx()), rdy2 = 1.0 / (g.dy() * g.dy());
        for (int j = 1; j <= g.inner_y(); ++j) {
            for (int i = 1; i <= g.inner_x(); ++i) {
                const double uc = u[g.index(i, j)];
                const double west = i > 1 ? u[g.index(i - 1, j)] : 0.0;
                const double east = i < g.inner_x() ? u[g.index(i + 1, j)] : 0.0;
                const double south = j > 1 ? u[g.index(i, j - 1)] : 0.0;
                const double north = j < g.inner_y() ? u[g.index(i, j + 1)] : 0.0;
                out[g.index(i, j)] =
                    (west - 2.0 * uc + east) * rdx2 + (south - 2.0 * uc + north) * rdy2;
            }
        }
    }

    // Boundary contribution to the Laplacian rows adjacent to ∂Ω.
    void boundary_lap(double t, StateVec& out) const {
        const double rdx2 = 1.0 / (g.dx() * g.dx()), rdy2 = 1.0 / (g.dy() * g.dy());
        std::fill(out.begin(), out.end(), 0.0);
        for (int j = 1; j <= g.inner_y(); ++j) {
            out[g.index(1, j)] += bval(0, j, t) * rdx2;
            out[g.index(g.inner_x(), j)] += bval(g.nx, j, t) * rdx2;
        }
        for (int i = 1; i <= g.inner_x(); ++i) {
            out[g.index(i, 1)] += bval(i, 0, t) * rdy2;
            out[g.index(i, g.inner_y())] += bval(i, g.ny, t) * rdy2;
        }
    }

    // Affine offset of B at time t: μ·boundary terms + forcing.
    StateVec b_offset(double t) const {
        StateVec off(g.size());
        boundary_lap(t, off);
        for (double& v : off) v *= mu;
        if (forcing) {
            for (int j = 1; j <= g.inner_y(); ++j)
                for (int i = 1; i <= g.inner_x(); ++i)
                    off[g.index(i, j)] += forcing(g.x(i), g.y(j), t);
        }
        return off;
    }

    // Conjugate gradients on (I − τμ·lap0)x = rhs; the operator is SPD.
    StateVec cg_solve(double tau, StateVec rhs) const {
        const std::size_t n = rhs.size();
        auto op = [&](const StateVec& v, StateVec& out) {
            lap0(v, out);
            for (std::size_t idx = 0; idx < n; ++idx) out[idx] = v[idx] - tau * mu * out[idx];
        };

        StateVec x = rhs;  // warm start at the right-hand side
        StateVec ax(n), r(n), p(n), ap(n);
        op(x, ax);
        double rr = 0.0;
        for (std::size_t idx = 0; idx < n; ++idx) {
            r[idx] = rhs[idx] - ax[idx];
            rr += r[idx] * r[idx];
        }
        p = r;
        const double rhs_norm = two_norm(rhs);
        const double stop = std::max(1e-13 * rhs_norm, 1e-300);

        for (std::size_t it = 0; it < 10 * n + 50; ++it) {
            if (std::sqrt(rr) <= stop) return x;
            op(p, ap);
            double pap = 0.0;
            for (std::size_t idx = 0; idx < n; ++idx) pap += p[idx] * ap[idx];
            if (pap <= 0.0)
                throw FlowError("burgers diffusion solve lost positive definiteness");
            const double alpha = rr / pap;
            double rr_next = 0.0;
            for (std::size_t idx = 0; idx < n; ++idx) {
                x[idx] += alpha * p[idx];
                r[idx] -= alpha * ap[idx];
                rr_next += r[idx] * r[idx];
            }
            const double beta = rr_next / rr;
            rr = rr_next;
            for (std::size_t idx = 0; idx < n; ++idx) p[idx] = r[idx] + beta * p[idx];
        }
        throw FlowError("burgers diffusion solve: conjugate gradients stalled");
    }
};

}  // namespace

SplitSystem burgers_build(const BurgersConfig& cfg) {
    if (cfg.mu <= 0.0) throw ConfigError("burgers: mu must be positive");
    Stencils st;
    st.g = burgers_grid(cfg);
    st.mu = cfg.mu;
    const double mu = cfg.mu;
    st.boundary = cfg.boundary
                      ? cfg.boundary
                      : [mu](double x, double y, double t) { return burgers_analytic(x, y, t, mu); };
    st.forcing = cfg.forcing;

    VectorField a;
    a.label = "burgers-convection";
    a.autonomous = false;
    a.rhs = [st](double t, const StateVec& u, StateVec& out) { st.convection(t, u, out); };

    VectorField b;
    b.label = "burgers-diffusion";
    b.autonomous = false;
    b.rhs = [st](double t, const StateVec& u, StateVec& out) {
        st.lap0(u, out);
        StateVec off = st.b_offset(t);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = st.mu * out[i] + off[i];
    };
    b.implicit_step = [st](double t, double tau, const StateVec& rhs_vec) {
        StateVec rhs = rhs_vec;
        StateVec off = st.b_offset(t);
        axpy(tau, off, rhs);
        return st.cg_solve(tau, std::move(rhs));
    };

    // Explicit order-4 convection flow, substep count seeded by the advective
    // stability bound and then doubled until the endpoint settles to flow_tol.
    SubFlow a_flow;
    a_flow.kind = SubFlow::Kind::numeric;
    a_flow.tol = cfg.flow_tol;
    a_flow.label = "burgers-convection-flow";
    const Grid2D grid = st.g;
    const double tol = cfg.flow_tol;
    VectorField a_for_flow = a;
    a_flow.map = [a_for_flow, grid, tol](double t0, double h, const StateVec& u) {
        OdeRhs rhs = [&a_for_flow](double t, const StateVec& y, StateVec& dydt) {
            a_for_flow.eval_into(t, y, dydt);
        };
        const double dt_adm = burgers_admissible_dt(grid, u);
        int n = static_cast<int>(std::ceil(std::fabs(h) / dt_adm));
        if (n < 1) n = 1;
        if (n > 200000)
            throw CflError("burgers convection: step h=" + std::to_string(h) + " needs " +
                               std::to_string(n) + " explicit substeps; admissible dt=" +
                               std::to_string(dt_adm),
                           dt_adm);
        try {
            StateVec coarse = rk4_fixed(rhs, t0, h, u, n);
            for (int d = 0; d < 18; ++d) {
                n *= 2;
                StateVec fine = rk4_fixed(rhs, t0, h, u, n);
                double delta = 0.0;
                for (std::size_t i = 0; i < u.size(); ++i)
                    delta = std::max(delta, std::fabs(fine[i] - coarse[i]));
                if (all_finite(fine) && delta <= tol * (1.0 + inf_norm(fine))) return fine;
                coarse.swap(fine);
            }
        } catch (const EvaluationError&) {
            throw CflError("burgers convection: explicit march diverged over h=" +
                               std::to_string(h) + "; admissible dt=" + std::to_string(dt_adm),
                           dt_adm);
        }
        throw FlowError("burgers convection: tolerance not reached over h=" + std::to_string(h));
    };
    a_flow.field = a;

    SplitSystem sys;
    sys.a_field = a;
    sys.b_field = b;
    sys.a_flow = std::move(a_flow);
    sys.b_flow = numeric_flow(b, cfg.flow_tol, "burgers-diffusion-flow");
    sys.full_field = sum_field(a, b, "burgers");
    return sys;
}

}  // namespace opsplit
