#pragma once

#include <functional>

#include "opsplit/flow.hpp"

namespace opsplit {

/// Uniform grid on the unit square. nx, ny are cell counts per direction
/// (Δx = 1/nx); the state stores only interior values, row-major in x.
struct Grid2D {
    int nx = 10;
    int ny = 10;

    double dx() const { return 1.0 / nx; }
    double dy() const { return 1.0 / ny; }
    int inner_x() const { return nx - 1; }
    int inner_y() const { return ny - 1; }
    std::size_t size() const {
        return static_cast<std::size_t>(inner_x()) * static_cast<std::size_t>(inner_y());
    }
    /// 1-based interior coordinates (i = 1..nx−1, j = 1..ny−1).
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(j - 1) * inner_x() + static_cast<std::size_t>(i - 1);
    }
    double x(int i) const { return i * dx(); }
    double y(int j) const { return j * dy(); }

    StateVec sample(const std::function<double(double x, double y)>& f) const;
};

struct BurgersConfig {
    double mu = 0.05;
    int nx = 40;
    int ny = 40;
    double t_end = 1.25;
    double flow_tol = 1e-7;  // sub-flow integration tolerance
    /// Dirichlet boundary values; defaults to the analytic front solution.
    std::function<double(double x, double y, double t)> boundary;
    /// Source term f(x, y, t); defaults to 0.
    std::function<double(double x, double y, double t)> forcing;
};

/// Traveling-front solution (1 + exp((x+y−t)/(2μ)))^{−1}, overflow-safe.
double burgers_analytic(double x, double y, double t, double mu);

Grid2D burgers_grid(const BurgersConfig& cfg);

/// Interior sample of the analytic solution at time t.
StateVec burgers_exact_state(const BurgersConfig& cfg, double t);

/// Largest explicit convection step √-stable at the current state:
/// 0.9 / (‖u‖∞·(1/Δx + 1/Δy)), capped for the u → 0 limit.
double burgers_admissible_dt(const Grid2D& g, const StateVec& u);

/// Split system on interior values: A(u) = −u·(∂x u + ∂y u) with sign-dependent
/// first-order upwind gradients, B(u) = μ·(∂xx + ∂yy)u + f with second-order
/// central differences. Boundary values are injected at the evaluation time.
/// a_flow is an explicit order-4 march guarded by the convection CFL bound;
/// b_flow steps implicit Euler through a conjugate-gradient solve.
SplitSystem burgers_build(const BurgersConfig& cfg);

}  // namespace opsplit
