#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "opsplit/errors.hpp"
#include "opsplit/linearize.hpp"
#include "opsplit/reference.hpp"
#include "opsplit/splitting.hpp"
#include "opsplit/vector_field.hpp"
#include "support.hpp"

using namespace opsplit;

namespace {

VectorField scalar_square() {
    VectorField f;
    f.label = "u^2";
    f.rhs = [](double, const StateVec& c, StateVec& out) { out[0] = c[0] * c[0]; };
    return f;
}

testkit::Mat random_mat(std::mt19937& rng, std::size_t n) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    testkit::Mat m(n * n);
    for (double& v : m) v = dist(rng);
    return m;
}

double rel_err(const StateVec& got, const StateVec& want) {
    double num = 0.0, den = 1e-8;
    for (std::size_t i = 0; i < got.size(); ++i) {
        num = std::max(num, std::abs(got[i] - want[i]));
        den = std::max(den, std::abs(want[i]));
    }
    return num / den;
}

}  // namespace

TEST_CASE("directional derivative: linear field reproduces M*v") {
    const testkit::Mat m = {0.4, -1.1, 0.7, 0.2, 0.0, 0.9, -0.3, 0.5, 1.3};
    VectorField f = linear_field(std::vector<double>(m.begin(), m.end()), 3, "M");
    const StateVec c = {0.3, -0.8, 1.1};
    const StateVec v = {1.0, 0.5, -0.25};
    StateVec want = testkit::mat_vec(m, v, 3);
    StateVec got = jvp(f, c, v);
    CHECK(testkit::max_abs_diff(got, want) <= 1e-6);
}

TEST_CASE("directional derivative: constant field differentiates to zero") {
    VectorField f;
    f.rhs = [](double, const StateVec&, StateVec& out) { out = {3.0, -7.0}; };
    StateVec got = jvp(f, {0.4, 0.6}, {1.0, 2.0});
    CHECK(std::abs(got[0]) <= 1e-9);
    CHECK(std::abs(got[1]) <= 1e-9);

    // Zero direction short-circuits to exact zeros.
    StateVec zero = jvp(f, {0.4, 0.6}, {0.0, 0.0});
    CHECK(zero[0] == 0.0);
    CHECK(zero[1] == 0.0);
}

TEST_CASE("directional derivative: quadratic field at c=3") {
    VectorField f = scalar_square();
    StateVec g1 = jvp(f, {3.0}, {1.0});
    CHECK(g1[0] == doctest::Approx(6.0).epsilon(1e-7));
    StateVec g2 = jvp(f, {3.0}, {2.0});
    CHECK(g2[0] == doctest::Approx(12.0).epsilon(1e-7));
}

TEST_CASE("probe validation rejects out-of-range increments") {
    JacobianProbe probe;
    probe.epsilon = 1e-12;  // below the accepted window
    VectorField f = scalar_square();
    CHECK_THROWS_AS((void)jvp(f, {1.0}, {1.0}, probe), ConfigError);
    probe.epsilon = 0.5;  // above the window
    CHECK_THROWS_AS((void)jvp(f, {1.0}, {1.0}, probe), ConfigError);
}

TEST_CASE("commutator: identical and constant fields vanish") {
    VectorField f = scalar_square();
    StateVec same = commutator(f, f, {1.7});
    CHECK(same[0] == 0.0);  // algebraic cancellation, not round-off

    VectorField k1;
    k1.rhs = [](double, const StateVec&, StateVec& out) { out = {2.0}; };
    VectorField k2;
    k2.rhs = [](double, const StateVec&, StateVec& out) { out = {-5.0}; };
    StateVec consts = commutator(k1, k2, {0.9});
    CHECK(std::abs(consts[0]) <= 1e-9);
}

TEST_CASE("commutator: antisymmetry is exact") {
    SplitSystem sys = testkit::battery_split();
    StateVec c = {0.8, -0.5};
    StateVec fwd = commutator(sys.a_field, sys.b_field, c);
    StateVec rev = commutator(sys.b_field, sys.a_field, c);
    REQUIRE(fwd.size() == rev.size());
    for (std::size_t i = 0; i < fwd.size(); ++i) CHECK(fwd[i] == -rev[i]);
}

TEST_CASE("commutator: random linear pairs match (BA-AB)c") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        testkit::Mat a = random_mat(rng, 3);
        testkit::Mat b = random_mat(rng, 3);
        StateVec c = {dist(rng), dist(rng), dist(rng)};
        VectorField fa = linear_field(std::vector<double>(a.begin(), a.end()), 3, "A");
        VectorField fb = linear_field(std::vector<double>(b.begin(), b.end()), 3, "B");
        StateVec got = commutator(fa, fb, c);
        StateVec want = testkit::mat_vec(testkit::mat_comm(b, a, 3), c, 3);
        CHECK(rel_err(got, want) <= 1e-5);
    }
}

TEST_CASE("sequential-splitting defect scales linearly in the step") {
    SplitSystem sys = testkit::battery_split();
    StateVec c = {0.8, -0.5};
    StateVec d1 = ab_leading_error(sys.a_field, sys.b_field, c, 0.1);
    StateVec d2 = ab_leading_error(sys.a_field, sys.b_field, c, 0.2);
    REQUIRE(d1.size() == d2.size());
    for (std::size_t i = 0; i < d1.size(); ++i) CHECK(d2[i] == 2.0 * d1[i]);

    StateVec same = ab_leading_error(sys.a_field, sys.a_field, c, 0.1);
    CHECK(same[0] == 0.0);
    CHECK(same[1] == 0.0);

    SplitSystem diag =
        testkit::linear_split_exact({0.5, 0.0, 0.0, -0.3}, {-0.2, 0.0, 0.0, 0.8}, 2);
    StateVec comm = ab_leading_error(diag.a_field, diag.b_field, c, 0.1);
    CHECK(std::abs(comm[0]) <= 1e-8);
    CHECK(std::abs(comm[1]) <= 1e-8);
}

TEST_CASE("defect predictor points along the measured splitting defect") {
    // The sequential/symmetric step difference is (tau^2/2)*K + O(tau^3) with
    // K the leading defect direction; dividing by tau^2 and Richardson
    // extrapolating in tau removes the O(tau) bias and leaves K.
    SplitSystem sys = testkit::battery_split();
    const StateVec c = testkit::battery_c0();
    auto defect_rate = [&](double tau) {
        StateVec seq = product_step(ab_scheme(), sys, 0.0, tau, c);
        StateVec sym = product_step(strang_scheme(), sys, 0.0, tau, c);
        StateVec out(c.size());
        for (std::size_t i = 0; i < c.size(); ++i)
            out[i] = 2.0 * (seq[i] - sym[i]) / (tau * tau);
        return out;
    };
    const double tau = 0.02;
    StateVec coarse = defect_rate(tau);
    StateVec fine = defect_rate(tau / 2.0);
    StateVec measured(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) measured[i] = 2.0 * fine[i] - coarse[i];

    StateVec predicted = ab_leading_error(sys.a_field, sys.b_field, c, 1.0);
    double dot = 0.0, nm = 0.0, np = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        dot += measured[i] * predicted[i];
        nm += measured[i] * measured[i];
        np += predicted[i] * predicted[i];
    }
    CHECK(dot / std::sqrt(nm * np) >= 0.999);
}

TEST_CASE("symmetric-splitting defect matches the nested-bracket formula") {
    std::mt19937 rng(501);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const double tau = 0.3;
    for (int trial = 0; trial < 10; ++trial) {
        testkit::Mat a = random_mat(rng, 2);
        testkit::Mat b = random_mat(rng, 2);
        StateVec c = {dist(rng), dist(rng)};
        VectorField fa = linear_field(std::vector<double>(a.begin(), a.end()), 2, "A");
        VectorField fb = linear_field(std::vector<double>(b.begin(), b.end()), 2, "B");
        StateVec got = strang_leading_error(fa, fb, c, tau);

        // For linear fields the nested vector-field brackets reduce to matrix
        // commutators ad_X(Y) = XY - YX: [F2,[F2,F1]] -> ad_B(ad_B(A)) and
        // [F1,[F1,F2]] -> ad_A(ad_A(B)).
        testkit::Mat bba = testkit::mat_comm(b, testkit::mat_comm(b, a, 2), 2);
        testkit::Mat aab = testkit::mat_comm(a, testkit::mat_comm(a, b, 2), 2);
        testkit::Mat combo = testkit::mat_sub(bba, testkit::mat_scale(aab, 2.0));
        StateVec want = testkit::mat_vec(testkit::mat_scale(combo, tau * tau / 24.0), c, 2);
        CHECK(rel_err(got, want) <= 1e-3);
    }
}

TEST_CASE("symmetric-splitting defect: degenerate inputs") {
    SplitSystem diag =
        testkit::linear_split_exact({0.5, 0.0, 0.0, -0.3}, {-0.2, 0.0, 0.0, 0.8}, 2);
    StateVec commuting = strang_leading_error(diag.a_field, diag.b_field, {0.9, -0.4}, 0.25);
    CHECK(std::abs(commuting[0]) <= 1e-5);
    CHECK(std::abs(commuting[1]) <= 1e-5);

    VectorField zero = zero_field();
    SplitSystem sys = testkit::battery_split();
    StateVec gone = strang_leading_error(zero, sys.b_field, {0.9, -0.4}, 0.25);
    CHECK(gone[0] == 0.0);
    CHECK(gone[1] == 0.0);
}

TEST_CASE("corrected sequential step: commuting flows need no correction") {
    SplitSystem diag =
        testkit::linear_split_exact({0.5, 0.0, 0.0, -0.3}, {-0.2, 0.0, 0.0, 0.8}, 2);
    StateVec c = {1.1, 0.6};
    StateVec plain = product_step(ab_scheme(), diag, 0.0, 0.3, c);
    StateVec corrected = zassenhaus_ab_step(diag, 0.0, 0.3, c);
    CHECK(testkit::max_abs_diff(plain, corrected) <= 1e-9);
}

TEST_CASE("corrected sequential step raises the measured order") {
    SplitSystem sys = testkit::battery_split();
    const std::vector<double> hs = {0.4, 0.2, 0.1, 0.05};
    auto order_for = [&](int p) {
        ZassenhausCorrection corr;
        corr.order = p;
        testkit::StepFn step = [&](double t, double h, const StateVec& c) {
            return zassenhaus_ab_step(sys, t, h, c, corr);
        };
        std::vector<double> errs;
        for (double h : hs)
            errs.push_back(testkit::global_error(step, testkit::battery_c0(), 0.0, 1.6, h,
                                                 testkit::battery_exact));
        return testkit::floored_slope(hs, errs);
    };
    testkit::StepFn plain = [&](double t, double h, const StateVec& c) {
        return product_step(ab_scheme(), sys, t, h, c);
    };
    std::vector<double> plain_errs;
    for (double h : hs)
        plain_errs.push_back(
            testkit::global_error(plain, testkit::battery_c0(), 0.0, 1.6, h, testkit::battery_exact));
    CHECK(std::abs(testkit::floored_slope(hs, plain_errs) - 1.0) <= 0.2);

    CHECK(std::abs(order_for(2) - 2.0) <= 0.2);
    CHECK(std::abs(order_for(3) - 3.0) <= 0.3);

    ZassenhausCorrection bad;
    bad.order = 4;
    CHECK_THROWS_AS((void)zassenhaus_ab_step(sys, 0.0, 0.1, testkit::battery_c0(), bad),
                    ConfigError);
}

TEST_CASE("fixed-point solve: identity map converges immediately") {
    auto K = [](const StateVec& x) { return x; };
    FixedPointResult r = fixed_point_solve(K, {0.3, -0.9}, {});
    CHECK(r.converged);
    CHECK(r.iterations == 1);
    CHECK(r.x[0] == 0.3);
    CHECK(r.x[1] == -0.9);
}

TEST_CASE("fixed-point solve: geometric contraction reports its ratio") {
    auto K = [](const StateVec& x) { return StateVec{x[0] / 2.0 + 1.0}; };
    SolverConfig cfg;
    cfg.tol = 1e-12;
    cfg.max_iter = 100;
    FixedPointResult r = fixed_point_solve(K, {0.0}, cfg);
    CHECK(r.converged);
    CHECK(std::abs(r.x[0] - 2.0) <= 1e-11);
    CHECK(r.contraction_ratio >= 0.45);
    CHECK(r.contraction_ratio <= 0.55);
}

TEST_CASE("fixed-point solve: cosine fixed point") {
    auto K = [](const StateVec& x) { return StateVec{std::cos(x[0])}; };
    SolverConfig cfg;
    cfg.tol = 1e-11;
    cfg.max_iter = 200;
    FixedPointResult r = fixed_point_solve(K, {1.0}, cfg);
    CHECK(r.converged);
    CHECK(std::abs(r.x[0] - 0.7390851332151607) <= 1e-9);
}

TEST_CASE("fixed-point solve: divergent map reports failure") {
    auto K = [](const StateVec& x) { return StateVec{2.0 * x[0] + 1.0}; };
    SolverConfig cfg;
    cfg.max_iter = 30;
    FixedPointResult r = fixed_point_solve(K, {1.0}, cfg);
    CHECK_FALSE(r.converged);
}

TEST_CASE("newton solve: linear system converges in one iteration") {
    const testkit::Mat m = {2.0, 1.0, -1.0, 3.0};
    const StateVec b = {3.0, 5.0};
    VectorField f;
    f.rhs = [&](double, const StateVec& x, StateVec& out) {
        out = testkit::mat_vec(m, x, 2);
        out[0] -= b[0];
        out[1] -= b[1];
    };
    SolverConfig cfg;
    cfg.tol = 1e-9;
    NewtonResult r = newton_solve(f, {0.0, 0.0}, cfg);
    CHECK(r.converged);
    CHECK(r.iterations == 1);
    // Solution of 2x+y=3, -x+3y=5: x = 4/7, y = 13/7.
    CHECK(std::abs(r.x[0] - 4.0 / 7.0) <= 1e-7);
    CHECK(std::abs(r.x[1] - 13.0 / 7.0) <= 1e-7);
}

TEST_CASE("newton solve: square root of two") {
    VectorField f;
    f.rhs = [](double, const StateVec& x, StateVec& out) { out[0] = x[0] * x[0] - 2.0; };
    SolverConfig cfg;
    cfg.tol = 1e-12;
    NewtonResult r = newton_solve(f, {1.0}, cfg);
    CHECK(r.converged);
    CHECK(r.iterations <= 6);
    CHECK(std::abs(r.x[0] - std::sqrt(2.0)) <= 1e-10);

    // First iterate from x0 = 1 is the classical 1.5 (seen via max_iter = 1).
    SolverConfig one;
    one.tol = 1e-15;
    one.max_iter = 1;
    NewtonResult first = newton_solve(f, {1.0}, one);
    CHECK(first.x[0] == doctest::Approx(1.5).epsilon(1e-5));
}

TEST_CASE("newton solve: error sequence contracts quadratically") {
    VectorField f;
    f.rhs = [](double, const StateVec& x, StateVec& out) { out[0] = x[0] * x[0] - 2.0; };
    const double root = std::sqrt(2.0);
    std::vector<double> errors;
    for (int iters = 1; iters <= 5; ++iters) {
        SolverConfig cfg;
        cfg.tol = 1e-15;
        cfg.max_iter = iters;
        NewtonResult r = newton_solve(f, {3.0}, cfg);
        errors.push_back(std::abs(r.x[0] - root));
    }
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
        if (errors[i] <= 1e-7) break;  // below FD-Jacobian resolution
        CHECK(errors[i + 1] / (errors[i] * errors[i]) <= 0.36);
    }
}

TEST_CASE("staggered hamiltonian step: free particle is exact") {
    HamiltonianEvaluator ham;
    ham.dh_dp = [](const StateVec& p, const StateVec&) { return p; };
    ham.dh_dq = [](const StateVec&, const StateVec& q) { return StateVec(q.size(), 0.0); };
    SolverConfig cfg;
    cfg.tol = 1e-12;
    HamiltonianStepResult r = hamiltonian_fixed_point_step(ham, {0.7}, {0.2}, 0.25, cfg);
    CHECK(r.converged);
    CHECK(r.iterations == 1);
    CHECK(std::abs(r.q[0] - 0.375) <= 1e-12);
    CHECK(std::abs(r.p[0] - 0.7) <= 1e-12);
}

TEST_CASE("staggered hamiltonian step: vanishing energy leaves the state") {
    HamiltonianEvaluator ham;
    ham.dh_dp = [](const StateVec& p, const StateVec&) { return StateVec(p.size(), 0.0); };
    ham.dh_dq = [](const StateVec&, const StateVec& q) { return StateVec(q.size(), 0.0); };
    HamiltonianStepResult r = hamiltonian_fixed_point_step(ham, {0.4}, {-1.2}, 0.5, {});
    CHECK(r.converged);
    CHECK(r.iterations == 0);
    CHECK(r.p[0] == 0.4);
    CHECK(r.q[0] == -1.2);
}

TEST_CASE("staggered hamiltonian step: quartic oscillator matches a reference") {
    // H = p^2/2 + q^4/4 -> dq/dt = p, dp/dt = -q^3.
    HamiltonianEvaluator ham;
    ham.dh_dp = [](const StateVec& p, const StateVec&) { return p; };
    ham.dh_dq = [](const StateVec&, const StateVec& q) { return StateVec{q[0] * q[0] * q[0]}; };
    SolverConfig cfg;
    cfg.tol = 1e-10;
    cfg.max_iter = 60;
    HamiltonianStepResult r =
        hamiltonian_fixed_point_step(ham, {0.3}, {0.8}, 0.2, cfg, 1e-10, 64);
    CHECK(r.converged);

    VectorField stacked;  // state (q, p)
    stacked.rhs = [](double, const StateVec& x, StateVec& out) {
        out[0] = x[1];
        out[1] = -x[0] * x[0] * x[0];
    };
    StateVec ref = reference_flow(stacked, 0.0, 0.2, {0.8, 0.3}, 1e-12);
    CHECK(std::abs(r.q[0] - ref[0]) <= 2e-5);
    CHECK(std::abs(r.p[0] - ref[1]) <= 2e-5);
}
