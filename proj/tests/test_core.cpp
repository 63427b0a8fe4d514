#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "opsplit/errors.hpp"
#include "opsplit/flow.hpp"
#include "opsplit/norms.hpp"
#include "opsplit/ode.hpp"
#include "opsplit/problems/logistic.hpp"
#include "opsplit/reference.hpp"
#include "support.hpp"

using namespace opsplit;

TEST_CASE("zero field evaluates to the zero vector") {
    VectorField z = zero_field();
    StateVec out = z.eval(0.0, {1.0, -2.0, 3.5});
    REQUIRE(out.size() == 3);
    for (double v : out) CHECK(v == 0.0);
}

TEST_CASE("identity linear field returns its input") {
    VectorField f = linear_field({1.0, 0.0, 0.0, 1.0}, 2);
    StateVec out = f.eval(0.0, {1.0, 2.0});
    CHECK(out[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(out[1] == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("logistic field value at one half") {
    SplitSystem sys = logistic_split();
    StateVec out = sys.combined_field().eval(0.0, {0.5});
    CHECK(out[0] == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("field evaluation rejects bad dimensions and non-finite values") {
    VectorField f = linear_field({1.0, 0.0, 0.0, 1.0}, 2);
    CHECK_THROWS_AS((void)f.eval(0.0, {1.0, 2.0, 3.0}), DimensionError);

    VectorField bad;
    bad.rhs = [](double, const StateVec& c, StateVec& out) {
        out.assign(c.size(), std::numeric_limits<double>::infinity());
    };
    CHECK_THROWS_AS((void)bad.eval(0.0, {1.0}), EvaluationError);
}

TEST_CASE("reference flow: zero field is the identity") {
    StateVec c = {0.3, -4.0};
    StateVec out = reference_flow(zero_field(), 0.0, 2.5, c, 1e-12);
    CHECK(testkit::max_abs_diff(out, c) <= 1e-14);
}

TEST_CASE("reference flow reproduces the exponential") {
    VectorField f = linear_field({1.0}, 1, "growth");
    StateVec out = reference_flow(f, 0.0, 1.0, {1.0}, 1e-12);
    CHECK(std::abs(out[0] - std::exp(1.0)) <= 1e-10);
}

TEST_CASE("reference flow reproduces the logistic closed form") {
    SplitSystem sys = logistic_split();
    StateVec out = reference_flow(sys.combined_field(), 0.0, 1.0, {0.1}, 1e-12);
    const double expected = 0.1 * std::exp(1.0) / (1.0 + 0.1 * (std::exp(1.0) - 1.0));
    CHECK(std::abs(out[0] - expected) <= 1e-10);
    CHECK(std::abs(logistic_solution(0.1, 1.0) - expected) <= 1e-15);
}

TEST_CASE("sub-flows: h = 0 short-circuits to the identity") {
    SubFlow flow = numeric_flow(linear_field({1.0}, 1));
    StateVec c = {0.777};
    StateVec out = flow.apply(1.5, 0.0, c);
    CHECK(out[0] == c[0]);
}

TEST_CASE("exact and numeric sub-flows agree on the exponential") {
    VectorField f = linear_field({1.0}, 1);
    SubFlow num = numeric_flow(f, 1e-13);
    SubFlow exact = exact_flow(f, [](double, double h, const StateVec& c) {
        return StateVec{c[0] * std::exp(h)};
    });
    for (double h : {0.1, 0.5, 1.0, -0.4}) {
        StateVec a = num.apply(0.0, h, {2.0});
        StateVec b = exact.apply(0.0, h, {2.0});
        CHECK(std::abs(a[0] - b[0]) <= 1e-11 * std::abs(b[0]));
    }
}

TEST_CASE("numeric flows compose: two partial steps equal one full step") {
    SubFlow flow = numeric_flow(linear_field({1.0}, 1), 1e-13);
    StateVec mid = flow.apply(0.0, 0.7, {1.0});
    StateVec full = flow.apply(0.7, 0.3, mid);
    CHECK(std::abs(full[0] - std::exp(1.0)) <= 1e-11);
}

TEST_CASE("implicit hook drives the numeric flow of stiff fields") {
    VectorField f = linear_field({-50.0}, 1, "decay");
    f.implicit_step = [](double, double tau, const StateVec& rhs) {
        return StateVec{rhs[0] / (1.0 + 50.0 * tau)};
    };
    SubFlow flow = numeric_flow(f, 1e-7);
    StateVec out = flow.apply(0.0, 0.1, {1.0});
    CHECK(std::abs(out[0] - std::exp(-5.0)) <= 2e-5);
}

TEST_CASE("sampled path: constant, tangent line, clamping, node exactness") {
    SampledPath c = SampledPath::constant(1.0, 0.5, {2.0, -1.0});
    CHECK(c.eval(1.2)[0] == 2.0);
    CHECK(c.eval(0.0)[1] == -1.0);  // clamped below
    CHECK(c.eval(9.0)[0] == 2.0);   // clamped above

    SampledPath l = SampledPath::line(0.0, 1.0, {1.0}, {2.0});
    CHECK(l.eval(0.25)[0] == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(l.eval(1.0)[0] == doctest::Approx(3.0).epsilon(1e-15));

    std::vector<StateVec> samples = {{0.0}, {1.0}, {4.0}};
    SampledPath p(0.0, 1.0, samples);
    CHECK(p.segments() == 2);
    CHECK(p.eval(0.25)[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(p.eval(0.5)[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p.eval(0.75)[0] == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(p.eval(1.0)[0] == 4.0);
}

TEST_CASE("integrate_sampled endpoint matches the closed form") {
    OdeRhs rhs = [](double, const StateVec& y, StateVec& dydt) { dydt = {y[0]}; };
    SampledPath path = integrate_sampled(rhs, 0.0, 1.0, {1.0}, 1e-10, 8);
    CHECK(path.segments() == 8);
    CHECK(std::abs(path.eval(1.0)[0] - std::exp(1.0)) <= 1e-8);
    CHECK(std::abs(path.eval(0.0)[0] - 1.0) <= 1e-15);
}

TEST_CASE("error norms: zero case, max definition, grid averaging") {
    ErrorNorms zero = error_norms({1.0, 2.0}, {1.0, 2.0});
    CHECK(zero.l1 == 0.0);
    CHECK(zero.max == 0.0);

    ErrorNorms n = error_norms({1.0, 2.0}, {0.0, 0.0});
    CHECK(n.max == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(n.l1 == doctest::Approx(1.5).epsilon(1e-15));  // (|1|+|2|)/2

    CHECK_THROWS_AS((void)error_norms({1.0}, {1.0, 2.0}), DimensionError);
}

TEST_CASE("split system consistency check accepts matching full fields") {
    SplitSystem sys = logistic_split();
    REQUIRE(sys.has_full_field());
    CHECK_NOTHROW(sys.check_consistency({{0.1}, {0.5}, {0.9}}));

    SplitSystem broken = sys;
    broken.full_field = linear_field({2.0}, 1, "wrong");
    CHECK_THROWS_AS(broken.check_consistency({{0.5}}), EvaluationError);
}

TEST_CASE("CFL error carries the admissible step") {
    CflError e("too fast", 0.01);
    CHECK(e.admissible_dt == 0.01);
    const FlowError& base = e;  // CflError is a flow failure
    CHECK(std::string(base.what()).find("too fast") != std::string::npos);
}

TEST_CASE("adaptive integrator reports stiffness beyond its budget") {
    // Square-root blow-up: u' = u², diverges at t = 1 from u(0) = 1.
    VectorField f;
    f.rhs = [](double, const StateVec& c, StateVec& out) { out = {c[0] * c[0]}; };
    CHECK_THROWS_AS((void)reference_flow(f, 0.0, 1.0, {1.0}, 1e-10), Error);
}
