#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "supnorm/config.hpp"
#include "supnorm/spectral_window.hpp"

using namespace supnorm;

namespace {

const WindowFunction& window() {
    static WindowFunction w;
    return w;
}

}  // namespace

TEST_CASE("bump function basics") {
    const auto& w = window();
    CHECK(w.chi(0.0) == doctest::Approx(std::exp(-1.0)));
    CHECK(w.chi(0.25) == 0.0);
    CHECK(w.chi(0.3) == 0.0);
    CHECK(w.chi(0.1) == doctest::Approx(w.chi(-0.1)));
    CHECK(w.chi(0.1) > 0);
}

TEST_CASE("window normalization and positivity") {
    const auto& w = window();
    CHECK(w.h(0.0) == doctest::Approx(1.0).epsilon(1e-10));
    for (double xi : {0.0, 0.5, 1.0, 3.7, 10.0, 25.0, 60.0}) {
        CHECK(w.h(xi) >= 0.0);
        CHECK(w.h(xi) == doctest::Approx(w.h(-xi)));
    }
    CHECK(w.stability() <= 1e-8);
}

TEST_CASE("window decays") {
    const auto& w = window();
    CHECK(w.h(50.0) < w.h(5.0));
    CHECK(w.h(200.0) < 1e-6);
}

TEST_CASE("transform support is contained in [-1/2, 1/2]") {
    const auto& w = window();
    // psi = chi * chi directly
    CHECK(w.psi(0.6) == 0.0);
    CHECK(w.psi(0.51) == 0.0);
    CHECK(w.psi(0.0) > 0);
    // and via reconstruction from h
    double inside = w.hhat_reconstructed(0.0);
    CHECK(inside > 0);
    for (double t : {0.55, 0.7, 1.0, 2.0})
        CHECK(std::fabs(w.hhat_reconstructed(t)) <= 1e-6 * inside);
    // reconstruction matches the direct convolution after normalization
    double scale = inside / w.psi(0.0);
    for (double t : {0.1, 0.25, 0.4})
        CHECK(w.hhat_reconstructed(t) == doctest::Approx(w.psi(t) * scale).epsilon(1e-6));
}

TEST_CASE("kernel envelope piecewise structure") {
    double log_lambda = std::log(1e8);
    double eps = 0.1, C = 1.0;

    auto near = kernel_envelope(0.5, log_lambda, eps, C);
    CHECK_FALSE(near.zero);
    double term_a = std::log(eps) + log_lambda;
    double term_b = 0.5 * log_lambda + C / eps;
    CHECK(near.log_value >= std::max(term_a, term_b) - 1e-12);

    auto mid = kernel_envelope(4.0, log_lambda, eps, C);
    CHECK_FALSE(mid.zero);
    CHECK(mid.log_value == doctest::Approx(0.5 * (log_lambda - std::log(4.0)) + C / eps));

    auto far = kernel_envelope(10.0 + 1e-6, log_lambda, eps, C);
    CHECK(far.zero);

    // monotone decreasing in d on the middle branch
    double prev = kernel_envelope(1.5, log_lambda, eps, C).log_value;
    for (double d : {2.0, 3.0, 5.0, 8.0}) {
        double cur = kernel_envelope(d, log_lambda, eps, C).log_value;
        CHECK(cur < prev);
        prev = cur;
    }

    CHECK_THROWS_AS(kernel_envelope(1.0, log_lambda, 2.0, C), std::invalid_argument);
    CHECK_THROWS_AS(kernel_envelope(1.0, log_lambda, 1e-10, C), std::invalid_argument);
}

TEST_CASE("planner reproduces the canonical parameter choices") {
    PlanInput in;
    in.log_lambda = 1000.0 * std::log(2.0);  // lambda = 2^1000
    in.primes = {2};
    in.C = 1.0;
    auto out = plan(in);
    CHECK(out.L == 10);  // floor(1000 log2 / (100 log 2))
    CHECK(out.c == doctest::Approx(8.0));
    CHECK(out.eps == doctest::Approx(8.0 / in.log_lambda));
    CHECK(out.saving_exponent == doctest::Approx(1.0));
    CHECK(out.dominance);  // term2 far below term1 at this size
    CHECK(out.log_term1 > out.log_bound);

    in.primes = {2, 3};
    auto out2 = plan(in);
    CHECK(out2.saving_exponent == doctest::Approx(1.5));

    PlanInput tiny;
    tiny.log_lambda = 5.0;
    tiny.primes = {2, 3, 5};
    CHECK_THROWS_AS(plan(tiny), std::invalid_argument);
}

TEST_CASE("planner accepts an eigenvalue-sum override") {
    PlanInput in;
    in.log_lambda = 2000.0;
    in.primes = {2};
    in.have_a_l = true;
    in.log_a_l = 3.0;
    auto out = plan(in);
    CHECK(out.log_a_l == doctest::Approx(3.0));
    in.have_a_l = false;
    auto def = plan(in);
    CHECK(def.log_a_l > 3.0);  // singular default grows with L
}

TEST_CASE("splitting estimate uses actual counts") {
    Order order = make_order(default_config());
    double log_lambda = 40.0;  // far radius e^{40/8} stays enumerable
    auto terms = splitting_estimate(order, 4, 1e-6, log_lambda, 1.0, {0, 1});
    CHECK(terms.near_count >= 2);  // central +-2
    CHECK(terms.far_count >= terms.near_count);
    CHECK(std::isfinite(terms.log_near));
    CHECK(terms.log_far >= terms.log_near);

    // norm with no lattice points at all near z: log terms are -inf
    auto empty = splitting_estimate(order, 7, 1e-6, log_lambda, 1.0, {0, 1});
    if (empty.near_count == 0) CHECK(std::isinf(empty.log_near));
}
