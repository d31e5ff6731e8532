#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "supnorm/config.hpp"
#include "supnorm/quaternion.hpp"

using namespace supnorm;

namespace {

Order make_order_m1_3() {
    AlgebraSpec alg{parse_rational("-1"), parse_rational("3")};
    OrderBasis basis;
    for (int k = 0; k < 4; ++k) basis.e[k] = Quat::unit(k);
    return Order(alg, basis);
}

OrderElement random_element(std::mt19937_64& rng, long long range) {
    std::uniform_int_distribution<long long> d(-range, range);
    return OrderElement{{d(rng), d(rng), d(rng), d(rng)}};
}

}  // namespace

TEST_CASE("standard-basis multiplication table") {
    Order order = make_order_m1_3();
    OrderElement one{{1, 0, 0, 0}}, i{{0, 1, 0, 0}}, j{{0, 0, 1, 0}}, ij{{0, 0, 0, 1}};

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        OrderElement x = random_element(rng, 50);
        CHECK(order.multiply(one, x) == x);
        CHECK(order.multiply(x, one) == x);
    }
    CHECK(order.multiply(i, j) == ij);
    CHECK(order.multiply(j, i) == OrderElement{{0, 0, 0, -1}});
}

TEST_CASE("(1+i)(1-i) = 1 - a") {
    Order order = make_order_m1_3();  // a = -1
    OrderElement x{{1, 1, 0, 0}}, y{{1, -1, 0, 0}};
    CHECK(order.multiply(x, y) == OrderElement{{2, 0, 0, 0}});
}

TEST_CASE("reduced norm and trace") {
    Order order = make_order_m1_3();
    CHECK(order.reduced_norm(OrderElement{{1, 0, 0, 0}}) == 1);
    CHECK(order.reduced_norm(OrderElement{{1, 1, 0, 0}}) == 2);  // N(1+i) = 1+1
    CHECK(order.reduced_trace(OrderElement{{3, 1, 2, -5}}) == 6);

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 1000; ++trial) {
        OrderElement x = random_element(rng, 30), y = random_element(rng, 30);
        CHECK(order.reduced_norm(order.multiply(x, y)) ==
              order.reduced_norm(x) * order.reduced_norm(y));
    }
}

TEST_CASE("x * conj(x) = N(x) as an order element") {
    Order order = make_order_m1_3();
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        OrderElement x = random_element(rng, 40);
        BigInt n = order.reduced_norm(x);
        OrderElement prod = order.multiply(x, order.conjugate(x));
        CHECK(prod.x[1] == 0);
        CHECK(prod.x[2] == 0);
        CHECK(prod.x[3] == 0);
        CHECK(BigInt(prod.x[0]) == n);
    }
}

TEST_CASE("embedding is an algebra homomorphism") {
    Order order = make_order_m1_3();
    Mat2 id = order.embed(OrderElement{{1, 0, 0, 0}});
    CHECK(id.a == doctest::Approx(1.0));
    CHECK(id.b == doctest::Approx(0.0));
    CHECK(id.d == doctest::Approx(1.0));

    Mat2 ti = order.embed(OrderElement{{0, 1, 0, 0}});
    Mat2 tj = order.embed(OrderElement{{0, 0, 1, 0}});
    Mat2 anti = ti * tj + tj * ti;
    CHECK(anti.max_abs() < 1e-12);

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 500; ++trial) {
        OrderElement x = random_element(rng, 100);
        double det = order.embed(x).det();
        double n = order.reduced_norm(x).convert_to<double>();
        if (n != 0) CHECK(std::fabs(det - n) <= 1e-9 * std::fabs(n));
    }
    // multiplicativity of the embedding
    for (int trial = 0; trial < 200; ++trial) {
        OrderElement x = random_element(rng, 50), y = random_element(rng, 50);
        Mat2 lhs = order.embed(order.multiply(x, y));
        Mat2 rhs = order.embed(x) * order.embed(y);
        double scale = std::max(1.0, rhs.max_abs());
        CHECK((lhs - rhs).max_abs() / scale < 1e-9);
    }
}

TEST_CASE("verify_order accepts the standard basis and the shipped default") {
    CHECK(make_order_m1_3().verify().ok);
    Order shipped = make_order(default_config());
    auto rep = shipped.verify();
    CHECK(rep.ok);
    CHECK(rep.violations.empty());
}

TEST_CASE("verify_order reports a non-integral basis") {
    AlgebraSpec alg{parse_rational("-1"), parse_rational("3")};
    OrderBasis basis;
    for (int k = 0; k < 4; ++k) basis.e[k] = Quat::unit(k);
    basis.e[1].c[1] = parse_rational("1/2");  // e1 = i/2, N = 1/4
    Order order(alg, basis);
    auto rep = order.verify();
    CHECK_FALSE(rep.ok);
    CHECK_FALSE(rep.violations.empty());
}

TEST_CASE("an index-2 superorder of the standard basis is still an order") {
    // (a,b) = (-1,3) with omega = (1+i+j+ij)/2: N(omega) = -1, tr(omega) = 1.
    AlgebraSpec alg{parse_rational("-1"), parse_rational("3")};
    OrderBasis basis;
    basis.e[0] = Quat::unit(0);
    basis.e[1] = Quat::unit(1);
    basis.e[2] = Quat::unit(2);
    for (int c = 0; c < 4; ++c) basis.e[3].c[c] = parse_rational("1/2");
    Order order(alg, basis);
    CHECK(order.verify().ok);
}

TEST_CASE("invalid constructions are rejected") {
    AlgebraSpec bad{parse_rational("-1"), parse_rational("-3")};
    OrderBasis basis;
    for (int k = 0; k < 4; ++k) basis.e[k] = Quat::unit(k);
    CHECK_THROWS_AS(Order(bad, basis), std::invalid_argument);

    AlgebraSpec alg{parse_rational("-1"), parse_rational("3")};
    OrderBasis singular = basis;
    singular.e[3] = basis.e[0];
    CHECK_THROWS_AS(Order(alg, singular), std::invalid_argument);
}

TEST_CASE("non-closed basis signals on multiply") {
    AlgebraSpec alg{parse_rational("-1"), parse_rational("3")};
    OrderBasis basis;
    for (int k = 0; k < 4; ++k) basis.e[k] = Quat::unit(k);
    basis.e[3].c[3] = parse_rational("1/3");  // lattice not closed under products
    Order order(alg, basis);
    // (ij/3)^2 = -ab/9 = 1/3, which has no integer coordinates in this basis
    OrderElement w{{0, 0, 0, 1}};
    CHECK_THROWS_AS(order.multiply(w, w), std::domain_error);
}
