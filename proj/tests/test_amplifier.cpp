#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "supnorm/amplifier.hpp"

using namespace supnorm;

TEST_CASE("closed-form eigenvalues") {
    SatakeParameter third = SatakeParameter::tempered(std::numbers::pi / 3.0);
    CHECK(lambda_closed_form(third, 0) == doctest::Approx(1.0));
    CHECK(lambda_closed_form(third, 1) == doctest::Approx(1.0));
    CHECK(lambda_closed_form(third, 2) == doctest::Approx(0.0));
    CHECK(lambda_closed_form(third, 3) == doctest::Approx(-1.0));

    SatakeParameter sing = SatakeParameter::singular(+1);
    for (int n = 0; n <= 10; ++n) CHECK(lambda_closed_form(sing, n) == n + 1);

    SatakeParameter half = SatakeParameter::tempered(std::numbers::pi / 2.0);
    double expected[] = {1, 0, -1, 0, 1, 0, -1};
    for (int n = 0; n <= 6; ++n) CHECK(lambda_closed_form(half, n) == doctest::Approx(expected[n]));
}

TEST_CASE("singular reclassification near theta in {0, pi}") {
    CHECK(SatakeParameter::tempered(1e-9).kind == SatakeKind::Singular);
    CHECK(SatakeParameter::tempered(1e-9).sign == 1);
    CHECK(SatakeParameter::tempered(std::numbers::pi - 1e-9).kind == SatakeKind::Singular);
    CHECK(SatakeParameter::tempered(std::numbers::pi - 1e-9).sign == -1);
    CHECK(SatakeParameter::tempered(0.5).kind == SatakeKind::Tempered);
    CHECK_THROWS_AS(SatakeParameter::tempered(-0.1), std::invalid_argument);
}

TEST_CASE("closed form agrees with the recurrence") {
    for (int g = 1; g < 200; ++g) {
        double theta = g * std::numbers::pi / 200.0;
        EigenvalueSequence seq(2, SatakeParameter::tempered(theta), 200);
        for (int n = 0; n <= 200; n += 7)
            CHECK(std::fabs(seq.lambda(n) - seq.recurrence_value(n)) < 1e-9);
    }
    EigenvalueSequence sing(2, SatakeParameter::singular(-1), 50);
    for (int n = 0; n <= 50; ++n) {
        double expect = (n % 2 == 1) ? -(n + 1.0) : n + 1.0;
        CHECK(sing.lambda(n) == expect);
        CHECK(sing.recurrence_value(n) == expect);
    }
}

TEST_CASE("multiplicative eigenvalues across primes") {
    std::vector<EigenvalueSequence> seqs;
    seqs.emplace_back(2, SatakeParameter::tempered(std::numbers::pi / 3.0), 16);  // lambda(2)=1
    seqs.emplace_back(3, SatakeParameter::singular(+1), 16);                       // lambda(3)=2
    CHECK(lambda_multiplicative(seqs, {0, 0}) == doctest::Approx(1.0));
    CHECK(lambda_multiplicative(seqs, {1, 1}) == doctest::Approx(2.0));  // lambda(6)

    // lambda(12) = lambda(4) lambda(3) for random parameters
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> dt(0.05, std::numbers::pi - 0.05);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<EigenvalueSequence> s;
        s.emplace_back(2, SatakeParameter::tempered(dt(rng)), 16);
        s.emplace_back(3, SatakeParameter::tempered(dt(rng)), 16);
        double l12 = lambda_multiplicative(s, {2, 1});
        CHECK(l12 == doctest::Approx(s[0].lambda(2) * s[1].lambda(1)));
        CHECK(s[0].lambda(2) == doctest::Approx(s[0].recurrence_value(2)));
    }

    CHECK_THROWS_AS(lambda_multiplicative(seqs, {1}), std::invalid_argument);
}

TEST_CASE("support moduli") {
    auto m = support_moduli({{2, 3}, 2});
    REQUIRE(m.size() == 4);  // L^|P|
    CHECK(m[0] == 6);
    CHECK(m[3] == 36);
}

TEST_CASE("lower-bound sweep") {
    // theta = pi/2, even L: S/L = 1/2 exactly
    for (int L : {8, 64}) {
        EigenvalueSequence seq(2, SatakeParameter::tempered(std::numbers::pi / 2.0), L);
        double s = 0;
        for (int n = 1; n <= L; ++n) s += seq.lambda(n) * seq.lambda(n);
        CHECK(s / L == doctest::Approx(0.5).epsilon(1e-12));
    }
    // reduced grid: min ratio stays above the calibrated floor
    for (int L : {8, 64}) {
        auto res = sum_lower_bound_sweep(2, L, 1e-2);
        CHECK(res.min_ratio >= 0.3);
        CHECK(res.rows.size() > 300);
    }
    // theta -> 0+: ratio diverges (singular growth)
    auto res = sum_lower_bound_sweep(2, 8, 1e-3);
    CHECK(res.rows.front().ratio > 8.0);
}

TEST_CASE("nontempered partial-sum identity") {
    auto rows = nontempered_check(2, 1.0, 8);
    for (const auto& row : rows) {
        CHECK(row.rel_residual < 1e-9);
        CHECK(row.closed >= (2.0 * row.n + 1.0) * std::pow(2.0, row.n) * (1 - 1e-12));
        CHECK(row.lambda_n >= row.n + 1.0);
    }
    // theta -> 0 limit: partial sum approaches (2n+1) p^n
    auto tiny = nontempered_check(3, 1e-6, 5);
    for (const auto& row : tiny)
        CHECK(row.closed == doctest::Approx((2.0 * row.n + 1.0) * std::pow(3.0, row.n)));
}

TEST_CASE("amplifier value") {
    std::vector<EigenvalueSequence> seqs;
    seqs.emplace_back(2, SatakeParameter::singular(+1), 8);
    auto v = amplifier_value(seqs, 2);
    CHECK(v.a_l == doctest::Approx(13.0));  // 4 + 9
    CHECK(v.kl_eigenvalue == doctest::Approx(169.0));

    std::vector<EigenvalueSequence> two;
    two.emplace_back(2, SatakeParameter::tempered(1.0), 8);
    two.emplace_back(3, SatakeParameter::tempered(0.4), 8);
    auto v2 = amplifier_value(two, 4);
    std::vector<EigenvalueSequence> first{two[0]}, second{two[1]};
    CHECK(v2.a_l ==
          doctest::Approx(amplifier_value(first, 4).a_l * amplifier_value(second, 4).a_l));
    CHECK(v2.kl_eigenvalue >= 0);
}

TEST_CASE("K_L expansion: single prime, L=1") {
    std::vector<EigenvalueSequence> seqs;
    seqs.emplace_back(2, SatakeParameter::tempered(0.9), 4);
    auto exp = expand_kl(seqs, 1);
    REQUIRE(exp.terms.size() == 2);  // T(1) and T(p^2)
    double lp2 = seqs[0].lambda(1) * seqs[0].lambda(1);
    CHECK(exp.terms[0].modulus == 1);
    CHECK(exp.terms[0].coefficient == doctest::Approx(lp2));
    CHECK(exp.terms[1].modulus == 4);
    CHECK(exp.terms[1].coefficient == doctest::Approx(lp2));
}

TEST_CASE("K_L expansion contracts to A_L^2") {
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> dt(0.05, std::numbers::pi - 0.05);
    for (int L = 1; L <= 4; ++L) {
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<EigenvalueSequence> seqs;
            seqs.emplace_back(2, SatakeParameter::tempered(dt(rng)), 2 * L);
            seqs.emplace_back(3, SatakeParameter::tempered(dt(rng)), 2 * L);
            auto exp = expand_kl(seqs, L);
            double expected = amplifier_value(seqs, L).kl_eigenvalue;
            double got = contract_expansion(exp, seqs);
            CHECK(std::fabs(got - expected) <= 1e-9 * std::fabs(expected));
            // all moduli divide (prod p)^{2L}
            BigInt cap = boost::multiprecision::pow(BigInt(6), 2 * L);
            for (const auto& term : exp.terms) CHECK(cap % term.modulus == 0);
        }
    }
}

TEST_CASE("technical sum: multiplicativity and branches") {
    std::vector<EigenvalueSequence> pair;
    pair.emplace_back(2, SatakeParameter::tempered(1.1), 16);
    pair.emplace_back(3, SatakeParameter::tempered(0.7), 16);
    std::vector<EigenvalueSequence> first{pair[0]}, second{pair[1]};
    for (double x : {-0.8, 0.0, 2.0}) {
        double joint = technical_sum(pair, 8, x).lhs;
        double prod = technical_sum(first, 8, x).lhs * technical_sum(second, 8, x).lhs;
        CHECK(std::fabs(joint - prod) <= 1e-12 * std::fabs(prod));
    }
    // finite positive ratios on both branches
    for (double x : {-0.8, 0.0, 7.0}) {
        auto res = technical_sum(first, 32, x);
        CHECK(res.lhs > 0);
        CHECK(res.rhs > 0);
        CHECK(std::isfinite(res.ratio));
    }
}

TEST_CASE("efficiency ratio is maximized at alpha = lambda") {
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> dt(0.05, std::numbers::pi - 0.05);
    std::normal_distribution<double> noise(0.0, 1.0);
    const int L = 16;
    for (int trial = 0; trial < 20; ++trial) {
        EigenvalueSequence seq(2, SatakeParameter::tempered(dt(rng)), L);
        std::vector<double> lam(L);
        double sum_sq = 0;
        for (int m = 1; m <= L; ++m) {
            lam[m - 1] = seq.lambda(m);
            sum_sq += lam[m - 1] * lam[m - 1];
        }
        double best = efficiency_ratio(lam, seq);
        CHECK(best == doctest::Approx(sum_sq));  // Cauchy-Schwarz equality case
        for (int k = 0; k < 100; ++k) {
            std::vector<double> perturbed = lam;
            for (auto& w : perturbed) w += 0.3 * noise(rng);
            CHECK(efficiency_ratio(perturbed, seq) <= best * (1 + 1e-9));
        }
        // scaling invariance
        std::vector<double> scaled = lam;
        for (auto& w : scaled) w *= 3.7;
        CHECK(efficiency_ratio(scaled, seq) == doctest::Approx(best));
    }
    // single-term weights give lambda(p)^2
    EigenvalueSequence seq(2, SatakeParameter::tempered(0.8), L);
    std::vector<double> e1(L, 0.0);
    e1[0] = 1.0;
    CHECK(efficiency_ratio(e1, seq) == doctest::Approx(seq.lambda(1) * seq.lambda(1)));
    CHECK_THROWS_AS(efficiency_ratio(std::vector<double>(L, 0.0), seq), std::invalid_argument);
}
