/*
 * Copyright The repscope authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include <doctest.h>

#include <cmath>
#include <vector>

#include "repscope/metrics.hpp"

using namespace repscope;

TEST_CASE("theta is the equal fraction") {
    CHECK(theta(8, 2) == doctest::Approx(0.8));
    CHECK(theta(5, 0) == 1.0);
    CHECK_THROWS_AS(theta(0, 0), NoComparisons);
}

TEST_CASE("prob_a") {
    CHECK(prob_a(0.67, 0.0).value == doctest::Approx(0.67));
    CHECK_FALSE(prob_a(0.67, 0.0).clamped);

    // (0.703 - 0.1) / 0.9 = 0.67 exactly as a rational
    CHECK(prob_a(0.703, 0.1).value == doctest::Approx(0.67).epsilon(1e-12));

    auto clamped = prob_a(0.3, 0.5);
    CHECK(clamped.value == 0.0);
    CHECK(clamped.clamped);

    CHECK_THROWS_AS(prob_a(0.5, 1.0), AlphaOutOfRange);
    CHECK_THROWS_AS(prob_a(0.5, -0.1), AlphaOutOfRange);
}

TEST_CASE("lower bound omega = theta - alpha") {
    CHECK(lower_bound(1.0, 0.0).value == 1.0);
    CHECK(lower_bound(0.5, 0.5).value == 0.0);
    CHECK(lower_bound(0.839, 0.2).value == doctest::Approx(0.639).epsilon(1e-12));

    auto clamped = lower_bound(0.3, 0.5);
    CHECK(clamped.value == 0.0);
    CHECK(clamped.clamped);
}

TEST_CASE("upper bound gamma") {
    // 1/(2*999) + sqrt(1/(4*999^2) + 0.67)
    const double expected = 1.0 / 1998.0 + std::sqrt(1.0 / (4.0 * 999.0 * 999.0) + 0.67);
    CHECK(upper_bound(0.703, 0.1, 1000).value == doctest::Approx(expected).epsilon(1e-14));
    CHECK(upper_bound(0.703, 0.1, 1000).value == doctest::Approx(0.81904).epsilon(1e-4));

    // the all-identical limit caps at 1
    auto capped = upper_bound(1.0, 0.0, 2);
    CHECK(capped.value == 1.0);
    CHECK(capped.clamped);
    // large X approaches 1 from below the cap
    CHECK(upper_bound(1.0, 0.0, 100000).value == 1.0);

    CHECK_THROWS_AS(upper_bound(0.5, 0.0, 1), TooFewObjects);
    CHECK_THROWS_AS(upper_bound(0.5, 0.0, 0), TooFewObjects);
}

TEST_CASE("bound_interval") {
    auto [omega, gamma] = bound_interval(0.8, 0.0, 100);
    CHECK(omega.value == doctest::Approx(0.8));
    const double expected = 1.0 / 198.0 + std::sqrt(1.0 / 39204.0 + 0.8);
    CHECK(gamma.value == doctest::Approx(expected).epsilon(1e-14));
    CHECK(gamma.value == doctest::Approx(0.8999).epsilon(1e-3));

    // theta == alpha degenerates to (0, 1/(X-1))
    auto [omega0, gamma0] = bound_interval(0.3, 0.3, 100);
    CHECK(omega0.value == 0.0);
    CHECK(gamma0.value == doctest::Approx(1.0 / 99.0).epsilon(1e-12));

    auto [omega1, gamma1] = bound_interval(1.0, 0.0, 2);
    CHECK(omega1.value == 1.0);
    CHECK(gamma1.value == 1.0);
    CHECK(gamma1.clamped);
}

TEST_CASE("bounds are monotone") {
    double prev_gamma = 0.0;
    double prev_omega = -1.0;
    for (double th = 0.1; th <= 0.9; th += 0.1) {
        auto g = upper_bound(th, 0.1, 50);
        auto w = lower_bound(th, 0.1);
        CHECK(g.value >= prev_gamma);
        CHECK(w.value >= prev_omega);
        prev_gamma = g.value;
        prev_omega = w.value;
    }
    // gamma nonincreasing in alpha
    double prev = 2.0;
    for (double al = 0.0; al < 0.9; al += 0.1) {
        auto g = upper_bound(0.95, al, 50);
        CHECK(g.value <= prev);
        prev = g.value;
    }
}

TEST_CASE("theta is scale free") {
    CHECK(theta(8, 2) == theta(16, 4));
    CHECK(theta(3, 9) == theta(300, 900));
}

TEST_CASE("suspect threshold is strict") {
    CHECK(is_suspect(0.61));
    CHECK_FALSE(is_suspect(0.6));
    CHECK_FALSE(is_suspect(0.59));
    CHECK(is_suspect(0.35, 0.3));
}

TEST_CASE("scenario probabilities sum to one") {
    auto s = scenario_split(0.7, 0.2);
    CHECK(s.a + s.b + s.c == doctest::Approx(1.0));
    CHECK(s.a == doctest::Approx(0.5 / 0.8));
    CHECK(s.b == doctest::Approx(0.2 * (1.0 - 0.5 / 0.8)));
}

TEST_CASE("replication ratio pools counts and averages contexts") {
    std::vector<RawContextCounters> contexts(2);
    contexts[0].equivalent = 8;
    contexts[0].different = 2;
    contexts[1].equivalent = 0;
    contexts[1].different = 10;

    auto r = replication_ratio(contexts);
    CHECK(r.pooled == doctest::Approx(8.0 / 20.0));
    CHECK(r.macro == doctest::Approx(0.4));  // (0.8 + 0.0) / 2

    std::vector<RawContextCounters> single(1);
    single[0].equivalent = 8;
    single[0].different = 2;
    CHECK(replication_ratio(single).pooled == doctest::Approx(0.8));

    std::vector<RawContextCounters> none(3);
    CHECK_THROWS_AS(replication_ratio(none), NoComparisons);

    // all-identical corpus
    std::vector<RawContextCounters> ident(2);
    ident[0].equivalent = 5;
    ident[1].equivalent = 9;
    CHECK(replication_ratio(ident).pooled == 1.0);
}
