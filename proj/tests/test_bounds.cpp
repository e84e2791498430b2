#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "teamorder/bounds.hpp"

using namespace teamorder;

TEST_CASE("homogeneous half matrices have gap bound zero") {
    const auto inst = validate(std::vector<std::vector<double>>(
        4, std::vector<double>(4, 0.5)));
    const auto gb = max_weight_gap_bound(inst, {0, 1, 2, 3});
    CHECK(gb.regime == "part2-central");
    REQUIRE(gb.part2_exact.has_value());
    CHECK(*gb.part2_exact == 0.0);
    CHECK(gb.bound == 0.0);
    const auto audit = audit_gap(inst);
    CHECK(audit.true_gap == 0.0);
    CHECK(audit.holds);
}

TEST_CASE("the concentration regime bound is e^(-2 f^2)") {
    // n = 16, weight 12: deviation 4 = sqrt(16), f = 1.
    std::vector<std::vector<double>> p(16, std::vector<double>(16, 0.75));
    const auto inst = validate(p);
    LineUp id(16);
    std::iota(id.begin(), id.end(), 0);
    const auto gb = max_weight_gap_bound(inst, id);
    CHECK(gb.weight == doctest::Approx(12.0));
    REQUIRE(gb.part1_bound.has_value());
    CHECK(*gb.part1_bound == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
    CHECK(gb.regime == "part1-high");
}

TEST_CASE("the concentration bound decreases in the weight deviation") {
    double prev = 1.0;
    for (double v : {0.75, 0.80, 0.90, 0.99}) {
        std::vector<std::vector<double>> p(16, std::vector<double>(16, v));
        const auto inst = validate(p);
        LineUp id(16);
        std::iota(id.begin(), id.end(), 0);
        const auto gb = max_weight_gap_bound(inst, id);
        REQUIRE(gb.part1_bound.has_value());
        CHECK(*gb.part1_bound <= prev + 1e-15);
        prev = *gb.part1_bound;
    }
}

TEST_CASE("part-2 expressions are nonnegative and zero only for equal edges") {
    const auto inst = validate({{0.4, 0.6}, {0.6, 0.4}});
    const auto gb = max_weight_gap_bound(inst, {1, 0});
    REQUIRE(gb.part2_exact.has_value());
    CHECK(*gb.part2_exact == 0.0);  // both matched edges are 0.6
    const auto gb2 = max_weight_gap_bound(inst, {0, 1});
    REQUIRE(gb2.part2_exact.has_value());
    CHECK(*gb2.part2_exact == 0.0);  // both 0.4
    const auto mixed = validate({{0.2, 0.8}, {0.2, 0.8}});
    const auto gb3 = max_weight_gap_bound(mixed, {0, 1});
    REQUIRE(gb3.part2_exact.has_value());
    CHECK(*gb3.part2_exact > 0.0);
}

TEST_CASE("gap bound rejects non-permutations") {
    const auto inst = validate({{0.4, 0.6}, {0.6, 0.4}});
    CHECK_THROWS_AS(max_weight_gap_bound(inst, {0, 0}), validation_error);
}

TEST_CASE("the bounds are asymptotic: the n=3 anchor violates part 2") {
    // All matched probabilities equal 0.9, so the certified central bound is
    // 0, yet brute beats the baseline by 0.028. The auditor reports this
    // honestly and flags the instance as below the asymptotic regime.
    const auto inst =
        validate({{0.9, 1.0, 1.0}, {0.5, 0.9, 1.0}, {0.0, 0.5, 0.9}}, 2);
    const auto audit = audit_gap(inst);
    CHECK(audit.true_gap == doctest::Approx(0.028).epsilon(1e-10));
    CHECK(audit.bound.bound == 0.0);
    CHECK(!audit.holds);
    CHECK(!audit.asymptotic_regime);
}

TEST_CASE("audit over random instances at n 6 and 8") {
    int holds = 0, total = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const int n = (trial % 2 == 0) ? 6 : 8;
        const auto inst = generate({gen_kind::uniform_random}, n, 9000 + trial);
        const auto audit = audit_gap(inst);
        CHECK(audit.true_gap >= -1e-12);
        CHECK(audit.bound.bound >= 0.0);
        holds += audit.holds ? 1 : 0;
        ++total;
    }
    CHECK(holds == total);
}

TEST_CASE("audit enforces the brute cap") {
    const auto inst = generate({gen_kind::uniform_random}, 11, 5);
    CHECK_THROWS_AS(audit_gap(inst), cap_exceeded_error);
}
