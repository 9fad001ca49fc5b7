#include "erw/analysis.hpp"
#include "erw/series.hpp"
#include "erw/walk.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace erw;

TEST(Ruin, Examples) {
    EXPECT_NEAR(ruin_probability({0.5, 10, 0, 3}), 0.3, 1e-15);
    EXPECT_EQ(ruin_probability({0.7, 5, -2, 5}), 1.0);
    EXPECT_EQ(ruin_probability({0.7, 5, -2, -2}), 0.0);
    EXPECT_NEAR(ruin_probability({0.8, 1, -1, 0}), 0.8, 1e-15);
}

TEST(Ruin, RejectsBadBarriers) {
    EXPECT_THROW(ruin_probability({0.6, 3, 3, 3}), InvalidParameter);
    EXPECT_THROW(ruin_probability({0.6, 3, 5, 4}), InvalidParameter);
    EXPECT_THROW(ruin_probability({0.6, 3, 0, 4}), InvalidParameter);
    EXPECT_THROW(ruin_probability({1.0, 3, 0, 1}), InvalidParameter);
}

TEST(Ruin, MatchesFirstStepRecursion) {
    // h(z) = p h(z+1) + (1-p) h(z-1), solved by sweeping a linear system
    for (double p : {0.3, 0.5, 0.77}) {
        const int x = 12, y = -3;
        const int n = x - y;
        std::vector<double> h(n + 1, 0.0);
        h[n] = 1.0;
        for (int it = 0; it < 200000; ++it)
            for (int i = 1; i < n; ++i) h[i] = p * h[i + 1] + (1 - p) * h[i - 1];
        for (int z = y; z <= x; ++z) EXPECT_NEAR(ruin_probability({p, x, y, z}), h[z - y], 1e-9) << p << " " << z;
    }
}

TEST(Ruin, MonotoneInStartAndBias) {
    for (double p : {0.2, 0.5, 0.6, 0.9})
        for (int z = -4; z < 9; ++z) EXPECT_LE(ruin_probability({p, 9, -4, z}), ruin_probability({p, 9, -4, z + 1}));
    for (int k = 1; k < 99; ++k)
        EXPECT_LE(ruin_probability({k / 100.0, 9, -4, 2}), ruin_probability({(k + 1) / 100.0, 9, -4, 2}));
}

TEST(Ruin, ContinuousAtHalf) {
    for (int z = 1; z < 10; ++z) {
        const double mid = ruin_probability({0.5, 10, 0, z});
        const double lo = ruin_probability({0.5 - 1e-6, 10, 0, z});
        const double hi = ruin_probability({0.5 + 1e-6, 10, 0, z});
        EXPECT_NEAR((lo + hi) / 2, mid, 1e-8);
        EXPECT_NEAR(lo, mid, 1e-5);
        EXPECT_NEAR(hi, mid, 1e-5);
        EXPECT_NEAR(ruin_probability({0.5 + 1e-12, 10, 0, z}), mid, 1e-8);
    }
}

TEST(Pi0, ClosurePoints) {
    EXPECT_EQ(pi0_product(0.8, 1.0).value, 1.0);
    EXPECT_NEAR(pi0_product(1.0, 0.3).value, 0.3, 1e-15);
    EXPECT_THROW(pi0_product(0.5, 0.3), InvalidParameter);
}

TEST(Pi0, MatchesStationaryOracleAndPgf) {
    for (auto [p0, p1] : {std::pair{0.7, 0.8}, std::pair{0.8, 0.9}, std::pair{0.6, 0.2}}) {
        const auto pi = test::stationary_by_power_iteration(
            100, [&](std::size_t j, std::size_t k) { return test::brute_transition(j, k, p0, p1); });
        const auto s = pi0_product(p0, p1);
        EXPECT_NEAR(s.value, pi[0], 1e-9);
        EXPECT_NEAR(s.value, pgf_eval(p0, p1, 0.0).value, 1e-8);
        EXPECT_LT(s.tail_bound, 1e-14);
        EXPECT_EQ(s.method, SeriesMethod::ProductA2);
    }
}

TEST(Pi0, TruncationIsSound) {
    for (auto [p0, p1] : {std::pair{0.7, 0.8}, std::pair{0.55, 0.05}, std::pair{0.95, 0.5}}) {
        double tol = 1e-3;
        auto prev = pi0_product(p0, p1, tol);
        for (int halving = 0; halving < 30; ++halving) {
            tol /= 2;
            const auto next = pi0_product(p0, p1, tol);
            EXPECT_LE(std::abs(next.value - prev.value), prev.tail_bound + 1e-16);
            prev = next;
        }
    }
}

TEST(Pi1, SureCookieGivesZero) {
    const auto rep = pi1_sum(0.8, 1.0);
    EXPECT_EQ(rep.variant_a.value, 0.0);
    EXPECT_EQ(rep.variant_b.value, 0.0);
    EXPECT_TRUE(rep.variant_a.converged);
}

TEST(Pi1, VariantBMatchesStationaryOracle) {
    for (auto [p0, p1] : {std::pair{0.7, 0.8}, std::pair{0.8, 0.9}, std::pair{0.9, 0.99}, std::pair{0.6, 0.3}}) {
        const auto pi = test::stationary_by_power_iteration(
            100, [&](std::size_t j, std::size_t k) { return test::brute_transition(j, k, p0, p1); });
        const auto rep = pi1_sum(p0, p1, 1e-12);
        EXPECT_TRUE(rep.variant_b.converged);
        EXPECT_LT(rep.variant_b.tail_bound, 1e-10);
        EXPECT_NEAR(rep.variant_b.value, pi[1], 1e-9) << p0 << "," << p1;
        EXPECT_LE(rep.pi0.value + rep.variant_b.value, 1.0);
    }
}

TEST(Pi1, VariantADiverges) {
    const double p0 = 0.8, p1 = 0.9;
    const auto rep = pi1_sum(p0, p1);
    EXPECT_FALSE(rep.variant_a.converged);
    EXPECT_TRUE(std::isnan(rep.variant_a.value));
    const double limit = pi1_variant_a_term_limit(p0, p1);
    EXPECT_GT(limit, 0.0);
    const double s1 = pi1_variant_a_partial_sum(p0, p1, 1000);
    const double s2 = pi1_variant_a_partial_sum(p0, p1, 2000);
    EXPECT_NEAR((s2 - s1) / 1000, limit, 1e-9);
    EXPECT_TRUE(to_json(rep.variant_a).at("value").is_null());
}

TEST(Pi1, MonteCarloSelectsVariantB) {
    const auto config = WalkConfig::excited_asymmetric(CookieVector::repeated(1, parse_rational("0.9")),
                                                       parse_rational("0.8"));
    const auto u0 = left_steps_at_origin(config, 200, 50'000, 3);
    const auto sel = select_pi1_variant(pi1_sum(0.8, 0.9), u0);
    ASSERT_TRUE(sel.selected);
    EXPECT_EQ(*sel.selected, SeriesMethod::SumA6VariantB);
    EXPECT_LE(std::abs(sel.z_variant_b), 3.0);
    // P(U_0 = 0) from the same sample
    const double p = u0.probability(0);
    EXPECT_NEAR(p, pi0_product(0.8, 0.9).value, 3 * std::sqrt(p * (1 - p) / static_cast<double>(u0.total)));
}

TEST(Series, JsonCarriesMethodAndBound) {
    const auto j = to_json(pi0_product(0.8, 0.9, 1e-10));
    EXPECT_EQ(j.at("method"), "product_A2");
    EXPECT_LT(j.at("tail_bound").get<double>(), 1e-10);
    EXPECT_TRUE(j.at("converged").get<bool>());
}
