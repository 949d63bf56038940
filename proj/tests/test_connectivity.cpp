#include <gtest/gtest.h>

#include <random>

#include <binmat/connectivity.hpp>
#include <binmat/families.hpp>

#include "oracles.hpp"

using namespace binmat;

TEST(Connectivity, LambdaMatchesRankOracle) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const auto m = brute::random_matroid(rng, 2 + rng() % 4, 3 + rng() % 8);
        const auto t = brute::RankTable::of(m);
        const std::uint32_t all = (1u << m.size()) - 1;
        for (std::uint32_t x = 0; x <= all; ++x) {
            ASSERT_EQ(static_cast<int>(lambda_mask(m, x)), t.rk[x] + t.rk[all & ~x] - t.rank());
        }
    }
}

TEST(Connectivity, ThreeConnectedMatchesBruteForce) {
    std::mt19937_64 rng(6);
    int yes = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const auto m = brute::random_matroid(rng, 3 + rng() % 3, 5 + rng() % 9, rng() % 2 == 0);
        const bool brute = brute::three_connected(brute::RankTable::of(m));
        ASSERT_EQ(is_3connected(m, ConnectivityMode::exhaustive), brute) << trial;
        ASSERT_EQ(is_3connected(m, ConnectivityMode::optimized), brute) << trial;
        yes += brute ? 1 : 0;
    }
    EXPECT_GT(yes, 20);
}

TEST(Connectivity, OptimizedAgreesWithExhaustiveUpTo20Elements) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 60; ++trial) {
        const auto m = brute::random_matroid(rng, 4 + rng() % 3, 12 + rng() % 9, true);
        EXPECT_EQ(is_3connected(m, ConnectivityMode::exhaustive), is_3connected(m, ConnectivityMode::optimized));
        EXPECT_EQ(is_connected(m, ConnectivityMode::exhaustive), is_connected(m, ConnectivityMode::optimized));
    }
}

TEST(Connectivity, CertificatesAreGenuine) {
    const auto m = named("F7").extend(1);  // parallel pair
    const auto sep = find_2separation(m);
    ASSERT_TRUE(sep.has_value());
    EXPECT_LE(lambda(m, sep->side), 1u);
    EXPECT_GE(sep->side.size(), 2u);
    EXPECT_GE(m.size() - sep->side.size(), 2u);
}

TEST(Connectivity, SmallGroundSets) {
    EXPECT_TRUE(is_3connected(BinaryMatroid::from_columns({1, 2, 3})));  // U_{2,3}
    EXPECT_FALSE(is_3connected(BinaryMatroid::from_columns({1, 2})));    // two coloops
    EXPECT_TRUE(is_3connected(BinaryMatroid::from_columns({1})));
}

TEST(Connectivity, InternalFourConnectivity) {
    EXPECT_TRUE(is_internally_4connected(named("R16")));
    EXPECT_TRUE(is_internally_4connected(named("F7")));
    EXPECT_FALSE(is_internally_4connected(z_spike(4).matroid));
    EXPECT_THROW((void)is_internally_4connected(projective_geometry(5)), std::invalid_argument);
}
