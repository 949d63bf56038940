#include <gtest/gtest.h>

#include <random>

#include <binmat/canonical.hpp>
#include <binmat/families.hpp>

#include "oracles.hpp"

using namespace binmat;

TEST(CanonicalKey, InvariantUnderRandomRowMapsAndPermutations) {
    std::mt19937_64 rng(2024);
    std::vector<BinaryMatroid> pool;
    for (const auto& n : named_list()) pool.push_back(named(n));
    for (int i = 0; i < 40; ++i) pool.push_back(brute::random_matroid(rng, 2 + rng() % 6, 4 + rng() % 14));
    for (int trial = 0; trial < 1000; ++trial) {
        const auto& m = pool[rng() % pool.size()];
        const auto s = brute::scramble(rng, m);
        ASSERT_EQ(canonical_key(m), canonical_key(s)) << m.name() << " trial " << trial;
    }
}

TEST(CanonicalKey, AgreesWithBruteForceIsomorphism) {
    std::mt19937_64 rng(99);
    int iso = 0;
    int non = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t r = 2 + rng() % 3;
        const std::size_t n = 4 + rng() % 6;
        const auto a = brute::random_matroid(rng, r, n);
        const auto b = (rng() % 2) ? brute::scramble(rng, a) : brute::random_matroid(rng, r, n);
        const bool brute = brute::isomorphic(brute::RankTable::of(a), brute::RankTable::of(b));
        ASSERT_EQ(are_isomorphic(a, b), brute) << "trial " << trial;
        brute ? ++iso : ++non;
    }
    EXPECT_GT(iso, 50);
    EXPECT_GT(non, 50);
}

TEST(CanonicalKey, MarkedElementsAreDistinguished) {
    const auto f7 = named("F7");
    const auto k1 = canonical_key_marked(f7, {1});
    const auto k2 = canonical_key_marked(f7, {7});
    EXPECT_EQ(k1, k2);  // F7 is element-transitive
    const auto s8 = named("S8");
    std::set<CanonicalKey> keys;
    for (auto id : s8.ids()) keys.insert(canonical_key_marked(s8, {id}));
    EXPECT_EQ(keys.size(), 3u);  // tip, cotip, the other six
    EXPECT_NE(canonical_key_marked(f7, {1}), canonical_key(f7));
}

TEST(CanonicalKey, HexRoundTrip) {
    const auto k = canonical_key(named("P9"));
    EXPECT_EQ(CanonicalKey::from_hex(k.hex()), k);
    EXPECT_THROW(CanonicalKey::from_hex("abc"), std::invalid_argument);
}

TEST(CanonicalKey, SymmetricMatroidsDoNotExhaustTheSearch) {
    // AG(4,2) and PG(4,2) have automorphism groups of order 322560 and 9999360
    std::vector<std::uint64_t> ag;
    for (std::uint64_t v = 16; v < 32; ++v) ag.push_back(v);
    const auto m = BinaryMatroid::from_columns(ag);
    EXPECT_EQ(canonical_key(m), canonical_key(m.relabeled()));
    EXPECT_NO_THROW((void)canonical_key(projective_geometry(5)));
    EXPECT_NO_THROW((void)canonical_key(projective_geometry(6)));
}

TEST(SelfDuality, KnownCases) {
    EXPECT_TRUE(is_self_dual(named("AG32")));
    EXPECT_TRUE(is_self_dual(named("S8")));
    EXPECT_FALSE(is_self_dual(named("F7")));
    EXPECT_FALSE(is_self_dual(named("P9")));
}
