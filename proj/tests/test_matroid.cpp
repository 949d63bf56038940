#include <gtest/gtest.h>

#include <random>

#include <binmat/canonical.hpp>
#include <binmat/families.hpp>
#include <binmat/matroid.hpp>

#include "oracles.hpp"

using namespace binmat;

TEST(Matroid, StandardFormHasIdentityOnGreedyBasis) {
    const auto m = BinaryMatroid::from_columns({0b011, 0b110, 0b101, 0b100, 0b001});
    EXPECT_EQ(m.rank(), 3u);
    ASSERT_EQ(m.pivots().size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(m.columns()[m.pivots()[i]], std::uint64_t{1} << i);
    EXPECT_EQ(m.pivots(), (std::vector<std::size_t>{0, 1, 3}));
}

TEST(Matroid, RankFunctionMatchesDenseOracle) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const auto m = brute::random_matroid(rng, 2 + rng() % 5, 3 + rng() % 8);
        const auto t = brute::RankTable::of(m);
        for (std::uint32_t s = 0; s < t.rk.size(); ++s) ASSERT_EQ(static_cast<int>(m.rank_of_mask(s)), t.rk[s]);
    }
}

TEST(Matroid, DualityIsAnInvolutionAndRowSpacesAreOrthogonal) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        const auto m = brute::random_matroid(rng, 2 + rng() % 5, 3 + rng() % 9);
        const auto d = m.dual();
        EXPECT_EQ(d.rank(), m.corank());
        EXPECT_EQ(d.ids(), m.ids());
        EXPECT_EQ(d.dual(), m);
        // every row of M is orthogonal to every row of M*
        for (std::size_t i = 0; i < m.rank(); ++i) {
            for (std::size_t k = 0; k < d.rank(); ++k) {
                int dot = 0;
                for (std::size_t j = 0; j < m.size(); ++j) dot ^= static_cast<int>(((m.columns()[j] >> i) & 1u) & ((d.columns()[j] >> k) & 1u));
                EXPECT_EQ(dot, 0);
            }
        }
        // r*(X) = |X| + r(E - X) - r(E)
        const auto tm = brute::RankTable::of(m);
        const auto td = brute::RankTable::of(d);
        const std::uint32_t all = (1u << m.size()) - 1;
        for (std::uint32_t x = 0; x <= all; ++x) {
            ASSERT_EQ(td.rk[x], __builtin_popcount(x) + tm.rk[all & ~x] - tm.rank());
        }
    }
}

TEST(Matroid, MinorsCommuteWithDuality) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 150; ++trial) {
        const auto m = brute::random_matroid(rng, 2 + rng() % 5, 4 + rng() % 8);
        ElementSet c;
        ElementSet d;
        for (auto id : m.ids()) {
            const auto roll = rng() % 4;
            if (roll == 0) c.insert(id);
            if (roll == 1) d.insert(id);
        }
        const auto lhs = m.minor(c, d).dual();
        const auto rhs = m.dual().minor(d, c);
        EXPECT_EQ(lhs, rhs);
        // rank of contraction: r_{M/C}(X) = r(X u C) - r(C)
        const auto mc = m.contract(c);
        for (auto id : mc.ids()) {
            ElementSet x{id};
            ElementSet xc = c;
            xc.insert(id);
            EXPECT_EQ(mc.rank_of(x), m.rank_of(xc) - m.rank_of(c));
        }
    }
    const auto f7 = named("F7");
    EXPECT_THROW((void)f7.minor({1}, {1}), std::invalid_argument);
}

TEST(Matroid, ExtensionAndCoextensionMoves) {
    const auto p9 = named("P9");
    const auto e = p9.extend(parse_column("1110"));
    EXPECT_EQ(e.size(), 10u);
    EXPECT_EQ(e.rank(), 4u);
    EXPECT_EQ(e.ids().back(), p9.max_id() + 1);
    EXPECT_EQ(e.delete_elements({e.ids().back()}), p9);
    const auto co = p9.coextend(p9.row_over_nonpivots(parse_column("00011")));
    EXPECT_EQ(co.rank(), 5u);
    EXPECT_EQ(co.size(), 10u);
    EXPECT_TRUE(are_isomorphic(co.contract({co.max_id()}), p9));
    EXPECT_TRUE(are_isomorphic(co, named("alpha5")));
}

TEST(Matroid, SimpleCosimpleAndCircuits) {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 80; ++trial) {
        const auto m = brute::random_matroid(rng, 2 + rng() % 4, 3 + rng() % 8);
        const auto t = brute::RankTable::of(m);
        bool simple = true;
        for (std::uint32_t s = 1; s < t.rk.size(); ++s) {
            if (__builtin_popcount(s) <= 2 && t.rk[s] < __builtin_popcount(s)) simple = false;
        }
        EXPECT_EQ(m.is_simple(), simple);
        const auto tri = m.small_circuit_masks(3);
        std::size_t expected = 0;
        for (std::uint32_t s = 1; s < t.rk.size(); ++s) {
            const int k = __builtin_popcount(s);
            if (k > 3 || t.rk[s] != k - 1) continue;
            bool minimal = true;
            for (int j = 0; j < t.n; ++j) {
                if (((s >> j) & 1u) && t.rk[s & ~(1u << j)] != k - 1) minimal = false;
            }
            if (minimal) ++expected;
        }
        EXPECT_EQ(tri.size(), expected);
    }
    EXPECT_TRUE(named("P9dual").dual().all_circuits_even() == named("P9").all_circuits_even());
    EXPECT_FALSE(named("F7").all_circuits_even());
    EXPECT_TRUE(named("AG32").all_circuits_even());
}

TEST(Matroid, FromStandardRowsAndColumnStrings) {
    const auto f7 = BinaryMatroid::from_standard_rows({"011", "101", "110"});
    EXPECT_EQ(f7.size(), 6u);
    EXPECT_EQ(column_string(parse_column("[1010]"), 4), "1010");
    EXPECT_THROW(BinaryMatroid::from_columns({1, 2}, std::vector<ElementId>{1, 1}), std::invalid_argument);
}
