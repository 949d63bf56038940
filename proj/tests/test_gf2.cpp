#include <gtest/gtest.h>

#include <random>

#include <binmat/gf2.hpp>

#include "oracles.hpp"

using namespace binmat;

namespace {

Gf2Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
    std::vector<std::string> rows;
    std::bernoulli_distribution bit(0.5);
    for (std::size_t i = 0; i < r; ++i) {
        std::string s;
        for (std::size_t j = 0; j < c; ++j) s.push_back(bit(rng) ? '1' : '0');
        rows.push_back(s);
    }
    return Gf2Matrix::from_rows(rows);
}

std::vector<brute::Column> dense_rows(const Gf2Matrix& m) {
    std::vector<brute::Column> out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        brute::Column row(m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j) row[j] = m.at(i, j) ? 1 : 0;
        out.push_back(row);
    }
    return out;
}

}  // namespace

TEST(Gf2Vector, ParsesBracketedStrings) {
    const auto v = Gf2Vector::from_string("[11000]");
    EXPECT_EQ(v.width(), 5u);
    EXPECT_TRUE(v.get(0));
    EXPECT_TRUE(v.get(1));
    EXPECT_FALSE(v.get(2));
    EXPECT_EQ(v.to_string(), "11000");
    EXPECT_EQ(v.weight(), 2u);
    EXPECT_EQ(v.first_set(), 0u);
}

TEST(Gf2Vector, DotAndXor) {
    auto a = Gf2Vector::from_string("1101");
    const auto b = Gf2Vector::from_string("1011");
    EXPECT_FALSE(a.dot(b));
    a ^= b;
    EXPECT_EQ(a.to_string(), "0110");
    EXPECT_THROW(a ^= Gf2Vector::from_string("101"), std::invalid_argument);
    EXPECT_THROW((void)a.get(4), std::out_of_range);
}

TEST(Gf2Matrix, RankMatchesDenseEliminationOnRandomMatrices) {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t r = 1 + rng() % 9;
        const std::size_t c = 1 + rng() % 12;
        const auto m = random_matrix(rng, r, c);
        EXPECT_EQ(static_cast<int>(rank(m)), brute::dense_rank(dense_rows(m)));
    }
}

TEST(Gf2Matrix, RrefIsReducedAndPreservesRowSpace) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const auto m = random_matrix(rng, 1 + rng() % 7, 1 + rng() % 10);
        const auto res = rref(m);
        for (std::size_t i = 0; i < res.pivots.size(); ++i) {
            for (std::size_t k = 0; k < m.rows(); ++k) EXPECT_EQ(res.matrix.at(k, res.pivots[i]), k == i);
            if (i > 0) {
                EXPECT_LT(res.pivots[i - 1], res.pivots[i]);
            }
        }
        for (std::size_t i = 0; i < m.rows(); ++i) EXPECT_TRUE(in_row_space(res.matrix, m.row(i)));
        for (std::size_t i = 0; i < res.pivots.size(); ++i) EXPECT_TRUE(in_row_space(m, res.matrix.row(i)));
    }
}

TEST(Gf2Matrix, TransposeAndIdentity) {
    const auto m = Gf2Matrix::from_rows({"110", "011"});
    const auto t = m.transpose();
    EXPECT_EQ(t.to_strings(), (std::vector<std::string>{"10", "11", "01"}));
    EXPECT_EQ(rank(Gf2Matrix::identity(6)), 6u);
    EXPECT_EQ(m.column(1).to_string(), "11");
}

TEST(WordBasis, ReduceAndContains) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        WordBasis b;
        std::vector<brute::Column> inserted;
        const std::size_t w = 10;
        for (int k = 0; k < 6; ++k) {
            const std::uint64_t v = rng() & ((1u << w) - 1);
            b.insert(v);
            brute::Column col(w);
            for (std::size_t i = 0; i < w; ++i) col[i] = static_cast<int>((v >> i) & 1u);
            inserted.push_back(col);
        }
        EXPECT_EQ(static_cast<int>(b.rank()), brute::dense_rank(inserted));
        const std::uint64_t probe = rng() & ((1u << w) - 1);
        auto with = inserted;
        brute::Column col(w);
        for (std::size_t i = 0; i < w; ++i) col[i] = static_cast<int>((probe >> i) & 1u);
        with.push_back(col);
        EXPECT_EQ(b.contains(probe), brute::dense_rank(with) == brute::dense_rank(inserted));
        EXPECT_EQ(b.reduce(probe) & b.pivot_mask(), 0u);
    }
}
