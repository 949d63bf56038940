#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include <binmat/families.hpp>
#include <binmat/minor.hpp>

#include "oracles.hpp"

using namespace binmat;

namespace {

std::vector<BinaryMatroid> small_targets() {
    return {named("F7"), named("F7dual"), complete_graph_cycle_matroid(3), named("P9"), named("P9dual"),
            BinaryMatroid::from_columns({1, 2, 3}, "U23")};
}

}  // namespace

TEST(MinorEngine, GenericAgreesWithNaiveEnumerationOnSmallHosts) {
    std::mt19937_64 rng(31);
    std::vector<BinaryMatroid> hosts;
    for (const auto& n : named_list()) {
        const auto m = named(n);
        if (m.size() <= 12) hosts.push_back(m);
    }
    for (int i = 0; i < 60; ++i) hosts.push_back(brute::random_matroid(rng, 3 + rng() % 4, 6 + rng() % 7));
    const auto targets = small_targets();
    std::vector<brute::RankTable> target_tables;
    for (const auto& t : targets) target_tables.push_back(brute::RankTable::of(t));
    int positives = 0;
    for (const auto& h : hosts) {
        const auto th = brute::RankTable::of(h);
        for (std::size_t k = 0; k < targets.size(); ++k) {
            const bool naive = brute::has_minor(th, target_tables[k]);
            const auto w = has_minor(h, targets[k]);
            ASSERT_EQ(w.has_value(), naive) << h.name() << " / " << targets[k].name();
            if (w) {
                ++positives;
                EXPECT_TRUE(verify_witness(h, *w, targets[k]));
            }
        }
    }
    EXPECT_GT(positives, 40);
}

TEST(MinorEngine, OrbitOracleAgreesWithGenericOnRandomRank5Hosts) {
    std::mt19937_64 rng(41);
    const auto& p9s = oracle(Target::p9star);
    const auto& e7 = oracle(Target::e7);
    ASSERT_TRUE(p9s.uses_orbit());
    ASSERT_TRUE(e7.uses_orbit());
    int pos = 0;
    for (int i = 0; i < 200; ++i) {
        const auto h = brute::random_matroid(rng, 5 + rng() % 2, 9 + rng() % 8);
        const auto fast = p9s.find(h);
        const auto slow = p9s.find_generic_only(h);
        ASSERT_EQ(fast.has_value(), slow.has_value()) << i;
        if (fast) {
            ++pos;
            EXPECT_TRUE(verify_witness(h, *fast, p9s.target()));
        }
        ASSERT_EQ(e7.has(h), e7.find_generic_only(h).has_value()) << i;
    }
    EXPECT_GT(pos, 20);
    EXPECT_LT(pos, 200);
}

TEST(MinorEngine, WitnessesAreRejectedWhenWrong) {
    const auto f7 = named("F7");
    MinorWitness w{{1}, {}, "F7"};
    EXPECT_FALSE(verify_witness(f7, w, f7));
    MinorWitness overlap{{1}, {1}, "F7"};
    EXPECT_THROW((void)verify_witness(f7, overlap, f7), std::invalid_argument);
    const auto self = has_minor(f7, f7);
    ASSERT_TRUE(self.has_value());
    EXPECT_TRUE(self->contract.empty());
    EXPECT_TRUE(self->del.empty());
}

TEST(OrbitTable, SizeMatchesStabilizerAndRoundTrips) {
    const auto e7 = target_matroid(Target::e7);
    const auto t = OrbitTable::build(e7.simplify());
    EXPECT_EQ(t.masks().size(), 208320u);  // |GL(5,2)| / |Aut| with |Aut(E7 simplified)| = 48
    const auto dir = std::filesystem::temp_directory_path() / "binmat_orbit_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "e7.orb";
    t.write(path);
    const auto back = OrbitTable::read(path);
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(back->masks(), t.masks());
    EXPECT_EQ(back->target_key(), t.target_key());
    std::filesystem::remove_all(dir);
    for (auto m : t.masks()) {
        EXPECT_TRUE(t.contains_mask(m));
        break;
    }
}

TEST(OrbitTable, RejectsUnsupportedTargets) {
    EXPECT_THROW((void)OrbitTable::build(named("F7")), std::invalid_argument);
}
