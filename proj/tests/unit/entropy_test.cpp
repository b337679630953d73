#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "entropy_oracle.hpp"
#include "fixtures.hpp"
#include "infodd/entropy.hpp"

using namespace infodd;
namespace oracle = infodd::testing::oracle;

namespace {

oracle::RawRows raw(const DecisionTable& t) {
  oracle::RawRows rows;
  for (const auto& r : t.rows()) {
    auto row = r.values;
    row.push_back(r.output);
    rows.push_back(std::move(row));
  }
  return rows;
}

// Recomputed by the oracle from the 19 rows of the cars table.
constexpr double kCarsH = 2.8397755396455082;
constexpr double kCarsConditional[8] = {1.8417746557732087, 1.8344606827512286, 1.5134151316928141,
                                        2.258558388591751,  2.0523009715626824, 1.3962802638410953,
                                        1.1190065752021074, 1.310347208012619};

}  // namespace

TEST(Entropy, UniformAndDegenerate) {
  EXPECT_DOUBLE_EQ(entropy(std::vector<double>{0.5, 0.5}), 1.0);
  EXPECT_DOUBLE_EQ(entropy(std::vector<double>{0.25, 0.25, 0.25, 0.25}), 2.0);
  EXPECT_EQ(entropy(std::vector<double>{1.0, 0.0, 0.0}), 0.0);
  EXPECT_EQ(entropy(std::vector<double>{}), 0.0);
}

TEST(Entropy, PublishedDistributionRoundsTo264) {
  // The published example distribution; it sums to 17/19, not 1.
  const std::vector<double> p = {4.0 / 19, 2.0 / 19, 1.0 / 19, 1.0 / 19, 2.0 / 19, 1.0 / 19, 2.0 / 19, 4.0 / 19};
  EXPECT_NEAR(entropy(p), 2.64, 0.005);
}

TEST(Entropy, CarsOutputDistribution) {
  const Distribution d = output_distribution(infodd::testing::cars_table());
  const std::vector<double> expected = {4.0 / 19, 2.0 / 19, 3.0 / 19, 1.0 / 19, 2.0 / 19, 1.0 / 19, 2.0 / 19, 4.0 / 19};
  ASSERT_EQ(d.probabilities.size(), expected.size());
  for (std::size_t b = 0; b < expected.size(); ++b) EXPECT_DOUBLE_EQ(d.probabilities[b], expected[b]);
}

TEST(Entropy, CarsMatchesFrozenOracleValues) {
  const DecisionTable t = infodd::testing::cars_table();
  EXPECT_NEAR(entropy(output_distribution(t)), kCarsH, 1e-12);
  for (std::size_t v = 0; v < 8; ++v) EXPECT_NEAR(conditional_entropy(t, v), kCarsConditional[v], 1e-12) << "x" << v + 1;
}

TEST(Entropy, CarsRankingPutsPriceFirst) {
  const EntropyReport r = rank_variables(infodd::testing::cars_table());
  EXPECT_EQ(r.ranking, (std::vector<std::size_t>{6, 7, 5, 2, 1, 0, 4, 3}));
  EXPECT_NEAR(r.h_f, kCarsH, 1e-12);
  EXPECT_EQ(r.conditional.size(), 8u);
}

TEST(Entropy, ConditioningNeverIncreasesEntropy) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const DecisionTable t = infodd::testing::random_table(rng, 1 + trial % 6, 4, 1 + trial % 5, 1 + trial % 40);
    const double h = entropy(output_distribution(t));
    for (std::size_t v = 0; v < t.schema().size(); ++v) EXPECT_LE(conditional_entropy(t, v), h + 1e-12);
  }
}

TEST(Entropy, AgreesWithOracleOnRandomTables) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const DecisionTable t = infodd::testing::random_table(rng, 1 + trial % 6, 4, 2 + trial % 4, 1 + trial % 60);
    const auto rows = raw(t);
    EXPECT_NEAR(entropy(output_distribution(t)), static_cast<double>(oracle::output_entropy(rows)), 1e-9);
    std::vector<std::size_t> all;
    for (std::size_t v = 0; v < t.schema().size(); ++v) {
      all.push_back(v);
      EXPECT_NEAR(conditional_entropy(t, v), static_cast<double>(oracle::conditional_entropy(rows, v)), 1e-9);
    }
    EXPECT_EQ(rank_variables(t).ranking, oracle::ranking(rows, all, kEntropyTieTolerance));
  }
}

TEST(Entropy, TiesBreakByLowestIndex) {
  // x_1 and x_2 are copies of each other; x_3 is noise.
  auto schema = std::make_shared<const TableSchema>(TableSchema::anonymous({2, 2, 2}, 2));
  const DecisionTable t(schema, {{{0, 0, 0}, 0}, {{1, 1, 0}, 1}, {{0, 0, 1}, 0}, {{1, 1, 1}, 1}});
  EXPECT_EQ(rank_variables(t).ranking, (std::vector<std::size_t>{0, 1, 2}));
  const std::vector<std::size_t> reversed = {2, 1, 0};
  EXPECT_EQ(rank_variables(t, reversed).ranking, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Entropy, RankingIsDeterministic) {
  const DecisionTable t = infodd::testing::monks_test_table(2);
  const auto first = rank_variables(t).ranking;
  for (int i = 0; i < 5; ++i) EXPECT_EQ(rank_variables(t).ranking, first);
}

TEST(Entropy, EmptyCandidateListIsAnError) {
  EXPECT_THROW(rank_variables(infodd::testing::cars_table(), std::span<const std::size_t>{}), std::invalid_argument);
}

TEST(Entropy, EmptyCofactorHasNoDistribution) {
  const DecisionTable t = infodd::testing::cars_table();
  const DecisionTable none = t.restrict(7, 1).restrict(7, 0);
  EXPECT_THROW(output_distribution(none), DataError);
}
