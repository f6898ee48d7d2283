#include <gtest/gtest.h>

#include <cmath>

#include "lto/electre.hpp"
#include "lto/rng.hpp"
#include "support.hpp"

using namespace lto::stats;

namespace {

DecisionMatrix three_by_two() {
  DecisionMatrix m;
  m.alternatives = {"A", "B", "C"};
  m.criteria = {{"c1", 1.0}, {"c2", 1.0}};
  m.values = {{1, 1}, {2, 3}, {3, 2}};
  return m;
}

}  // namespace

TEST(Electre, HandExample) {
  const auto r = electre(three_by_two());
  EXPECT_DOUBLE_EQ(r.concordance[0][1], 1.0);
  EXPECT_DOUBLE_EQ(r.concordance[1][2], 0.5);
  EXPECT_DOUBLE_EQ(r.concordance[1][0], 0.0);
  EXPECT_DOUBLE_EQ(r.discordance[0][1], 0.0);
  EXPECT_DOUBLE_EQ(r.discordance[1][0], 1.0);
  EXPECT_DOUBLE_EQ(r.discordance[2][1], 0.5);
  EXPECT_DOUBLE_EQ(r.concordance_threshold, 0.5);
  EXPECT_DOUBLE_EQ(r.discordance_threshold, 0.5);
  // B and C outrank each other, so neither dominates.
  EXPECT_EQ(r.dominance, (std::vector<std::vector<int>>{{0, 1, 1}, {0, 0, 0}, {0, 0, 0}}));
  EXPECT_EQ(r.beats, (std::vector<int>{2, 0, 0}));
  EXPECT_EQ(r.overcome, (std::vector<int>{0, 1, 1}));
  EXPECT_EQ(r.ranking, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Electre, MaximizeMirrorsMinimize) {
  auto m = three_by_two();
  for (auto& c : m.criteria) c.direction = Direction::Maximize;
  for (auto& row : m.values)
    for (auto& v : row) v = -v;
  const auto a = electre(three_by_two()), b = electre(m);
  EXPECT_EQ(a.dominance, b.dominance);
  EXPECT_EQ(a.ranking, b.ranking);
}

TEST(Electre, ExplicitThresholds) {
  ElectreOptions o;
  o.concordance_threshold = 0.6;
  o.discordance_threshold = 0.5;
  const auto r = electre(three_by_two(), o);
  EXPECT_EQ(r.dominance, (std::vector<std::vector<int>>{{0, 1, 1}, {0, 0, 0}, {0, 0, 0}}));
  o.discordance_threshold = -1.0;
  EXPECT_EQ(electre(three_by_two(), o).beats, (std::vector<int>{0, 0, 0}));
}

TEST(Electre, ZeroRangeCriterionIsRemoved) {
  auto m = three_by_two();
  m.criteria.push_back({"flat", 50.0});
  for (auto& row : m.values) row.push_back(7.0);
  const auto r = electre(m);
  EXPECT_EQ(r.removed_criteria, (std::vector<std::string>{"flat"}));
  const auto base = electre(three_by_two());
  EXPECT_EQ(r.concordance, base.concordance);
  EXPECT_EQ(r.dominance, base.dominance);
}

TEST(Electre, IdenticalRowsNeverDominate) {
  DecisionMatrix m;
  m.alternatives = {"x", "y", "z"};
  m.criteria = {{"a", 1}, {"b", 2}};
  m.values = {{1, 5}, {1, 5}, {2, 6}};
  const auto r = electre(m);
  EXPECT_EQ(r.dominance[0][1], 0);
  EXPECT_EQ(r.dominance[1][0], 0);
  EXPECT_EQ(r.ranking.back(), 2u);
}

TEST(Electre, RejectsMalformedInput) {
  auto m = three_by_two();
  m.values[1].pop_back();
  EXPECT_THROW(electre(m), std::invalid_argument);
  m = three_by_two();
  m.criteria[0].weight = 0.0;
  EXPECT_THROW(electre(m), std::invalid_argument);
  m = three_by_two();
  m.alternatives.resize(1);
  m.values.resize(1);
  EXPECT_THROW(electre(m), std::invalid_argument);
  m = three_by_two();
  m.values = {{1, 1}, {1, 1}, {1, 1}};
  EXPECT_THROW(electre(m), std::invalid_argument);
}

TEST(Electre, PropertiesOnRandomMatrices) {
  lto::Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    DecisionMatrix m;
    const std::size_t na = 2 + rng.below(6), nc = 1 + rng.below(5);
    for (std::size_t a = 0; a < na; ++a) m.alternatives.push_back("a" + std::to_string(a));
    for (std::size_t c = 0; c < nc; ++c)
      m.criteria.push_back({"c" + std::to_string(c), 0.5 + rng.uniform(),
                            rng.uniform() < 0.5 ? Direction::Minimize : Direction::Maximize});
    m.values.assign(na, std::vector<double>(nc));
    for (auto& row : m.values)
      for (auto& v : row) v = static_cast<double>(rng.between(0, 9));
    ElectreResult r;
    try {
      r = electre(m);
    } catch (const std::invalid_argument&) {
      continue;  // all columns flat
    }
    for (std::size_t a = 0; a < na; ++a) {
      EXPECT_EQ(r.dominance[a][a], 0);
      for (std::size_t b = 0; b < na; ++b) EXPECT_FALSE(r.dominance[a][b] && r.dominance[b][a]);
    }
    // Positive rescaling and shifting of one column changes nothing.
    auto scaled = m;
    const std::size_t j = rng.below(nc);
    const double k = std::ldexp(1.0, rng.between(-4, 6));  // exact in binary
    for (auto& row : scaled.values) row[j] = row[j] * k + 3.0;
    const auto s = electre(scaled);
    EXPECT_EQ(s.dominance, r.dominance);
    EXPECT_EQ(s.ranking, r.ranking);
  }
}

TEST(Electre, PublishedMatrixRanksDpmCauchyFirst) {
  const auto m = lto::test::published_decision_matrix();
  const auto r = electre(m);
  EXPECT_EQ(m.alternatives[r.ranking.front()], "DPM Cauchy");
  EXPECT_EQ(r.overcome[5], 0);
}
