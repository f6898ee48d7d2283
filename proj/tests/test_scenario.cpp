#include <gtest/gtest.h>

#include <map>

#include "lto/scenario.hpp"
#include "support.hpp"

using namespace lto;

TEST(Gene, SplitsDocumentedExamples) {
  EXPECT_EQ(split_gene(31612), (Gene{3, 1, 6, 12}));
  EXPECT_EQ(split_gene(20405), (Gene{2, 0, 4, 5}));
  EXPECT_EQ(split_gene(1206), (Gene{0, 1, 2, 6}));
}

TEST(Gene, EncodesDocumentedExamples) {
  EXPECT_EQ(encode_gene({3, 1, 6, 12}), 31612);
  EXPECT_EQ(encode_gene({2, 0, 4, 5}), 20405);
  EXPECT_EQ(encode_gene({0, 1, 2, 6}), 1206);
}

TEST(Gene, RejectsMalformedValues) {
  EXPECT_THROW(split_gene(0), std::invalid_argument);       // no operation
  EXPECT_THROW(split_gene(11001), std::invalid_argument);   // terminal 0
  EXPECT_THROW(split_gene(11100), std::invalid_argument);   // gate 0
  EXPECT_THROW(split_gene(-1), std::invalid_argument);
  EXPECT_THROW(split_gene(100000), std::invalid_argument);
}

TEST(Gene, RoundTripsEveryDigitCombination) {
  int accepted = 0;
  for (int v = 0; v <= 99999; ++v) {
    Gene g;
    try {
      g = split_gene(v);
    } catch (const std::invalid_argument&) {
      continue;
    }
    ASSERT_EQ(encode_gene(g), v);
    ++accepted;
  }
  // (10*10 - 1) runway pairs x 9 terminals x 99 gates
  EXPECT_EQ(accepted, 99 * 9 * 99);
}

TEST(Gene, DecodeChecksScenarioInvariants) {
  const Scenario s = test::tiny_scenario();
  EXPECT_EQ(decode_gene(11101, s, 0), (Gene{1, 1, 1, 1}));
  EXPECT_THROW(decode_gene(1101, s, 0), std::invalid_argument);   // A needs a landing runway
  EXPECT_THROW(decode_gene(20101, s, 1), std::invalid_argument);  // small aircraft on runway 2
  EXPECT_THROW(decode_gene(11103, s, 0), std::invalid_argument);  // gate 3 does not exist
  EXPECT_THROW(decode_gene(11201, s, 0), std::invalid_argument);  // other terminal
}

TEST(Sequence, InterleavesOverlappingMovements) {
  std::vector<Movement> m = {{"A", 0, 1, 600, 720}, {"B", 0, 1, 660, 780}};
  const auto seq = sequence_events(m);
  EXPECT_EQ(seq[0], (EventRanks{1, 3}));
  EXPECT_EQ(seq[1], (EventRanks{2, 4}));
}

TEST(Sequence, AbsentOperationIsZero) {
  std::vector<Movement> m = {{"A", 0, 1, std::nullopt, 600}};
  EXPECT_EQ(sequence_events(m)[0], (EventRanks{0, 1}));
}

TEST(Sequence, TiesBreakById) {
  std::vector<Movement> m = {{"B", 0, 1, 600, std::nullopt}, {"A", 0, 1, 600, std::nullopt}};
  const auto seq = sequence_events(m);
  EXPECT_EQ(seq[1].landing, 1);
  EXPECT_EQ(seq[0].landing, 2);
}

TEST(Sequence, LandingPrecedesTakeOffAtSameMinuteAndId) {
  std::vector<Movement> m = {{"A", 0, 1, std::nullopt, 600}, {"A2", 0, 1, 600, 700}};
  const auto seq = sequence_events(m);
  EXPECT_EQ(seq[0].takeoff, 1);  // "A" < "A2"
  EXPECT_EQ(seq[1].landing, 2);
}

TEST(Sequence, RanksFormAPermutation) {
  const Scenario s = test::desk_scenario();
  std::vector<int> ranks;
  for (const auto& r : s.sequence()) {
    if (r.landing) ranks.push_back(r.landing);
    if (r.takeoff) ranks.push_back(r.takeoff);
  }
  std::sort(ranks.begin(), ranks.end());
  for (std::size_t k = 0; k < ranks.size(); ++k) EXPECT_EQ(ranks[k], static_cast<int>(k + 1));
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s.sequence()[i].landing && s.sequence()[i].takeoff) {
      EXPECT_LT(s.sequence()[i].landing, s.sequence()[i].takeoff);
    }
}

TEST(Scenario, ClassifiesMovementKinds) {
  const Scenario s = test::tiny_scenario();
  ASSERT_EQ(s.size(), 3u);
  EXPECT_TRUE(s.movements()[0].has_lan() && s.movements()[0].has_tof());
  EXPECT_TRUE(s.movements()[1].has_lan() && !s.movements()[1].has_tof());
  EXPECT_TRUE(!s.movements()[2].has_lan() && s.movements()[2].has_tof());
}

TEST(Scenario, RejectsInvalidInstances) {
  auto ap = test::tiny_airport();
  auto ac = test::tiny_aircraft();
  EXPECT_THROW(Scenario(ap, ac, {{"A", 0, 1, 600, 600}}), InputError);
  EXPECT_THROW(Scenario(ap, ac, {{"A", 0, 1, std::nullopt, std::nullopt}}), InputError);
  EXPECT_THROW(Scenario(ap, ac, {{"A", 0, 2, 600, std::nullopt}}), InputError);
  EXPECT_THROW(Scenario(ap, ac, {{"A", 5, 1, 600, std::nullopt}}), InputError);
  EXPECT_THROW(Scenario(ap, ac, {{"A", 0, 1, 1440, std::nullopt}}), InputError);

  auto bad_ac = ac;
  bad_ac[0].allowed = {{3, 1.0}};
  EXPECT_THROW(Scenario(ap, bad_ac, {}), InputError);
  bad_ac = ac;
  bad_ac[0].pollution_factor = 0.0;
  EXPECT_THROW(Scenario(ap, bad_ac, {}), InputError);
}

TEST(Airport, ValidatesEncodingLimits) {
  auto ap = test::tiny_airport();
  ap.terminals[0].gates = 100;
  ap.terminals[0].distance.assign(100, {1.0, 1.0});
  EXPECT_THROW(ap.validate(), InputError);

  ap = test::tiny_airport();
  ap.runways.push_back(Runway{10});
  for (auto& row : ap.terminals[0].distance) row.push_back(1.0);
  EXPECT_THROW(ap.validate(), InputError);

  ap = test::tiny_airport();
  ap.terminals[0].distance[1].pop_back();
  EXPECT_THROW(ap.validate(), InputError);

  ap = test::tiny_airport();
  ap.runways[1].id = 1;
  EXPECT_THROW(ap.validate(), InputError);
}

TEST(Airport, AcceptsNonContiguousIds) {
  Airport ap;
  ap.runways = {Runway{3}, Runway{7}};
  ap.terminals = {Terminal{4, 1, {{100.0, 200.0}}}};
  EXPECT_NO_THROW(ap.validate());
  EXPECT_EQ(ap.distance(4, 1, 7), 200.0);
}

TEST(RandomGene, RespectsAllowedRunwaysAndStructure) {
  const Scenario s = test::desk_scenario();
  Rng rng(5);
  for (int k = 0; k < 2000; ++k) {
    const auto c = random_chromosome(s, rng);
    for (std::size_t i = 0; i < s.size(); ++i) ASSERT_EQ(gene_problem(c.genes[i], s, i), "");
  }
}

TEST(RandomGene, TypologyThreeAlwaysUsesRunwayTwo) {
  const Scenario s = test::desk_scenario();
  Rng rng(9);
  bool seen = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.aircraft_of(i).typology != 3) continue;
    seen = true;
    for (int k = 0; k < 200; ++k) {
      const Gene g = random_gene(s, i, rng);
      ASSERT_TRUE(g.lan_runway == 0 || g.lan_runway == 2);
      ASSERT_TRUE(g.tof_runway == 0 || g.tof_runway == 2);
    }
  }
  EXPECT_TRUE(seen);
}

TEST(RandomGene, LandingOnlyNeverTakesOff) {
  const Scenario s = test::tiny_scenario();
  Rng rng(1);
  for (int k = 0; k < 1000; ++k) {
    EXPECT_EQ(random_gene(s, 1, rng).tof_runway, 0);
    EXPECT_EQ(random_gene(s, 2, rng).lan_runway, 0);
  }
}

TEST(RandomGene, RunwayFrequenciesFollowWeights) {
  // Four-runway typology 1: runways 1 and 4 at 50% each.
  const auto g = generate_scenario({1, 1, 1, 4, 3});
  AircraftType t1 = g.catalog.aircraft[0];
  ASSERT_EQ(t1.typology, 1);
  Rng rng(2024);
  const int n = 100000;
  int ones = 0, fours = 0;
  for (int k = 0; k < n; ++k) {
    const int r = sample_runway(t1, rng);
    ones += r == 1;
    fours += r == 4;
  }
  EXPECT_EQ(ones + fours, n);
  EXPECT_NEAR(static_cast<double>(ones) / n, 0.50, 0.01);

  AircraftType t2 = g.catalog.aircraft[1];
  ASSERT_EQ(t2.typology, 2);
  std::map<int, int> hist;
  for (int k = 0; k < n; ++k) ++hist[sample_runway(t2, rng)];
  EXPECT_NEAR(hist[1] / double(n), 0.25, 0.01);
  EXPECT_NEAR(hist[2] / double(n), 0.25, 0.01);
  EXPECT_NEAR(hist[3] / double(n), 0.50, 0.01);
}

TEST(RandomGene, FreeModeSamplesOtherTerminals) {
  const Scenario s = generate_scenario({6, 3, 4, 2, 8}).scenario();
  Rng rng(4);
  std::map<int, int> seen;
  for (int k = 0; k < 3000; ++k) {
    const Gene g = random_gene(s, 0, rng, TerminalMode::Free);
    ASSERT_EQ(gene_problem(g, s, 0, TerminalMode::Free), "");
    ++seen[g.terminal];
  }
  EXPECT_EQ(seen.size(), 3u);
}

TEST(Rng, SequenceIsStableAcrossRuns) {
  Rng a(42), b(42);
  for (int k = 0; k < 100; ++k) ASSERT_EQ(a.next(), b.next());
  Rng c(42);
  std::mt19937_64 ref(42);
  EXPECT_EQ(c.next(), ref());
}

TEST(Rng, BelowStaysInRangeAndIsRoughlyUniform) {
  Rng rng(7);
  std::array<int, 6> h{};
  for (int k = 0; k < 60000; ++k) ++h[rng.below(6)];
  for (int v : h) EXPECT_NEAR(v, 10000, 400);
  for (int k = 0; k < 1000; ++k) {
    const int x = rng.between(-2, 2);
    ASSERT_GE(x, -2);
    ASSERT_LE(x, 2);
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}
