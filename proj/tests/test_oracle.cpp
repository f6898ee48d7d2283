#include <gtest/gtest.h>

#include "lto/oracle.hpp"
#include "support.hpp"

using namespace lto;

TEST(Enumerate, MatchesObjectiveOnArbitraryChromosomes) {
  for (std::uint64_t inst = 1; inst <= 5; ++inst) {
    const Scenario s = generate_scenario({10, 2, 3, 3, inst}).scenario();
    Rng rng(inst * 101);
    for (int k = 0; k < 400; ++k) {
      const Limits lim{1 + static_cast<int>(rng.below(3)), 1 + static_cast<int>(rng.below(3))};
      const auto c = test::arbitrary_chromosome(s, rng, 1 + static_cast<int>(rng.below(3)));
      ASSERT_EQ(enumerate_constraints(c, s, lim), violations(c, s, lim)) << "instance " << inst << " draw " << k;
    }
  }
}

TEST(Enumerate, RefusesLargeChromosomes) {
  const Scenario s = generate_scenario({13, 2, 3, 2, 1}).scenario();
  Rng rng(1);
  EXPECT_THROW(enumerate_constraints(random_chromosome(s, rng), s, Limits{}), std::invalid_argument);
}

TEST(ExactSolve, DeskInstanceMatchesFullEnumeration) {
  const Scenario s = test::desk_scenario();
  const auto brute = test::brute_force(s, test::kDeskLimits);
  const auto r = exact_solve(s, test::kDeskLimits);
  ASSERT_EQ(r.status, OracleStatus::Optimal);
  ASSERT_TRUE(brute.any_feasible);
  EXPECT_NEAR(r.optimum, brute.optimum, 1e-9);
  EXPECT_NEAR(pure_fitness(r.best, s), r.optimum, 1e-9);
  EXPECT_TRUE(violations(r.best, s, test::kDeskLimits).feasible());

  OracleOptions all;
  all.count_feasible = true;
  const auto counted = exact_solve(s, test::kDeskLimits, all);
  ASSERT_TRUE(counted.feasible_count.has_value());
  EXPECT_EQ(*counted.feasible_count, brute.feasible);
  EXPECT_NEAR(counted.optimum, brute.optimum, 1e-9);
  // Bounding cuts the search below the full tree.
  EXPECT_LT(r.nodes, counted.nodes);
}

TEST(ExactSolve, RandomSmallInstancesMatchEnumeration) {
  for (std::uint64_t inst = 1; inst <= 25; ++inst) {
    Rng pick(inst);
    const GeneratorParams p{5 + static_cast<int>(pick.below(3)), 1 + static_cast<int>(pick.below(2)),
                            1 + static_cast<int>(pick.below(3)), 1 + static_cast<int>(pick.below(3)), inst};
    const Scenario s = generate_scenario(p).scenario();
    const Limits lim{1 + static_cast<int>(pick.below(3)), 1 + static_cast<int>(pick.below(3))};
    const auto brute = test::brute_force(s, lim);
    const auto r = exact_solve(s, lim);
    if (!brute.any_feasible) {
      EXPECT_EQ(r.status, OracleStatus::Infeasible) << "instance " << inst;
      continue;
    }
    ASSERT_EQ(r.status, OracleStatus::Optimal) << "instance " << inst;
    EXPECT_NEAR(r.optimum, brute.optimum, 1e-9) << "instance " << inst;
  }
}

TEST(ExactSolve, SimultaneousOverlapOnOneGateIsInfeasible) {
  Airport ap;
  ap.runways = {Runway{1}};
  ap.terminals = {Terminal{1, 1, {{800.0}}}};
  std::vector<AircraftType> ac = {{"a", 1.0, 1, {{1, 1.0}}}};
  const Scenario s(ap, ac, {{"A", 0, 1, 600, 700}, {"B", 0, 1, 610, 710}, {"C", 0, 1, 620, 720}});
  const auto r = exact_solve(s, Limits{10, 10});
  EXPECT_EQ(r.status, OracleStatus::Infeasible);
  EXPECT_FALSE(test::brute_force(s, Limits{10, 10}).any_feasible);
}

TEST(ExactSolve, SeparatedMovementsShareAGate) {
  Airport ap;
  ap.runways = {Runway{1}};
  ap.terminals = {Terminal{1, 1, {{800.0}}}};
  std::vector<AircraftType> ac = {{"a", 1.0, 1, {{1, 1.0}}}};
  const Scenario s(ap, ac, {{"A", 0, 1, 600, 700}, {"B", 0, 1, 710, 800}});
  const auto r = exact_solve(s, Limits{10, 10});
  ASSERT_EQ(r.status, OracleStatus::Optimal);
  EXPECT_NEAR(r.optimum, 2 * (1600.0 / 30.0 * 0.06 + 4.0 + 2.0 + 2.9), 1e-9);
}

TEST(ExactSolve, BudgetExceeded) {
  const Scenario s = test::desk_scenario();
  OracleOptions o;
  o.budget = 5;
  const auto r = exact_solve(s, test::kDeskLimits, o);
  EXPECT_EQ(r.status, OracleStatus::BudgetExceeded);
  EXPECT_EQ(to_string(r.status), "budget_exceeded");
}
