#pragma once

// Fixtures and brute-force reference implementations shared by the tests.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "lto/electre.hpp"
#include "lto/generator.hpp"
#include "lto/objective.hpp"
#include "lto/scenario.hpp"

namespace lto::test {

// Seed of the 8-movement acceptance instance: the first generator seed whose
// instance is solvable at MaxBG = 3, max_rnw = 2, contains LAN-only, TOF-only
// and two-operation movements, and whose constrained optimum is strictly
// above the unconstrained one.
inline constexpr std::uint64_t kDeskSeed = 11;
inline constexpr Limits kDeskLimits{3, 2};

inline GeneratorParams desk_params() { return {8, 2, 3, 2, kDeskSeed}; }
inline Scenario desk_scenario() { return generate_scenario(desk_params()).scenario(); }

// Two runways (ids 1 and 2), one terminal with two gates; distances in meters.
inline Airport tiny_airport() {
  Airport ap;
  ap.runways = {Runway{1}, Runway{2}};
  ap.terminals = {Terminal{1, 2, {{1000.0, 2000.0}, {1500.0, 500.0}}}};
  return ap;
}

inline std::vector<AircraftType> tiny_aircraft() {
  return {
      {"small", 1.0, 1, {{1, 1.0}}},
      {"medium", 2.0, 2, {{1, 0.5}, {2, 0.5}}},
  };
}

// A lands at 10:00 and leaves 11:00, B only lands (10:30), C only leaves (09:00).
inline Scenario tiny_scenario() {
  std::vector<Movement> m = {
      {"A", 1, 1, 600, 660},
      {"B", 0, 1, 630, std::nullopt},
      {"C", 1, 1, std::nullopt, 540},
  };
  return Scenario(tiny_airport(), tiny_aircraft(), std::move(m));
}

// Every valid gene of movement i, in a fixed order.
inline std::vector<Gene> all_genes(const Scenario& s, std::size_t i) {
  const auto& m = s.movements()[i];
  const auto& ac = s.aircraft_of(i);
  std::vector<int> lans{0}, tofs{0};
  if (m.has_lan()) {
    lans.clear();
    for (const auto& o : ac.allowed) lans.push_back(o.runway);
  }
  if (m.has_tof()) {
    tofs.clear();
    for (const auto& o : ac.allowed) tofs.push_back(o.runway);
  }
  std::vector<Gene> out;
  for (int l : lans)
    for (int t : tofs)
      for (int g = 1; g <= s.airport().terminal(m.terminal).gates; ++g) out.push_back({l, t, m.terminal, g});
  return out;
}

struct BruteForce {
  bool any_feasible = false;
  double optimum = 0.0;
  std::uint64_t feasible = 0;
  std::uint64_t visited = 0;
};

// Full cartesian enumeration of fixed-terminal assignments.
inline BruteForce brute_force(const Scenario& s, const Limits& limits) {
  std::vector<std::vector<Gene>> options;
  for (std::size_t i = 0; i < s.size(); ++i) options.push_back(all_genes(s, i));
  BruteForce r;
  Chromosome c;
  c.genes.resize(s.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == s.size()) {
      ++r.visited;
      if (!violations(c, s, limits).feasible()) return;
      const double f = pure_fitness(c, s);
      if (!r.any_feasible || f < r.optimum) r.optimum = f;
      r.any_feasible = true;
      ++r.feasible;
      return;
    }
    for (const Gene& g : options[i]) {
      c.genes[i] = g;
      rec(i + 1);
    }
  };
  rec(0);
  return r;
}

inline std::vector<double> normal_sample(std::mt19937_64& gen, std::size_t n, double mu = 0.0, double sigma = 1.0) {
  std::normal_distribution<double> d(mu, sigma);
  std::vector<double> x(n);
  for (auto& v : x) v = d(gen);
  return x;
}

// Equal mixture of N(-3, 1) and N(3, 1).
inline std::vector<double> bimodal_sample(std::mt19937_64& gen, std::size_t n) {
  std::normal_distribution<double> d(0.0, 1.0);
  std::vector<double> x(n);
  for (std::size_t k = 0; k < n; ++k) x[k] = d(gen) + (k % 2 ? 3.0 : -3.0);
  return x;
}

// Exact two-sided Mann-Whitney p by listing every placement of the first
// sample's ranks among n1 + n2 positions (no ties).
inline double mann_whitney_enumerated_p(std::size_t n1, std::size_t n2, double u_observed) {
  const std::size_t n = n1 + n2;
  std::vector<double> us;
  std::vector<int> pick(n, 0);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(n1), 1);
  std::sort(pick.begin(), pick.end());
  do {
    double ranks = 0.0;
    for (std::size_t k = 0; k < n; ++k)
      if (pick[k]) ranks += static_cast<double>(k + 1);
    us.push_back(ranks - static_cast<double>(n1 * (n1 + 1)) / 2.0);
  } while (std::next_permutation(pick.begin(), pick.end()));
  double lower = 0, upper = 0;
  for (double u : us) {
    if (u <= u_observed) ++lower;
    if (u >= u_observed) ++upper;
  }
  return std::min(1.0, 2.0 * std::min(lower, upper) / static_cast<double>(us.size()));
}

// Scratch directory under the system temp dir, emptied on construction.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("lto_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

// Structurally shaped like a chromosome (operations match the movement) but
// with runways drawn from the whole airport and gates from `gate_spread`
// gates of the assigned terminal, so every constraint gets exercised.
inline Chromosome arbitrary_chromosome(const Scenario& s, Rng& rng, int gate_spread) {
  Chromosome c;
  const auto& rw = s.airport().runways;
  for (const auto& m : s.movements()) {
    Gene g;
    g.lan_runway = m.has_lan() ? rw[rng.below(rw.size())].id : 0;
    g.tof_runway = m.has_tof() ? rw[rng.below(rw.size())].id : 0;
    g.terminal = m.terminal;
    g.gate = rng.between(1, std::min(gate_spread, s.airport().terminal(m.terminal).gates));
    c.genes.push_back(g);
  }
  return c;
}

// Seven CHT / mutation variants: fitness (min, median, max, std), BG errors
// (max, median, std), runtime (median, std). Ratings 8 9 4 3 6 7 5 2 1.
inline stats::DecisionMatrix published_decision_matrix() {
  stats::DecisionMatrix m;
  m.alternatives = {"SPM Mutation Increasing", "SPM Mutation Constant", "SPM Mutation Decreasing",
                    "DPM Alpha", "DPM Boltzmann", "DPM Cauchy", "DPM Square root"};
  m.criteria = {{"fitness_min", 8}, {"fitness_median", 9}, {"fitness_max", 4}, {"fitness_std", 3},
                {"bg_max", 6},      {"bg_median", 7},      {"bg_std", 5},      {"time_median", 2},
                {"time_std", 1}};
  m.values = {
      {4220.03, 4237.98, 4218.55, 8.254, 4, 0, 1.040, 9.050, 0.170},
      {4218.81, 4236.55, 4247.67, 8.574, 2, 0, 0.670, 9.070, 0.260},
      {4221.11, 4242.61, 4239.66, 10.926, 4, 0, 0.980, 9.270, 0.760},
      {4217.78, 4239.77, 4233.41, 9.654, 6, 0, 1.210, 9.270, 0.260},
      {4217.20, 4231.06, 4243.34, 9.157, 2, 1, 0.880, 11.020, 0.830},
      {4215.79, 4231.86, 4234.21, 8.289, 4, 0, 0.840, 8.980, 0.080},
      {4217.40, 4235.58, 4240.77, 8.781, 4, 0, 1.040, 9.010, 0.130},
  };
  return m;
}

}  // namespace lto::test
