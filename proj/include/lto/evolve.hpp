#pragma once

// Genetic algorithm engine: initialization, tournament selection, crossover,
// scheduled uniform mutation, replacement and the generation loop.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lto/objective.hpp"
#include "lto/penalty.hpp"
#include "lto/rng.hpp"
#include "lto/scenario.hpp"

namespace lto {

enum class CrossoverKind { OnePoint, TwoPoint, Uniform };
enum class MutationTrend { Decreasing, Constant, Increasing };
enum class ScheduleMode { Linear, ImprovementGated };
enum class Replacement { BestParentChild, GenerationalElitist };

struct MutationSchedule {
  MutationTrend trend = MutationTrend::Decreasing;
  double start = 0.006;
  double end = 0.001;
  ScheduleMode mode = ScheduleMode::Linear;
  int check_interval = 10;
  double improvement_threshold = 0.001;  // relative best-total improvement

  void validate() const {
    auto in_range = [](double r) { return r > 0.0 && r < 1.0; };
    if (!in_range(start) || !in_range(end)) throw std::invalid_argument("mutation rates must be in (0, 1)");
    if (trend == MutationTrend::Decreasing && start < end)
      throw std::invalid_argument("decreasing mutation needs start >= end");
    if (trend == MutationTrend::Increasing && start > end)
      throw std::invalid_argument("increasing mutation needs start <= end");
    if (check_interval < 1) throw std::invalid_argument("mutation check interval must be >= 1");
    if (!(improvement_threshold >= 0.0)) throw std::invalid_argument("improvement threshold must be >= 0");
  }
  double final_rate() const { return trend == MutationTrend::Constant ? start : end; }
};

struct GaConfig {
  int population_size = 150;
  int generations = 1500;
  Limits limits;
  ChtConfig cht;
  int tournament_size = 2;
  double p_worst = 0.20;
  CrossoverKind crossover = CrossoverKind::OnePoint;
  double crossover_probability = 1.0;
  MutationSchedule mutation;
  Replacement replacement = Replacement::BestParentChild;
  bool elitism = false;
  TerminalMode terminal_mode = TerminalMode::Fixed;
  std::uint64_t seed = 1;

  bool elitism_active() const { return elitism || replacement == Replacement::GenerationalElitist; }

  void validate() const {
    if (population_size < 2 || population_size % 2 != 0)
      throw std::invalid_argument("population size must be even and >= 2");
    if (generations < 1) throw std::invalid_argument("generations must be >= 1");
    if (tournament_size < 2) throw std::invalid_argument("tournament size must be >= 2");
    if (!(p_worst >= 0.0 && p_worst <= 1.0)) throw std::invalid_argument("p_worst must be in [0, 1]");
    if (!(crossover_probability >= 0.0 && crossover_probability <= 1.0))
      throw std::invalid_argument("crossover probability must be in [0, 1]");
    limits.validate();
    cht.validate();
    mutation.validate();
  }
};

struct GenerationTrace {
  int generation = 0;
  double best_total = 0.0;
  double mean_total = 0.0;
  double worst_total = 0.0;
  double best_pure = 0.0;
  long best_bg = 0;
  long best_rnw = 0;
  double mutation_rate = 0.0;
  double penalty_factor = 0.0;
  bool operator==(const GenerationTrace&) const = default;
};

struct RunResult {
  Chromosome best;
  FitnessReport best_report;
  std::vector<GenerationTrace> trace;
  int first_feasible_generation = 0;  // 0 when the best never reached zero violations
  double seconds = 0.0;
  std::uint64_t seed = 0;
};

// --- operators --------------------------------------------------------------

inline std::vector<Chromosome> init_population(const Scenario& s, const GaConfig& cfg, Rng& rng) {
  std::vector<Chromosome> pop;
  pop.reserve(static_cast<std::size_t>(cfg.population_size));
  for (int k = 0; k < cfg.population_size; ++k) pop.push_back(random_chromosome(s, rng, cfg.terminal_mode));
  return pop;
}

// Draws `size` distinct individuals (skipping `exclude`) and returns the index
// of the lowest total, or with probability p_worst the highest. Ties go to the
// lower population index.
inline std::size_t tournament_select(std::span<const double> totals, int size, double p_worst, Rng& rng,
                                     std::optional<std::size_t> exclude = std::nullopt) {
  const std::size_t available = totals.size() - (exclude && *exclude < totals.size() ? 1 : 0);
  if (available == 0) throw std::invalid_argument("tournament over an empty population");
  const std::size_t want = std::min<std::size_t>(static_cast<std::size_t>(size), available);
  std::array<std::size_t, 16> small{};
  std::vector<std::size_t> large;
  std::span<std::size_t> picked;
  if (want <= small.size()) {
    picked = std::span<std::size_t>(small.data(), want);
  } else {
    large.resize(want);
    picked = large;
  }
  std::size_t n = 0;
  while (n < want) {
    const auto idx = static_cast<std::size_t>(rng.below(totals.size()));
    if (exclude && idx == *exclude) continue;
    if (std::find(picked.begin(), picked.begin() + static_cast<std::ptrdiff_t>(n), idx) !=
        picked.begin() + static_cast<std::ptrdiff_t>(n))
      continue;
    picked[n++] = idx;
  }
  const bool pick_worst = rng.uniform() < p_worst;
  std::size_t chosen = picked[0];
  for (std::size_t idx : picked) {
    const double a = totals[idx], b = totals[chosen];
    const bool better = pick_worst ? (a > b || (a == b && idx < chosen)) : (a < b || (a == b && idx < chosen));
    if (better) chosen = idx;
  }
  return chosen;
}

// Swaps genes [from, to) between the parents.
inline std::pair<Chromosome, Chromosome> swap_segment(const Chromosome& a, const Chromosome& b, std::size_t from,
                                                      std::size_t to) {
  Chromosome ca = a, cb = b;
  for (std::size_t i = from; i < to && i < a.genes.size(); ++i) std::swap(ca.genes[i], cb.genes[i]);
  return {std::move(ca), std::move(cb)};
}

// One-point crossover with the cut after `cut` genes: children are
// a[0, cut) + b[cut, n) and b[0, cut) + a[cut, n).
inline std::pair<Chromosome, Chromosome> one_point_at(const Chromosome& a, const Chromosome& b, std::size_t cut) {
  return swap_segment(a, b, cut, a.genes.size());
}

inline std::pair<Chromosome, Chromosome> crossover(const Chromosome& a, const Chromosome& b, CrossoverKind kind,
                                                   Rng& rng) {
  if (a.genes.size() != b.genes.size()) throw std::invalid_argument("crossover parents differ in length");
  const std::size_t n = a.genes.size();
  if (n < 2) return {a, b};
  switch (kind) {
    case CrossoverKind::OnePoint: {
      const auto cut = static_cast<std::size_t>(1 + rng.below(n - 1));
      return swap_segment(a, b, cut, n);
    }
    case CrossoverKind::TwoPoint: {
      if (n < 3) return swap_segment(a, b, 1, n);
      auto c1 = static_cast<std::size_t>(1 + rng.below(n - 1));
      auto c2 = static_cast<std::size_t>(1 + rng.below(n - 2));
      if (c2 >= c1) ++c2;
      if (c1 > c2) std::swap(c1, c2);
      return swap_segment(a, b, c1, c2);
    }
    case CrossoverKind::Uniform: {
      Chromosome ca = a, cb = b;
      for (std::size_t i = 0; i < n; ++i)
        if (rng.uniform() < 0.5) std::swap(ca.genes[i], cb.genes[i]);
      return {std::move(ca), std::move(cb)};
    }
  }
  throw std::invalid_argument("unknown crossover kind");
}

// Rate at generation t (1-based). `best_history[k]` is the best total fitness
// recorded at generation k + 1; only the improvement-gated mode reads it.
inline double mutation_rate(const MutationSchedule& m, int t, int generations,
                            std::span<const double> best_history = {}) {
  if (t < 1 || t > generations) throw std::invalid_argument("generation outside 1..generations");
  const double start = m.start;
  const double end = m.final_rate();
  if (t == generations) return end;
  if (generations == 1 || start == end) return start;
  const int checks = (generations - 1) / m.check_interval;
  if (m.mode == ScheduleMode::Linear || checks == 0)
    return start + (end - start) * static_cast<double>(t - 1) / static_cast<double>(generations - 1);

  // Improvement-gated: at each check the rate moves one step toward `end`
  // when the best total improved enough since the previous check. Half as
  // many steps as checks are needed; once the remaining checks only just
  // cover the remaining steps, steps are taken unconditionally.
  const int steps_needed = (checks + 1) / 2;
  const double step = (end - start) / steps_needed;
  int steps = 0;
  double reference = best_history.empty() ? 0.0 : best_history[0];
  for (int k = 1; k <= checks; ++k) {
    const int check_t = 1 + k * m.check_interval;
    if (check_t > t) break;
    const auto last = static_cast<std::size_t>(check_t - 2);
    if (steps >= steps_needed) continue;
    bool improved = false;
    if (last < best_history.size()) {
      const double current = best_history[last];
      improved = reference - current > m.improvement_threshold * std::abs(reference);
      reference = current;
    }
    const int remaining_checks = checks - k + 1;
    if (improved || remaining_checks <= steps_needed - steps) ++steps;
  }
  return steps >= steps_needed ? end : start + step * steps;
}

// Uniform mutation over semantic alleles: landing runway, take-off runway,
// terminal (free-terminal mode only) and gate. Mutated alleles are redrawn from
// their valid range exactly as in initialization.
inline Chromosome mutate(Chromosome c, double rate, const Scenario& s, Rng& rng,
                         TerminalMode mode = TerminalMode::Fixed, long* resampled = nullptr) {
  long count = 0;
  for (std::size_t i = 0; i < c.genes.size(); ++i) {
    Gene& g = c.genes[i];
    const auto& ac = s.aircraft_of(i);
    if (g.lan_runway != 0 && rng.uniform() < rate) {
      g.lan_runway = sample_runway(ac, rng);
      ++count;
    }
    if (g.tof_runway != 0 && rng.uniform() < rate) {
      g.tof_runway = sample_runway(ac, rng);
      ++count;
    }
    bool gate_out_of_range = false;
    if (mode == TerminalMode::Free && rng.uniform() < rate) {
      g.terminal = sample_terminal(s.airport(), rng);
      gate_out_of_range = !s.airport().has_gate(g.terminal, g.gate);
      ++count;
    }
    if (rng.uniform() < rate) {
      g.gate = sample_gate(s.airport(), g.terminal, rng);
      ++count;
    } else if (gate_out_of_range) {
      g.gate = sample_gate(s.airport(), g.terminal, rng);
    }
  }
  if (resampled) *resampled = count;
  return c;
}

// Positions 0, 1 are the parents and 2, 3 the children. Returns the positions
// that survive, best first.
inline std::array<std::size_t, 2> replace(const std::array<double, 4>& totals, Replacement strategy) {
  if (strategy == Replacement::GenerationalElitist) return {2, 3};
  std::array<std::size_t, 4> order{0, 1, 2, 3};
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return totals[a] < totals[b]; });
  return {order[0], order[1]};
}

// --- generation loop --------------------------------------------------------

namespace detail {

struct Individual {
  Chromosome genes;
  double pure = 0.0;
  ViolationCounts violations;
  double total = 0.0;
};

inline Individual make_individual(Chromosome c, const Scenario& s, const GaConfig& cfg, int t) {
  Individual ind;
  ind.pure = pure_fitness(c, s);
  ind.violations = violations(c, s, cfg.limits);
  ind.total = apply_cht(cfg.cht, ind.pure, ind.violations, t);
  ind.genes = std::move(c);
  return ind;
}

inline std::size_t best_index(std::span<const Individual> pop) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < pop.size(); ++k)
    if (pop[k].total < pop[best].total) best = k;
  return best;
}

inline std::size_t worst_index(std::span<const Individual> pop) {
  std::size_t worst = 0;
  for (std::size_t k = 1; k < pop.size(); ++k)
    if (pop[k].total > pop[worst].total) worst = k;
  return worst;
}

}  // namespace detail

// Called after each generation with the generation number and population.
using PopulationObserver = std::function<void(int, std::span<const detail::Individual>)>;

// Runs the GA. Every random draw comes from one stream seeded with cfg.seed,
// so the result is a function of (scenario, cfg) only.
inline RunResult run_ga(const Scenario& s, const GaConfig& cfg, const PopulationObserver& observe = {}) {
  cfg.validate();
  if (s.size() == 0) throw InputError("scenario has no movements");
  const auto started = std::chrono::steady_clock::now();

  Rng rng(cfg.seed);
  std::vector<detail::Individual> pop;
  pop.reserve(static_cast<std::size_t>(cfg.population_size));
  for (auto& c : init_population(s, cfg, rng)) pop.push_back(detail::make_individual(std::move(c), s, cfg, 1));

  RunResult result;
  result.seed = cfg.seed;
  result.trace.reserve(static_cast<std::size_t>(cfg.generations));
  std::vector<double> best_history;
  best_history.reserve(static_cast<std::size_t>(cfg.generations));
  std::vector<double> totals(pop.size());
  const std::size_t pairs = pop.size() / 2;

  for (int t = 1; t <= cfg.generations; ++t) {
    const double rate = mutation_rate(cfg.mutation, t, cfg.generations, best_history);
    for (std::size_t k = 0; k < pop.size(); ++k) {
      pop[k].total = apply_cht(cfg.cht, pop[k].pure, pop[k].violations, t);
      totals[k] = pop[k].total;
    }
    const detail::Individual elite = pop[detail::best_index(pop)];

    auto breed = [&](std::size_t i, std::size_t j) {
      std::pair<Chromosome, Chromosome> kids;
      if (cfg.crossover_probability >= 1.0 || rng.uniform() < cfg.crossover_probability)
        kids = crossover(pop[i].genes, pop[j].genes, cfg.crossover, rng);
      else
        kids = {pop[i].genes, pop[j].genes};
      auto a = mutate(std::move(kids.first), rate, s, rng, cfg.terminal_mode);
      auto b = mutate(std::move(kids.second), rate, s, rng, cfg.terminal_mode);
      return std::pair{detail::make_individual(std::move(a), s, cfg, t),
                       detail::make_individual(std::move(b), s, cfg, t)};
    };

    if (cfg.replacement == Replacement::BestParentChild) {
      // Children compete with their parents for the parents' slots.
      for (std::size_t p = 0; p < pairs; ++p) {
        const std::size_t i = tournament_select(totals, cfg.tournament_size, cfg.p_worst, rng);
        const std::size_t j = tournament_select(totals, cfg.tournament_size, cfg.p_worst, rng, i);
        auto [ca, cb] = breed(i, j);
        const std::array<double, 4> four{pop[i].total, pop[j].total, ca.total, cb.total};
        const auto keep = replace(four, Replacement::BestParentChild);
        std::array<detail::Individual*, 4> src{&pop[i], &pop[j], &ca, &cb};
        detail::Individual first = *src[keep[0]];
        detail::Individual second = *src[keep[1]];
        pop[i] = std::move(first);
        pop[j] = std::move(second);
        totals[i] = pop[i].total;
        totals[j] = pop[j].total;
      }
    } else {
      std::vector<detail::Individual> next;
      next.reserve(pop.size());
      for (std::size_t p = 0; p < pairs; ++p) {
        const std::size_t i = tournament_select(totals, cfg.tournament_size, cfg.p_worst, rng);
        const std::size_t j = tournament_select(totals, cfg.tournament_size, cfg.p_worst, rng);
        auto [ca, cb] = breed(i, j);
        next.push_back(std::move(ca));
        next.push_back(std::move(cb));
      }
      pop = std::move(next);
    }

    if (cfg.elitism_active()) {
      const std::size_t best = detail::best_index(pop);
      if (elite.total < pop[best].total) pop[detail::worst_index(pop)] = elite;
    }

    GenerationTrace tr;
    tr.generation = t;
    const std::size_t best = detail::best_index(pop);
    tr.best_total = pop[best].total;
    tr.worst_total = pop[detail::worst_index(pop)].total;
    double sum = 0.0;
    for (const auto& ind : pop) sum += ind.total;
    tr.mean_total = std::clamp(sum / static_cast<double>(pop.size()), tr.best_total, tr.worst_total);
    tr.best_pure = pop[best].pure;
    tr.best_bg = pop[best].violations.bg();
    tr.best_rnw = pop[best].violations.rnw();
    tr.mutation_rate = rate;
    tr.penalty_factor = penalty_factor(cfg.cht, t);
    if (result.first_feasible_generation == 0 && pop[best].violations.feasible())
      result.first_feasible_generation = t;
    result.trace.push_back(tr);
    best_history.push_back(tr.best_total);
    if (observe) observe(t, pop);
  }

  const std::size_t best = detail::best_index(pop);
  result.best = pop[best].genes;
  result.best_report = {pop[best].pure, pop[best].violations, pop[best].total};
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

inline std::string_view to_string(CrossoverKind k) {
  switch (k) {
    case CrossoverKind::OnePoint: return "one_point";
    case CrossoverKind::TwoPoint: return "two_point";
    case CrossoverKind::Uniform: return "uniform";
  }
  return "?";
}
inline std::string_view to_string(MutationTrend k) {
  switch (k) {
    case MutationTrend::Decreasing: return "decreasing";
    case MutationTrend::Constant: return "constant";
    case MutationTrend::Increasing: return "increasing";
  }
  return "?";
}
inline std::string_view to_string(ScheduleMode k) {
  return k == ScheduleMode::Linear ? "linear" : "improvement_gated";
}
inline std::string_view to_string(Replacement k) {
  return k == Replacement::BestParentChild ? "best_parent_child" : "generational_elitist";
}

inline CrossoverKind parse_crossover(std::string_view s) {
  if (s == "one_point") return CrossoverKind::OnePoint;
  if (s == "two_point") return CrossoverKind::TwoPoint;
  if (s == "uniform") return CrossoverKind::Uniform;
  throw std::invalid_argument("unknown crossover kind: " + std::string(s));
}
inline MutationTrend parse_trend(std::string_view s) {
  if (s == "decreasing") return MutationTrend::Decreasing;
  if (s == "constant") return MutationTrend::Constant;
  if (s == "increasing") return MutationTrend::Increasing;
  throw std::invalid_argument("unknown mutation trend: " + std::string(s));
}
inline ScheduleMode parse_schedule_mode(std::string_view s) {
  if (s == "linear") return ScheduleMode::Linear;
  if (s == "improvement_gated") return ScheduleMode::ImprovementGated;
  throw std::invalid_argument("unknown schedule mode: " + std::string(s));
}
inline Replacement parse_replacement(std::string_view s) {
  if (s == "best_parent_child" || s == "bpc") return Replacement::BestParentChild;
  if (s == "generational_elitist" || s == "generational") return Replacement::GenerationalElitist;
  throw std::invalid_argument("unknown replacement strategy: " + std::string(s));
}

}  // namespace lto
