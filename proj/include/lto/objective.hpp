#pragma once

// Pure fitness (minutes-contamination) and the constraint counts.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "lto/penalty.hpp"
#include "lto/scenario.hpp"
#include "lto/violations.hpp"

namespace lto {

// Taxi time factor: meters / (km/h) * 0.06 = minutes.
inline constexpr double kTaxiMinutesFactor = 0.06;

// Minutes-contamination of one movement under gene `g`. An absent operation
// contributes neither taxi distance nor its runway times.
inline double movement_fitness(const Gene& g, const Scenario& s, std::size_t i) {
  const Airport& ap = s.airport();
  double distance = 0.0;
  double minutes = 0.0;
  if (g.lan_runway != 0) {
    distance += ap.distance(g.terminal, g.gate, g.lan_runway);
    minutes += ap.runway(g.lan_runway).landing_min;
  }
  if (g.tof_runway != 0) {
    const Runway& r = ap.runway(g.tof_runway);
    distance += ap.distance(g.terminal, g.gate, g.tof_runway);
    minutes += r.pushback_min + r.takeoff_min;
  }
  minutes += distance / ap.taxi_speed_kmh * kTaxiMinutesFactor;
  return minutes * s.aircraft_of(i).pollution_factor;
}

inline double pure_fitness(const Chromosome& c, const Scenario& s) {
  double total = 0.0;
  for (std::size_t i = 0; i < c.genes.size(); ++i) total += movement_fitness(c.genes[i], s, i);
  return total;
}

namespace detail {

inline int gate_key(const Gene& g) { return g.terminal * 100 + g.gate; }

// Calls f(group) for each set of movement indices sharing a gate.
template <typename F>
void for_each_gate_group(const Chromosome& c, F&& f) {
  std::vector<std::size_t> order(c.genes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const int ka = gate_key(c.genes[a]), kb = gate_key(c.genes[b]);
    return ka != kb ? ka < kb : a < b;
  });
  std::size_t begin = 0;
  while (begin < order.size()) {
    std::size_t end = begin + 1;
    const int key = gate_key(c.genes[order[begin]]);
    while (end < order.size() && gate_key(c.genes[order[end]]) == key) ++end;
    f(std::span<const std::size_t>(order.data() + begin, end - begin));
    begin = end;
  }
}

}  // namespace detail

// Ordered pairs (k, i) on one gate where an event of i falls strictly inside
// k's [LAN, TOF] interval.
inline long ce_bg01(const Chromosome& c, const EventSequence& seq) {
  long count = 0;
  detail::for_each_gate_group(c, [&](std::span<const std::size_t> group) {
    for (std::size_t k : group) {
      const auto [slk, stk] = seq[k];
      for (std::size_t i : group) {
        if (i == k) continue;
        const auto [sli, sti] = seq[i];
        if ((slk < sli && sli < stk) || (slk < sti && sti < stk)) ++count;
      }
    }
  });
  return count;
}

// TOF-only k: nobody else on the gate may land before k leaves.
// LAN-only k: nobody else on the gate may land after k arrives.
inline long ce_bg02(const Chromosome& c, const EventSequence& seq) {
  long count = 0;
  detail::for_each_gate_group(c, [&](std::span<const std::size_t> group) {
    for (std::size_t k : group) {
      const auto [slk, stk] = seq[k];
      if (slk != 0 && stk != 0) continue;
      for (std::size_t i : group) {
        if (i == k) continue;
        const int sli = seq[i].landing;
        if (slk == 0 && sli < stk) ++count;
        if (stk == 0 && slk < sli) ++count;
      }
    }
  });
  return count;
}

inline long ce_bg03(const Chromosome& c, const Limits& limits) {
  long count = 0;
  detail::for_each_gate_group(c, [&](std::span<const std::size_t> group) {
    count += std::max(0L, static_cast<long>(group.size()) - limits.max_bg);
  });
  return count;
}

inline long ce_rnw01(const Chromosome& c, const Scenario& s) {
  long count = 0;
  for (std::size_t i = 0; i < c.genes.size(); ++i) {
    const auto& ac = s.aircraft_of(i);
    if (c.genes[i].lan_runway != 0 && !ac.allows(c.genes[i].lan_runway)) ++count;
    if (c.genes[i].tof_runway != 0 && !ac.allows(c.genes[i].tof_runway)) ++count;
  }
  return count;
}

// Runway of every event in sequence order.
inline std::vector<int> runway_stream(const Chromosome& c, const EventSequence& seq) {
  std::size_t events = 0;
  for (const auto& r : seq) events += (r.landing != 0) + (r.takeoff != 0);
  std::vector<int> stream(events, 0);
  for (std::size_t i = 0; i < c.genes.size(); ++i) {
    if (seq[i].landing != 0) stream[static_cast<std::size_t>(seq[i].landing - 1)] = c.genes[i].lan_runway;
    if (seq[i].takeoff != 0) stream[static_cast<std::size_t>(seq[i].takeoff - 1)] = c.genes[i].tof_runway;
  }
  return stream;
}

// Sum over maximal same-runway runs of the excess above max_rnw.
inline long run_excess(std::span<const int> stream, int max_rnw) {
  long excess = 0;
  std::size_t run = 0;
  for (std::size_t p = 0; p < stream.size(); ++p) {
    run = (p > 0 && stream[p] == stream[p - 1]) ? run + 1 : 1;
    if (run > static_cast<std::size_t>(max_rnw)) ++excess;
  }
  return excess;
}

inline long ce_rnw02(const Chromosome& c, const EventSequence& seq, const Limits& limits) {
  const auto stream = runway_stream(c, seq);
  return run_excess(stream, limits.max_rnw);
}

inline ViolationCounts violations(const Chromosome& c, const Scenario& s, const Limits& limits) {
  const auto& seq = s.sequence();
  return {ce_bg01(c, seq), ce_bg02(c, seq), ce_bg03(c, limits), ce_rnw01(c, s), ce_rnw02(c, seq, limits)};
}

struct FitnessReport {
  double pure = 0.0;
  ViolationCounts violations;
  double total = 0.0;
  bool operator==(const FitnessReport&) const = default;
};

inline FitnessReport evaluate(const Chromosome& c, const Scenario& s, const Limits& limits, const ChtConfig& cht,
                              int generation) {
  FitnessReport r;
  r.pure = pure_fitness(c, s);
  r.violations = violations(c, s, limits);
  r.total = apply_cht(cht, r.pure, r.violations, generation);
  return r;
}

}  // namespace lto
