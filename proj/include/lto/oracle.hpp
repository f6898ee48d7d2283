#pragma once

// Exact solver for small instances and an independent, naive re-implementation
// of the constraints used to cross-check the objective module.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "lto/objective.hpp"
#include "lto/scenario.hpp"
#include "lto/violations.hpp"

namespace lto {

inline constexpr std::size_t kEnumerateMaxMovements = 12;

namespace oracle_detail {

struct NaiveEvent {
  int time;
  std::size_t movement;
  int kind;  // 0 LAN, 1 TOF
};

inline bool naive_before(const NaiveEvent& a, const NaiveEvent& b, const Scenario& s) {
  if (a.time != b.time) return a.time < b.time;
  const auto& ia = s.movements()[a.movement].id;
  const auto& ib = s.movements()[b.movement].id;
  if (ia != ib) return ia < ib;
  if (a.kind != b.kind) return a.kind < b.kind;
  return a.movement < b.movement;
}

// Each event's rank is one plus the number of events that sort before it.
inline std::vector<std::pair<int, int>> naive_ranks(const Scenario& s) {
  std::vector<NaiveEvent> ev;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto& m = s.movements()[i];
    if (m.lan_time) ev.push_back({*m.lan_time, i, 0});
    if (m.tof_time) ev.push_back({*m.tof_time, i, 1});
  }
  std::vector<std::pair<int, int>> ranks(s.size(), {0, 0});
  for (const auto& e : ev) {
    int rank = 1;
    for (const auto& o : ev)
      if (naive_before(o, e, s)) ++rank;
    (e.kind == 0 ? ranks[e.movement].first : ranks[e.movement].second) = rank;
  }
  return ranks;
}

}  // namespace oracle_detail

// All five constraint counts by direct enumeration over pairs, gates and the
// event stream. Shares no code with the objective module.
inline ViolationCounts enumerate_constraints(const Chromosome& c, const Scenario& s, const Limits& limits) {
  const std::size_t n = c.genes.size();
  if (n > kEnumerateMaxMovements) throw std::invalid_argument("enumerate_constraints is limited to 12 movements");
  if (n != s.size()) throw std::invalid_argument("chromosome length differs from the scenario");
  const auto ranks = oracle_detail::naive_ranks(s);
  auto same_gate = [&](std::size_t a, std::size_t b) {
    return c.genes[a].terminal == c.genes[b].terminal && c.genes[a].gate == c.genes[b].gate;
  };

  ViolationCounts v;
  for (std::size_t k = 0; k < n; ++k) {
    const int slk = ranks[k].first, stk = ranks[k].second;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || !same_gate(i, k)) continue;
      const int sli = ranks[i].first, sti = ranks[i].second;
      if ((slk < sli && sli < stk) || (slk < sti && sti < stk)) v.bg01 += 1;
      if (slk == 0 && sli < stk) v.bg02 += 1;
      if (stk == 0 && slk < sli) v.bg02 += 1;
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    bool first = true;
    long on_gate = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (!same_gate(i, j)) continue;
      if (j < i) first = false;
      ++on_gate;
    }
    if (first && on_gate > limits.max_bg) v.bg03 += on_gate - limits.max_bg;
  }

  for (std::size_t i = 0; i < n; ++i) {
    const auto& ac = s.aircraft_of(i);
    for (int r : {c.genes[i].lan_runway, c.genes[i].tof_runway}) {
      if (r == 0) continue;
      bool ok = false;
      for (const auto& o : ac.allowed) ok = ok || o.runway == r;
      if (!ok) v.rnw01 += 1;
    }
  }

  // Runway of the event at each rank, then count positions that sit deeper
  // than max_rnw into a same-runway run.
  int events = 0;
  for (const auto& r : ranks) events += (r.first != 0) + (r.second != 0);
  std::vector<int> stream(static_cast<std::size_t>(events) + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (ranks[i].first) stream[static_cast<std::size_t>(ranks[i].first)] = c.genes[i].lan_runway;
    if (ranks[i].second) stream[static_cast<std::size_t>(ranks[i].second)] = c.genes[i].tof_runway;
  }
  for (int p = 1; p <= events; ++p) {
    int depth = 1;
    while (p - depth >= 1 && stream[static_cast<std::size_t>(p - depth)] == stream[static_cast<std::size_t>(p)])
      ++depth;
    if (depth > limits.max_rnw) v.rnw02 += 1;
  }
  return v;
}

enum class OracleStatus { Optimal, Infeasible, BudgetExceeded };

inline std::string_view to_string(OracleStatus s) {
  switch (s) {
    case OracleStatus::Optimal: return "optimal";
    case OracleStatus::Infeasible: return "infeasible";
    case OracleStatus::BudgetExceeded: return "budget_exceeded";
  }
  return "?";
}

struct OracleResult {
  OracleStatus status = OracleStatus::Infeasible;
  double optimum = 0.0;  // pure fitness of `best`
  Chromosome best;
  std::optional<std::uint64_t> feasible_count;  // only when requested
  std::uint64_t nodes = 0;
};

struct OracleOptions {
  std::uint64_t budget = 100'000'000;  // search nodes before giving up
  // Disables bound pruning so every feasible assignment is visited and counted.
  bool count_feasible = false;
};

namespace oracle_detail {

struct Option {
  Gene gene;
  double cost;
};

class Search {
 public:
  Search(const Scenario& s, const Limits& limits, const OracleOptions& opt)
      : s_(s), limits_(limits), opt_(opt), seq_(s.sequence()) {
    const std::size_t n = s.size();
    options_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& m = s.movements()[i];
      const auto& ac = s.aircraft_of(i);
      std::vector<int> lan{0}, tof{0};
      if (m.has_lan()) {
        lan.clear();
        for (const auto& o : ac.allowed) lan.push_back(o.runway);
      }
      if (m.has_tof()) {
        tof.clear();
        for (const auto& o : ac.allowed) tof.push_back(o.runway);
      }
      const int gates = s.airport().terminal(m.terminal).gates;
      for (int g = 1; g <= gates; ++g)
        for (int rl : lan)
          for (int rt : tof) {
            Gene gene{rl, rt, m.terminal, g};
            options_[i].push_back({gene, movement_fitness(gene, s, i)});
          }
      std::stable_sort(options_[i].begin(), options_[i].end(),
                       [](const Option& a, const Option& b) { return a.cost < b.cost; });
    }
    // Visit movements in order of their first event so the runway stream
    // fills from the left.
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    auto first_event = [&](std::size_t i) {
      return seq_[i].landing != 0 ? seq_[i].landing : seq_[i].takeoff;
    };
    std::sort(order_.begin(), order_.end(),
              [&](std::size_t a, std::size_t b) { return first_event(a) < first_event(b); });
    suffix_min_.assign(n + 1, 0.0);
    for (std::size_t d = n; d-- > 0;) suffix_min_[d] = suffix_min_[d + 1] + options_[order_[d]].front().cost;

    std::size_t events = 0;
    for (const auto& r : seq_) events += (r.landing != 0) + (r.takeoff != 0);
    stream_.assign(events, 0);
    current_.genes.assign(n, Gene{});
    assigned_.assign(n, false);
  }

  OracleResult run() {
    OracleResult r;
    dfs(0, 0.0);
    r.nodes = nodes_;
    if (opt_.count_feasible) r.feasible_count = feasible_;
    if (aborted_) {
      r.status = OracleStatus::BudgetExceeded;
    } else if (found_) {
      r.status = OracleStatus::Optimal;
      r.best = best_;
      r.optimum = pure_fitness(best_, s_);
    } else {
      r.status = OracleStatus::Infeasible;
    }
    return r;
  }

 private:
  // Any gate condition violated by the ordered pair (k, i).
  bool pair_conflict(std::size_t k, std::size_t i) const {
    const int slk = seq_[k].landing, stk = seq_[k].takeoff;
    const int sli = seq_[i].landing, sti = seq_[i].takeoff;
    if ((slk < sli && sli < stk) || (slk < sti && sti < stk)) return true;
    if (slk == 0 && sli < stk) return true;
    if (stk == 0 && slk < sli) return true;
    return false;
  }

  bool gate_ok(std::size_t m, const Gene& g) const {
    int on_gate = 1;
    for (std::size_t q = 0; q < assigned_.size(); ++q) {
      if (!assigned_[q]) continue;
      const Gene& o = current_.genes[q];
      if (o.terminal != g.terminal || o.gate != g.gate) continue;
      if (++on_gate > limits_.max_bg) return false;
      if (pair_conflict(m, q) || pair_conflict(q, m)) return false;
    }
    return true;
  }

  // A run of known runways longer than the limit can only grow once the gaps
  // are filled, so it already proves infeasibility.
  bool runs_ok() const {
    int run = 0;
    for (std::size_t p = 0; p < stream_.size(); ++p) {
      if (stream_[p] == 0) {
        run = 0;
        continue;
      }
      run = (p > 0 && stream_[p] == stream_[p - 1]) ? run + 1 : 1;
      if (run > limits_.max_rnw) return false;
    }
    return true;
  }

  void dfs(std::size_t depth, double partial) {
    if (aborted_) return;
    if (depth == order_.size()) {
      if (!enumerate_ok()) return;
      ++feasible_;
      if (!found_ || partial < best_cost_) {
        found_ = true;
        best_cost_ = partial;
        best_ = current_;
      }
      return;
    }
    const std::size_t m = order_[depth];
    for (const auto& opt : options_[m]) {
      if (++nodes_ > opt_.budget) {
        aborted_ = true;
        return;
      }
      const double cost = partial + opt.cost;
      // Options are sorted by cost, so once one is bounded out all later ones are.
      if (!opt_.count_feasible && found_ && cost + suffix_min_[depth + 1] >= best_cost_) break;
      if (!gate_ok(m, opt.gene)) continue;
      place(m, opt.gene);
      if (runs_ok()) dfs(depth + 1, cost);
      unplace(m);
      if (aborted_) return;
    }
  }

  bool enumerate_ok() const {
    if (s_.size() <= kEnumerateMaxMovements) return enumerate_constraints(current_, s_, limits_).feasible();
    return violations(current_, s_, limits_).feasible();
  }

  void place(std::size_t m, const Gene& g) {
    current_.genes[m] = g;
    assigned_[m] = true;
    if (seq_[m].landing) stream_[static_cast<std::size_t>(seq_[m].landing - 1)] = g.lan_runway;
    if (seq_[m].takeoff) stream_[static_cast<std::size_t>(seq_[m].takeoff - 1)] = g.tof_runway;
  }
  void unplace(std::size_t m) {
    assigned_[m] = false;
    if (seq_[m].landing) stream_[static_cast<std::size_t>(seq_[m].landing - 1)] = 0;
    if (seq_[m].takeoff) stream_[static_cast<std::size_t>(seq_[m].takeoff - 1)] = 0;
  }

  const Scenario& s_;
  Limits limits_;
  OracleOptions opt_;
  const EventSequence& seq_;
  std::vector<std::vector<Option>> options_;
  std::vector<std::size_t> order_;
  std::vector<double> suffix_min_;
  std::vector<int> stream_;
  Chromosome current_;
  std::vector<bool> assigned_;
  Chromosome best_;
  double best_cost_ = std::numeric_limits<double>::infinity();
  bool found_ = false;
  bool aborted_ = false;
  std::uint64_t nodes_ = 0;
  std::uint64_t feasible_ = 0;
};

}  // namespace oracle_detail

// Depth-first branch and bound over (gate, landing runway, take-off runway) per
// movement, restricted to the allowed runways and the assigned terminal.
// Feasible means all five constraint counts are zero; the minimum pure fitness
// among feasible assignments is returned.
inline OracleResult exact_solve(const Scenario& s, const Limits& limits, const OracleOptions& options = {}) {
  limits.validate();
  if (s.size() == 0) throw InputError("scenario has no movements");
  return oracle_detail::Search(s, limits, options).run();
}

}  // namespace lto
