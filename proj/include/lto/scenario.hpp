#pragma once

// Problem instance: airport layout, aircraft catalog, the day's movements and
// the 5-digit gene encoding of one movement's assignment.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "lto/rng.hpp"

namespace lto {

// Bad scenario, config or file content supplied by the user.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxRunways = 9;
inline constexpr int kMaxTerminals = 9;
inline constexpr int kMaxGatesPerTerminal = 99;
inline constexpr int kMinutesPerDay = 24 * 60;

enum class TerminalMode { Fixed, Free };

struct Runway {
  int id = 0;
  double landing_min = 4.0;   // approach + landing
  double takeoff_min = 2.9;   // take-off + climb-out
  double pushback_min = 2.0;
};

struct Terminal {
  int id = 0;
  int gates = 0;
  // distance[gate - 1][k] is the taxi distance in meters from that gate to the
  // head of Airport::runways[k].
  std::vector<std::vector<double>> distance;
};

struct Airport {
  std::vector<Runway> runways;
  std::vector<Terminal> terminals;
  double taxi_speed_kmh = 30.0;

  int runway_index(int id) const {
    for (std::size_t k = 0; k < runways.size(); ++k)
      if (runways[k].id == id) return static_cast<int>(k);
    return -1;
  }
  int terminal_index(int id) const {
    for (std::size_t k = 0; k < terminals.size(); ++k)
      if (terminals[k].id == id) return static_cast<int>(k);
    return -1;
  }
  const Runway& runway(int id) const { return runways.at(static_cast<std::size_t>(runway_index(id))); }
  const Terminal& terminal(int id) const {
    return terminals.at(static_cast<std::size_t>(terminal_index(id)));
  }
  bool has_runway(int id) const { return runway_index(id) >= 0; }
  bool has_gate(int terminal_id, int gate) const {
    const int t = terminal_index(terminal_id);
    return t >= 0 && gate >= 1 && gate <= terminals[static_cast<std::size_t>(t)].gates;
  }
  double distance(int terminal_id, int gate, int runway_id) const {
    return terminal(terminal_id).distance.at(static_cast<std::size_t>(gate - 1))
        .at(static_cast<std::size_t>(runway_index(runway_id)));
  }
  int total_gates() const {
    int n = 0;
    for (const auto& t : terminals) n += t.gates;
    return n;
  }

  void validate() const {
    if (runways.empty() || runways.size() > kMaxRunways)
      throw InputError("airport must have between 1 and 9 runways");
    if (terminals.empty() || terminals.size() > kMaxTerminals)
      throw InputError("airport must have between 1 and 9 terminals");
    if (!(taxi_speed_kmh > 0.0) || !std::isfinite(taxi_speed_kmh))
      throw InputError("taxi speed must be positive");
    std::vector<int> seen;
    for (const auto& r : runways) {
      if (r.id < 1 || r.id > kMaxRunways) throw InputError("runway id out of 1..9: " + std::to_string(r.id));
      if (std::find(seen.begin(), seen.end(), r.id) != seen.end())
        throw InputError("duplicate runway id " + std::to_string(r.id));
      seen.push_back(r.id);
      for (double v : {r.landing_min, r.takeoff_min, r.pushback_min})
        if (!(v >= 0.0) || !std::isfinite(v))
          throw InputError("runway " + std::to_string(r.id) + " has a negative operation time");
    }
    seen.clear();
    for (const auto& t : terminals) {
      if (t.id < 1 || t.id > kMaxTerminals)
        throw InputError("terminal id out of 1..9: " + std::to_string(t.id));
      if (std::find(seen.begin(), seen.end(), t.id) != seen.end())
        throw InputError("duplicate terminal id " + std::to_string(t.id));
      seen.push_back(t.id);
      if (t.gates < 1 || t.gates > kMaxGatesPerTerminal)
        throw InputError("terminal " + std::to_string(t.id) + " gate count must be in 1..99");
      if (t.distance.size() != static_cast<std::size_t>(t.gates))
        throw InputError("terminal " + std::to_string(t.id) + " distance table has wrong gate count");
      for (const auto& row : t.distance) {
        if (row.size() != runways.size())
          throw InputError("terminal " + std::to_string(t.id) + " distance row has wrong runway count");
        for (double d : row)
          if (!(d >= 0.0) || !std::isfinite(d))
            throw InputError("terminal " + std::to_string(t.id) + " has a negative or non-finite distance");
      }
    }
  }
};

struct RunwayOption {
  int runway = 0;
  double weight = 1.0;  // sampling weight, normalized by the sampler
};

struct AircraftType {
  std::string name;
  double pollution_factor = 1.0;
  int typology = 0;
  std::vector<RunwayOption> allowed;

  bool allows(int runway) const {
    return std::any_of(allowed.begin(), allowed.end(),
                       [runway](const RunwayOption& o) { return o.runway == runway; });
  }
};

struct Movement {
  std::string id;
  std::size_t aircraft = 0;       // index into Scenario::aircraft()
  int terminal = 0;               // authority-assigned terminal
  std::optional<int> lan_time;    // minutes from midnight
  std::optional<int> tof_time;

  bool has_lan() const { return lan_time.has_value(); }
  bool has_tof() const { return tof_time.has_value(); }
};

// Rank of each movement's landing and take-off in the joint time-ordered event
// stream, starting at 1. Zero marks an absent operation.
struct EventRanks {
  int landing = 0;
  int takeoff = 0;
  bool operator==(const EventRanks&) const = default;
};
using EventSequence = std::vector<EventRanks>;

// Sorts every LAN and TOF event by (time, movement id, LAN before TOF).
inline EventSequence sequence_events(std::span<const Movement> movements) {
  struct Event {
    int time;
    const std::string* id;
    int kind;  // 0 = LAN, 1 = TOF
    std::size_t movement;
  };
  std::vector<Event> events;
  events.reserve(movements.size() * 2);
  for (std::size_t i = 0; i < movements.size(); ++i) {
    const auto& m = movements[i];
    if (m.lan_time) events.push_back({*m.lan_time, &m.id, 0, i});
    if (m.tof_time) events.push_back({*m.tof_time, &m.id, 1, i});
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    return std::tie(a.time, *a.id, a.kind, a.movement) < std::tie(b.time, *b.id, b.kind, b.movement);
  });
  EventSequence seq(movements.size());
  for (std::size_t r = 0; r < events.size(); ++r) {
    auto& ranks = seq[events[r].movement];
    (events[r].kind == 0 ? ranks.landing : ranks.takeoff) = static_cast<int>(r) + 1;
  }
  return seq;
}

struct Gene {
  int lan_runway = 0;  // 0 = no landing
  int tof_runway = 0;  // 0 = no take-off
  int terminal = 1;
  int gate = 1;
  bool operator==(const Gene&) const = default;
};

inline int encode_gene(const Gene& g) {
  return g.lan_runway * 10000 + g.tof_runway * 1000 + g.terminal * 100 + g.gate;
}

// Digit split with range checks only; no scenario context.
inline Gene split_gene(int value) {
  if (value < 0 || value > 99999) throw std::invalid_argument("gene value out of 0..99999");
  Gene g;
  g.lan_runway = value / 10000;
  g.tof_runway = value / 1000 % 10;
  g.terminal = value / 100 % 10;
  g.gate = value % 100;
  if (g.lan_runway == 0 && g.tof_runway == 0)
    throw std::invalid_argument("gene " + std::to_string(value) + " encodes no operation");
  if (g.terminal == 0) throw std::invalid_argument("gene " + std::to_string(value) + " has terminal 0");
  if (g.gate == 0) throw std::invalid_argument("gene " + std::to_string(value) + " has gate 0");
  return g;
}

struct Chromosome {
  std::vector<Gene> genes;
  bool operator==(const Chromosome&) const = default;
};

// Immutable problem instance. Construction validates everything and computes
// the event sequence once.
class Scenario {
 public:
  Scenario(Airport airport, std::vector<AircraftType> aircraft, std::vector<Movement> movements)
      : airport_(std::move(airport)), aircraft_(std::move(aircraft)), movements_(std::move(movements)) {
    airport_.validate();
    for (const auto& a : aircraft_) {
      if (!(a.pollution_factor > 0.0) || !std::isfinite(a.pollution_factor))
        throw InputError("aircraft " + a.name + " must have a positive pollution factor");
      if (a.allowed.empty()) throw InputError("aircraft " + a.name + " has no allowed runway");
      double total = 0.0;
      for (const auto& o : a.allowed) {
        if (!airport_.has_runway(o.runway))
          throw InputError("aircraft " + a.name + " allows unknown runway " + std::to_string(o.runway));
        if (!(o.weight >= 0.0)) throw InputError("aircraft " + a.name + " has a negative runway weight");
        total += o.weight;
      }
      if (!(total > 0.0)) throw InputError("aircraft " + a.name + " runway weights sum to zero");
    }
    for (const auto& m : movements_) {
      if (m.aircraft >= aircraft_.size()) throw InputError("movement " + m.id + " references unknown aircraft");
      if (airport_.terminal_index(m.terminal) < 0)
        throw InputError("movement " + m.id + " references unknown terminal " + std::to_string(m.terminal));
      if (!m.lan_time && !m.tof_time) throw InputError("movement " + m.id + " has neither LAN nor TOF");
      for (const auto& t : {m.lan_time, m.tof_time})
        if (t && (*t < 0 || *t >= kMinutesPerDay))
          throw InputError("movement " + m.id + " time outside the 24 h horizon");
      if (m.lan_time && m.tof_time && !(*m.lan_time < *m.tof_time))
        throw InputError("movement " + m.id + " takes off before it lands");
    }
    sequence_ = sequence_events(movements_);
  }

  const Airport& airport() const { return airport_; }
  std::span<const AircraftType> aircraft() const { return aircraft_; }
  std::span<const Movement> movements() const { return movements_; }
  const EventSequence& sequence() const { return sequence_; }
  std::size_t size() const { return movements_.size(); }
  const AircraftType& aircraft_of(std::size_t movement) const {
    return aircraft_[movements_[movement].aircraft];
  }

 private:
  Airport airport_;
  std::vector<AircraftType> aircraft_;
  std::vector<Movement> movements_;
  EventSequence sequence_;
};

// Checks every Gene invariant for movement `i`; empty string means valid.
inline std::string gene_problem(const Gene& g, const Scenario& s, std::size_t i,
                                TerminalMode mode = TerminalMode::Fixed) {
  const auto& m = s.movements()[i];
  const auto& ac = s.aircraft_of(i);
  if ((g.lan_runway != 0) != m.has_lan()) return "landing runway does not match the movement";
  if ((g.tof_runway != 0) != m.has_tof()) return "take-off runway does not match the movement";
  for (int r : {g.lan_runway, g.tof_runway}) {
    if (r == 0) continue;
    if (!s.airport().has_runway(r)) return "unknown runway " + std::to_string(r);
    if (!ac.allows(r)) return "runway " + std::to_string(r) + " not allowed for " + ac.name;
  }
  if (mode == TerminalMode::Fixed && g.terminal != m.terminal) return "terminal differs from the assigned one";
  if (!s.airport().has_gate(g.terminal, g.gate)) return "gate outside the terminal";
  return {};
}

inline Gene decode_gene(int value, const Scenario& s, std::size_t movement,
                        TerminalMode mode = TerminalMode::Fixed) {
  const Gene g = split_gene(value);
  if (auto why = gene_problem(g, s, movement, mode); !why.empty())
    throw std::invalid_argument("corrupt gene " + std::to_string(value) + " for movement " +
                                s.movements()[movement].id + ": " + why);
  return g;
}

inline int sample_runway(const AircraftType& ac, Rng& rng) {
  if (ac.allowed.size() == 1) return ac.allowed.front().runway;
  std::vector<double> w;
  w.reserve(ac.allowed.size());
  for (const auto& o : ac.allowed) w.push_back(o.weight);
  return ac.allowed[rng.weighted(w)].runway;
}

inline int sample_gate(const Airport& airport, int terminal, Rng& rng) {
  return rng.between(1, airport.terminal(terminal).gates);
}

inline int sample_terminal(const Airport& airport, Rng& rng) {
  return airport.terminals[rng.below(airport.terminals.size())].id;
}

// Draws each allele inside its valid range: runways from the aircraft's
// allowed set by weight, gate uniformly within the terminal.
inline Gene random_gene(const Scenario& s, std::size_t movement, Rng& rng,
                        TerminalMode mode = TerminalMode::Fixed) {
  const auto& m = s.movements()[movement];
  const auto& ac = s.aircraft_of(movement);
  Gene g;
  g.lan_runway = m.has_lan() ? sample_runway(ac, rng) : 0;
  g.tof_runway = m.has_tof() ? sample_runway(ac, rng) : 0;
  g.terminal = mode == TerminalMode::Free ? sample_terminal(s.airport(), rng) : m.terminal;
  g.gate = sample_gate(s.airport(), g.terminal, rng);
  return g;
}

inline Chromosome random_chromosome(const Scenario& s, Rng& rng, TerminalMode mode = TerminalMode::Fixed) {
  Chromosome c;
  c.genes.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) c.genes.push_back(random_gene(s, i, rng, mode));
  return c;
}

}  // namespace lto
