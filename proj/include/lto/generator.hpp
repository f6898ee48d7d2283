#pragma once

// Synthetic scenario generator with a bundled aircraft catalog.

#include <cstdio>
#include <filesystem>

#include "lto/io.hpp"
#include "lto/rng.hpp"
#include "lto/scenario.hpp"

namespace lto {

struct CatalogEntry {
  const char* name;
  double pollution_factor;
  int typology;
};

inline constexpr CatalogEntry kAircraftCatalog[] = {
    {"140", 1.0000, 1},
    {"A320-200", 3.9627, 2},
    {"A330-300", 6.5764, 2},
    {"A340-300", 10.5235, 3},
    {"A350-900", 6.4813, 3},
    {"A380-800", 11.7671, 3},
    {"B737-300", 2.4314, 1},
    {"B737-900ER Winglets", 2.8659, 2},
    {"B747-8i", 9.8865, 3},
    {"B767-300 (winglets)", 5.6577, 2},
    {"B777-300ER", 9.1470, 3},
    {"CRJ200 LR", 1.2143, 1},
};

// Runway weights per typology on a four-runway layout.
inline std::map<int, std::vector<RunwayOption>> default_typologies() {
  return {
      {1, {{1, 0.50}, {4, 0.50}}},
      {2, {{1, 0.25}, {2, 0.25}, {3, 0.50}}},
      {3, {{2, 1.00}}},
  };
}

// Restricts the default typologies to runways 1..n and renormalizes. A
// typology left without runways may use all of them equally.
inline std::map<int, std::vector<RunwayOption>> typologies_for(int n_runways) {
  std::map<int, std::vector<RunwayOption>> out;
  for (const auto& [typ, opts] : default_typologies()) {
    std::vector<RunwayOption> kept;
    for (const auto& o : opts)
      if (o.runway <= n_runways) kept.push_back(o);
    if (kept.empty())
      for (int r = 1; r <= n_runways; ++r) kept.push_back({r, 1.0});
    double sum = 0.0;
    for (const auto& o : kept) sum += o.weight;
    for (auto& o : kept) o.weight /= sum;
    out[typ] = std::move(kept);
  }
  return out;
}

struct GeneratorParams {
  int movements = 8;
  int terminals = 2;
  int gates = 3;
  int runways = 2;
  std::uint64_t seed = 1;

  void validate() const {
    if (movements < 1 || movements > 9999) throw InputError("movements must be in 1..9999");
    if (terminals < 1 || terminals > kMaxTerminals) throw InputError("terminals must be in 1..9");
    if (gates < 1 || gates > kMaxGatesPerTerminal) throw InputError("gates must be in 1..99");
    if (runways < 1 || runways > kMaxRunways) throw InputError("runways must be in 1..9");
  }
};

struct GeneratedScenario {
  Airport airport;
  io::AircraftCatalog catalog;
  std::vector<Movement> movements;

  Scenario scenario() const { return Scenario(airport, catalog.aircraft, movements); }
};

inline constexpr double kBothShare = 0.73;
inline constexpr double kLandingOnlyShare = 0.14;
inline constexpr int kMinTurnaround = 30;
inline constexpr int kMaxTurnaround = 240;
inline constexpr int kMinDistanceM = 500;
inline constexpr int kMaxDistanceM = 4000;

inline GeneratedScenario generate_scenario(const GeneratorParams& p) {
  p.validate();
  Rng rng(p.seed);
  GeneratedScenario g;

  for (int r = 1; r <= p.runways; ++r) g.airport.runways.push_back(Runway{r});
  for (int t = 1; t <= p.terminals; ++t) {
    Terminal term{t, p.gates, {}};
    for (int gate = 0; gate < p.gates; ++gate) {
      std::vector<double> row;
      for (int r = 0; r < p.runways; ++r)
        row.push_back(static_cast<double>(10 * rng.between(kMinDistanceM / 10, kMaxDistanceM / 10)));
      term.distance.push_back(std::move(row));
    }
    g.airport.terminals.push_back(std::move(term));
  }

  g.catalog.typologies = typologies_for(p.runways);
  for (const auto& e : kAircraftCatalog)
    g.catalog.aircraft.push_back({e.name, e.pollution_factor, e.typology, g.catalog.typologies.at(e.typology)});

  const int width = p.movements >= 1000 ? 4 : 3;
  for (int k = 0; k < p.movements; ++k) {
    Movement m;
    char id[16];
    std::snprintf(id, sizeof id, "F%0*d", width, k + 1);
    m.id = id;
    m.aircraft = static_cast<std::size_t>(rng.below(std::size(kAircraftCatalog)));
    m.terminal = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(p.terminals)));
    const double kind = rng.uniform();
    if (kind < kBothShare) {
      const int lan = static_cast<int>(rng.between(0, kMinutesPerDay - 1 - kMinTurnaround));
      const int turn = static_cast<int>(rng.between(kMinTurnaround, kMaxTurnaround));
      m.lan_time = lan;
      m.tof_time = std::min(kMinutesPerDay - 1, lan + turn);
    } else if (kind < kBothShare + kLandingOnlyShare) {
      m.lan_time = static_cast<int>(rng.between(0, kMinutesPerDay - 1));
    } else {
      m.tof_time = static_cast<int>(rng.between(0, kMinutesPerDay - 1));
    }
    g.movements.push_back(std::move(m));
  }
  return g;
}

inline void write_generated(const std::filesystem::path& dir, const GeneratedScenario& g) {
  io::write_scenario(dir, g.airport, g.catalog, g.movements);
}

}  // namespace lto
