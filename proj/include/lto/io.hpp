#pragma once

// Scenario directories, GA configuration documents and the flat CSV tables the
// tools emit.
//
// A scenario directory holds
//   airport.json   runways, terminals with per-gate distance rows, taxi speed
//   aircraft.json  typology -> runway weights and the aircraft catalog
//   schedule.csv   flight,lan,tof,terminal,aircraft  (HH:MM or empty / N/A)

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "json.hpp"
#include "lto/evolve.hpp"
#include "lto/scenario.hpp"

namespace lto::io {

using nlohmann::json;
namespace fs = std::filesystem;

// Shortest representation that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("cannot format number");
  return std::string(buf, end);
}

inline double parse_double(std::string_view s, std::string_view what) {
  double v = 0.0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size())
    throw InputError("bad number for " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

inline long parse_long(std::string_view s, std::string_view what) {
  long v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size())
    throw InputError("bad integer for " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

inline std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw InputError("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const fs::path& p, std::string_view content) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << content;
}

inline json read_json(const fs::path& p) {
  try {
    return json::parse(read_file(p));
  } catch (const json::parse_error& e) {
    throw InputError(p.string() + ": " + e.what());
  }
}

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

// --- CSV --------------------------------------------------------------------

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const {
    for (std::size_t k = 0; k < header.size(); ++k)
      if (header[k] == name) return k;
    throw InputError("missing column '" + std::string(name) + "'");
  }
};

inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline CsvTable parse_csv(std::string_view text, std::string_view source) {
  CsvTable t;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const auto line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (trim(line).empty()) {
      if (nl == text.size()) break;
      continue;
    }
    auto cells = split_csv_line(line);
    if (t.header.empty()) {
      t.header = std::move(cells);
    } else {
      if (cells.size() != t.header.size())
        throw InputError(std::string(source) + ":" + std::to_string(line_no) + ": expected " +
                         std::to_string(t.header.size()) + " fields");
      t.rows.push_back(std::move(cells));
    }
    if (nl == text.size()) break;
  }
  if (t.header.empty()) throw InputError(std::string(source) + ": empty table");
  return t;
}

inline CsvTable read_csv(const fs::path& p) { return parse_csv(read_file(p), p.string()); }

inline std::string to_csv(const CsvTable& t) {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k) out += ',';
      out += cells[k];
    }
    out += '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  return out;
}

// --- times ------------------------------------------------------------------

inline std::optional<int> parse_time(std::string_view s) {
  const std::string v = trim(s);
  if (v.empty() || v == "N/A" || v == "NA" || v == "-") return std::nullopt;
  const auto colon = v.find(':');
  if (colon == std::string::npos) throw InputError("time must be HH:MM: '" + v + "'");
  const long h = parse_long(std::string_view(v).substr(0, colon), "hour");
  const long m = parse_long(std::string_view(v).substr(colon + 1), "minute");
  if (h < 0 || h > 23 || m < 0 || m > 59) throw InputError("time out of range: '" + v + "'");
  return static_cast<int>(h * 60 + m);
}

inline std::string format_time(std::optional<int> t) {
  if (!t) return {};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02d:%02d", *t / 60, *t % 60);
  return buf;
}

// --- scenario files ---------------------------------------------------------

struct AircraftCatalog {
  std::map<int, std::vector<RunwayOption>> typologies;
  std::vector<AircraftType> aircraft;
};

struct CleaningSummary {
  long rows = 0;
  long kept = 0;
  long missing_terminal = 0;
  long missing_aircraft = 0;
  long missing_times = 0;
  long inconsistent_times = 0;
  long dropped() const { return missing_terminal + missing_aircraft + missing_times + inconsistent_times; }
};

struct LoadedScenario {
  Scenario scenario;
  CleaningSummary cleaning;
};

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : it->template get<T>();
}

inline Airport airport_from_json(const json& j) {
  Airport ap;
  try {
    ap.taxi_speed_kmh = get_or(j, "taxi_speed_kmh", 30.0);
    for (const auto& r : j.at("runways")) {
      Runway rw;
      rw.id = r.at("id").get<int>();
      rw.landing_min = get_or(r, "landing_min", 4.0);
      rw.takeoff_min = get_or(r, "takeoff_min", 2.9);
      rw.pushback_min = get_or(r, "pushback_min", 2.0);
      ap.runways.push_back(rw);
    }
    for (const auto& t : j.at("terminals")) {
      Terminal term;
      term.id = t.at("id").get<int>();
      term.gates = t.at("gates").get<int>();
      term.distance = t.at("distances").get<std::vector<std::vector<double>>>();
      ap.terminals.push_back(std::move(term));
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("airport: ") + e.what());
  }
  ap.validate();
  return ap;
}

inline json to_json(const Airport& ap) {
  json j;
  j["taxi_speed_kmh"] = ap.taxi_speed_kmh;
  j["runways"] = json::array();
  for (const auto& r : ap.runways)
    j["runways"].push_back(
        {{"id", r.id}, {"landing_min", r.landing_min}, {"takeoff_min", r.takeoff_min}, {"pushback_min", r.pushback_min}});
  j["terminals"] = json::array();
  for (const auto& t : ap.terminals) j["terminals"].push_back({{"id", t.id}, {"gates", t.gates}, {"distances", t.distance}});
  return j;
}

inline std::vector<RunwayOption> runway_options_from_json(const json& j) {
  std::vector<RunwayOption> out;
  for (const auto& o : j) out.push_back({o.at("runway").get<int>(), get_or(o, "weight", 1.0)});
  return out;
}

inline AircraftCatalog catalog_from_json(const json& j) {
  AircraftCatalog cat;
  try {
    if (auto it = j.find("typologies"); it != j.end())
      for (const auto& [key, opts] : it->items())
        cat.typologies[static_cast<int>(parse_long(key, "typology"))] = runway_options_from_json(opts);
    for (const auto& a : j.at("aircraft")) {
      AircraftType ac;
      ac.name = a.at("name").get<std::string>();
      ac.pollution_factor = a.at("pollution_factor").get<double>();
      ac.typology = get_or(a, "typology", 0);
      if (auto it = a.find("allowed_runways"); it != a.end()) {
        ac.allowed = runway_options_from_json(*it);
      } else {
        auto t = cat.typologies.find(ac.typology);
        if (t == cat.typologies.end())
          throw InputError("aircraft " + ac.name + " has unknown typology " + std::to_string(ac.typology));
        ac.allowed = t->second;
      }
      cat.aircraft.push_back(std::move(ac));
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("aircraft: ") + e.what());
  }
  return cat;
}

inline json to_json(const AircraftCatalog& cat) {
  json j;
  j["typologies"] = json::object();
  for (const auto& [t, opts] : cat.typologies) {
    json arr = json::array();
    for (const auto& o : opts) arr.push_back({{"runway", o.runway}, {"weight", o.weight}});
    j["typologies"][std::to_string(t)] = arr;
  }
  j["aircraft"] = json::array();
  for (const auto& a : cat.aircraft) {
    json e{{"name", a.name}, {"pollution_factor", a.pollution_factor}, {"typology", a.typology}};
    auto t = cat.typologies.find(a.typology);
    bool same = t != cat.typologies.end() && t->second.size() == a.allowed.size();
    for (std::size_t k = 0; same && k < a.allowed.size(); ++k)
      same = t->second[k].runway == a.allowed[k].runway && t->second[k].weight == a.allowed[k].weight;
    if (!same) {
      json arr = json::array();
      for (const auto& o : a.allowed) arr.push_back({{"runway", o.runway}, {"weight", o.weight}});
      e["allowed_runways"] = arr;
    }
    j["aircraft"].push_back(e);
  }
  return j;
}

// Parses the schedule, dropping rows without terminal, aircraft or any time,
// and rows whose take-off precedes the landing.
inline std::vector<Movement> schedule_from_csv(const CsvTable& t, const AircraftCatalog& cat, CleaningSummary& clean) {
  const std::size_t c_id = t.column("flight"), c_lan = t.column("lan"), c_tof = t.column("tof"),
                    c_term = t.column("terminal"), c_ac = t.column("aircraft");
  std::vector<Movement> out;
  std::vector<std::string> ids;
  for (const auto& row : t.rows) {
    ++clean.rows;
    if (row[c_term].empty()) {
      ++clean.missing_terminal;
      continue;
    }
    if (row[c_ac].empty()) {
      ++clean.missing_aircraft;
      continue;
    }
    Movement m;
    m.id = row[c_id];
    if (m.id.empty()) throw InputError("schedule row without flight id");
    m.lan_time = parse_time(row[c_lan]);
    m.tof_time = parse_time(row[c_tof]);
    if (!m.lan_time && !m.tof_time) {
      ++clean.missing_times;
      continue;
    }
    if (m.lan_time && m.tof_time && *m.lan_time >= *m.tof_time) {
      ++clean.inconsistent_times;
      continue;
    }
    m.terminal = static_cast<int>(parse_long(row[c_term], "terminal"));
    auto it = std::find_if(cat.aircraft.begin(), cat.aircraft.end(),
                           [&](const AircraftType& a) { return a.name == row[c_ac]; });
    if (it == cat.aircraft.end()) throw InputError("flight " + m.id + " uses unknown aircraft '" + row[c_ac] + "'");
    m.aircraft = static_cast<std::size_t>(it - cat.aircraft.begin());
    if (std::find(ids.begin(), ids.end(), m.id) != ids.end()) throw InputError("duplicate flight id " + m.id);
    ids.push_back(m.id);
    out.push_back(std::move(m));
    ++clean.kept;
  }
  return out;
}

inline CsvTable schedule_to_csv(std::span<const Movement> movements, std::span<const AircraftType> aircraft) {
  CsvTable t;
  t.header = {"flight", "lan", "tof", "terminal", "aircraft"};
  for (const auto& m : movements)
    t.rows.push_back({m.id, format_time(m.lan_time), format_time(m.tof_time), std::to_string(m.terminal),
                      aircraft[m.aircraft].name});
  return t;
}

inline LoadedScenario load_scenario(const fs::path& airport_file, const fs::path& aircraft_file,
                                    const fs::path& schedule_file) {
  Airport ap = airport_from_json(read_json(airport_file));
  AircraftCatalog cat = catalog_from_json(read_json(aircraft_file));
  CleaningSummary clean;
  auto movements = schedule_from_csv(read_csv(schedule_file), cat, clean);
  return {Scenario(std::move(ap), std::move(cat.aircraft), std::move(movements)), clean};
}

inline LoadedScenario load_scenario(const fs::path& dir) {
  return load_scenario(dir / "airport.json", dir / "aircraft.json", dir / "schedule.csv");
}

inline void write_scenario(const fs::path& dir, const Airport& ap, const AircraftCatalog& cat,
                           std::span<const Movement> movements) {
  fs::create_directories(dir);
  write_file(dir / "airport.json", to_json(ap).dump(2) + "\n");
  write_file(dir / "aircraft.json", to_json(cat).dump(2) + "\n");
  write_file(dir / "schedule.csv", to_csv(schedule_to_csv(movements, cat.aircraft)));
}

// --- GA configuration -------------------------------------------------------

namespace detail {

inline void reject_unknown(const json& j, std::initializer_list<std::string_view> known, std::string_view where) {
  for (const auto& [key, _] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw InputError("unknown key '" + key + "' in " + std::string(where));
}

}  // namespace detail

// Applies the keys present in `j` on top of `base`.
inline GaConfig ga_config_from_json(const json& j, GaConfig base = {}) {
  if (!j.is_object()) throw InputError("GA config must be a JSON object");
  detail::reject_unknown(j,
                         {"population_size", "generations", "max_bg", "max_rnw", "cht", "tournament_size", "p_worst",
                          "crossover", "crossover_probability", "mutation", "replacement", "elitism", "free_terminal",
                          "seed"},
                         "GA config");
  GaConfig c = base;
  try {
    c.population_size = get_or(j, "population_size", c.population_size);
    c.generations = get_or(j, "generations", c.generations);
    c.limits.max_bg = get_or(j, "max_bg", c.limits.max_bg);
    c.limits.max_rnw = get_or(j, "max_rnw", c.limits.max_rnw);
    c.tournament_size = get_or(j, "tournament_size", c.tournament_size);
    c.p_worst = get_or(j, "p_worst", c.p_worst);
    if (j.contains("crossover")) c.crossover = parse_crossover(j["crossover"].get<std::string>());
    c.crossover_probability = get_or(j, "crossover_probability", c.crossover_probability);
    if (j.contains("replacement")) c.replacement = parse_replacement(j["replacement"].get<std::string>());
    c.elitism = get_or(j, "elitism", c.elitism);
    if (j.contains("free_terminal"))
      c.terminal_mode = j["free_terminal"].get<bool>() ? TerminalMode::Free : TerminalMode::Fixed;
    c.seed = get_or(j, "seed", c.seed);
    if (auto it = j.find("cht"); it != j.end()) {
      const json& h = *it;
      detail::reject_unknown(h,
                             {"kind", "bg_weight", "rnw_weight", "c", "alpha", "beta", "anneal_beta",
                              "initial_temperature", "cooling", "anneal_bg_weight", "anneal_rnw_weight"},
                             "cht");
      auto& x = c.cht;
      if (h.contains("kind")) x.kind = parse_cht_kind(h["kind"].get<std::string>());
      x.bg_weight = get_or(h, "bg_weight", x.bg_weight);
      x.rnw_weight = get_or(h, "rnw_weight", x.rnw_weight);
      x.dynamic_c = get_or(h, "c", x.dynamic_c);
      x.dynamic_alpha = get_or(h, "alpha", x.dynamic_alpha);
      x.dynamic_beta = get_or(h, "beta", x.dynamic_beta);
      x.anneal_beta = get_or(h, "anneal_beta", x.anneal_beta);
      x.initial_temperature = get_or(h, "initial_temperature", x.initial_temperature);
      if (h.contains("cooling")) x.cooling = parse_cooling(h["cooling"].get<std::string>());
      x.anneal_bg_weight = get_or(h, "anneal_bg_weight", x.anneal_bg_weight);
      x.anneal_rnw_weight = get_or(h, "anneal_rnw_weight", x.anneal_rnw_weight);
    }
    if (auto it = j.find("mutation"); it != j.end()) {
      const json& m = *it;
      detail::reject_unknown(m, {"trend", "start", "end", "mode", "check_interval", "improvement_threshold"},
                             "mutation");
      auto& x = c.mutation;
      if (m.contains("trend")) x.trend = parse_trend(m["trend"].get<std::string>());
      x.start = get_or(m, "start", x.start);
      x.end = get_or(m, "end", x.end);
      if (x.trend == MutationTrend::Constant && !m.contains("end")) x.end = x.start;
      if (m.contains("mode")) x.mode = parse_schedule_mode(m["mode"].get<std::string>());
      x.check_interval = get_or(m, "check_interval", x.check_interval);
      x.improvement_threshold = get_or(m, "improvement_threshold", x.improvement_threshold);
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("GA config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("GA config: ") + e.what());
  }
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("GA config: ") + e.what());
  }
  return c;
}

inline json to_json(const GaConfig& c) {
  return {
      {"population_size", c.population_size},
      {"generations", c.generations},
      {"max_bg", c.limits.max_bg},
      {"max_rnw", c.limits.max_rnw},
      {"cht",
       {{"kind", to_string(c.cht.kind)},
        {"bg_weight", c.cht.bg_weight},
        {"rnw_weight", c.cht.rnw_weight},
        {"c", c.cht.dynamic_c},
        {"alpha", c.cht.dynamic_alpha},
        {"beta", c.cht.dynamic_beta},
        {"anneal_beta", c.cht.anneal_beta},
        {"initial_temperature", c.cht.initial_temperature},
        {"cooling", to_string(c.cht.cooling)},
        {"anneal_bg_weight", c.cht.anneal_bg_weight},
        {"anneal_rnw_weight", c.cht.anneal_rnw_weight}}},
      {"tournament_size", c.tournament_size},
      {"p_worst", c.p_worst},
      {"crossover", to_string(c.crossover)},
      {"crossover_probability", c.crossover_probability},
      {"mutation",
       {{"trend", to_string(c.mutation.trend)},
        {"start", c.mutation.start},
        {"end", c.mutation.end},
        {"mode", to_string(c.mutation.mode)},
        {"check_interval", c.mutation.check_interval},
        {"improvement_threshold", c.mutation.improvement_threshold}}},
      {"replacement", to_string(c.replacement)},
      {"elitism", c.elitism},
      {"free_terminal", c.terminal_mode == TerminalMode::Free},
      {"seed", c.seed},
  };
}

// --- run artifacts ----------------------------------------------------------

inline CsvTable trace_table(std::span<const GenerationTrace> trace) {
  CsvTable t;
  t.header = {"generation", "best_total", "mean_total", "worst_total", "best_pure",
              "best_bg",    "best_rnw",   "mutation_rate", "penalty_factor"};
  for (const auto& g : trace)
    t.rows.push_back({std::to_string(g.generation), format_double(g.best_total), format_double(g.mean_total),
                      format_double(g.worst_total), format_double(g.best_pure), std::to_string(g.best_bg),
                      std::to_string(g.best_rnw), format_double(g.mutation_rate), format_double(g.penalty_factor)});
  return t;
}

inline std::vector<GenerationTrace> parse_trace(const CsvTable& t) {
  std::vector<GenerationTrace> out;
  const auto c = [&](const char* n) { return t.column(n); };
  const std::size_t cg = c("generation"), cb = c("best_total"), cm = c("mean_total"), cw = c("worst_total"),
                    cp = c("best_pure"), cbg = c("best_bg"), crn = c("best_rnw"), cr = c("mutation_rate"),
                    cf = c("penalty_factor");
  for (const auto& r : t.rows) {
    GenerationTrace g;
    g.generation = static_cast<int>(parse_long(r[cg], "generation"));
    g.best_total = parse_double(r[cb], "best_total");
    g.mean_total = parse_double(r[cm], "mean_total");
    g.worst_total = parse_double(r[cw], "worst_total");
    g.best_pure = parse_double(r[cp], "best_pure");
    g.best_bg = parse_long(r[cbg], "best_bg");
    g.best_rnw = parse_long(r[crn], "best_rnw");
    g.mutation_rate = parse_double(r[cr], "mutation_rate");
    g.penalty_factor = parse_double(r[cf], "penalty_factor");
    out.push_back(g);
  }
  return out;
}

inline CsvTable assignment_table(const Chromosome& c, const Scenario& s) {
  CsvTable t;
  t.header = {"flight", "gene", "terminal", "gate", "lan_runway", "tof_runway"};
  for (std::size_t i = 0; i < c.genes.size(); ++i) {
    const Gene& g = c.genes[i];
    char gene[8];
    std::snprintf(gene, sizeof gene, "%05d", encode_gene(g));
    t.rows.push_back({s.movements()[i].id, gene, std::to_string(g.terminal), std::to_string(g.gate),
                      std::to_string(g.lan_runway), std::to_string(g.tof_runway)});
  }
  return t;
}

// Reads an assignment table back into a chromosome in scenario order.
inline Chromosome parse_assignment(const CsvTable& t, const Scenario& s, TerminalMode mode = TerminalMode::Fixed) {
  const std::size_t cf = t.column("flight"), cg = t.column("gene");
  Chromosome c;
  c.genes.resize(s.size());
  std::vector<bool> seen(s.size(), false);
  for (const auto& r : t.rows) {
    std::size_t i = 0;
    while (i < s.size() && s.movements()[i].id != r[cf]) ++i;
    if (i == s.size()) throw InputError("assignment for unknown flight " + r[cf]);
    try {
      c.genes[i] = decode_gene(static_cast<int>(parse_long(r[cg], "gene")), s, i, mode);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
    seen[i] = true;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw InputError("assignment misses flights");
  return c;
}

inline json to_json(const ViolationCounts& v) {
  return {{"bg01", v.bg01}, {"bg02", v.bg02}, {"bg03", v.bg03}, {"rnw01", v.rnw01}, {"rnw02", v.rnw02},
          {"bg", v.bg()},   {"rnw", v.rnw()}};
}

inline json to_json(const CleaningSummary& c) {
  return {{"rows", c.rows},
          {"kept", c.kept},
          {"dropped", c.dropped()},
          {"missing_terminal", c.missing_terminal},
          {"missing_aircraft", c.missing_aircraft},
          {"missing_times", c.missing_times},
          {"inconsistent_times", c.inconsistent_times}};
}

}  // namespace lto::io
