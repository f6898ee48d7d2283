#pragma once

// Subcommand implementations behind the `lto` executable. Each returns a
// process exit code; invalid input surfaces as InputError.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "lto/electre.hpp"
#include "lto/evolve.hpp"
#include "lto/generator.hpp"
#include "lto/io.hpp"
#include "lto/oracle.hpp"
#include "lto/stats.hpp"

namespace lto::cli {

namespace fs = std::filesystem;
using nlohmann::json;

enum ExitCode : int { kOk = 0, kInvalidInput = 1, kRuntimeFailure = 2, kBudgetExceeded = 3 };

// Maps exceptions to exit codes and prints the diagnostic.
inline int guarded(const std::function<int()>& body, std::ostream& err = std::cerr) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return kRuntimeFailure;
  }
}

inline json scenario_json(const Scenario& s, const io::CleaningSummary& clean) {
  long lan_only = 0, tof_only = 0, both = 0;
  for (const auto& m : s.movements()) (m.has_lan() && m.has_tof() ? both : m.has_lan() ? lan_only : tof_only) += 1;
  return {{"movements", s.size()},
          {"both", both},
          {"lan_only", lan_only},
          {"tof_only", tof_only},
          {"terminals", s.airport().terminals.size()},
          {"gates", s.airport().total_gates()},
          {"runways", s.airport().runways.size()},
          {"cleaning", io::to_json(clean)}};
}

inline json report_json(const FitnessReport& r) {
  return {{"pure", r.pure}, {"total", r.total}, {"violations", io::to_json(r.violations)}};
}

inline double gap_percent(double value, double optimum) { return (value - optimum) / optimum * 100.0; }

// --- solve ------------------------------------------------------------------

struct SolveArgs {
  fs::path scenario;
  std::optional<fs::path> config;
  std::optional<std::uint64_t> seed;
  fs::path out;
  std::optional<fs::path> oracle;  // oracle.json from a previous `oracle` run
};

inline int cmd_solve(const SolveArgs& a) {
  auto loaded = io::load_scenario(a.scenario);
  GaConfig cfg = a.config ? io::ga_config_from_json(io::read_json(*a.config)) : GaConfig{};
  if (a.seed) cfg.seed = *a.seed;
  std::optional<double> optimum;
  if (a.oracle) {
    const json o = io::read_json(*a.oracle);
    if (o.at("status").get<std::string>() == "optimal") optimum = o.at("optimum").get<double>();
  }

  const RunResult r = run_ga(loaded.scenario, cfg);

  json rep;
  rep["scenario"] = scenario_json(loaded.scenario, loaded.cleaning);
  rep["config"] = io::to_json(cfg);
  rep["seed"] = r.seed;
  rep["best"] = report_json(r.best_report);
  rep["first_feasible_generation"] = r.first_feasible_generation;
  if (optimum) rep["oracle"] = {{"optimum", *optimum}, {"gap_percent", gap_percent(r.best_report.pure, *optimum)}};

  io::write_file(a.out / "report.json", rep.dump(2) + "\n");
  io::write_file(a.out / "trace.csv", io::to_csv(io::trace_table(r.trace)));
  io::write_file(a.out / "assignment.csv", io::to_csv(io::assignment_table(r.best, loaded.scenario)));
  io::write_file(a.out / "timings.csv", "seconds\n" + io::format_double(r.seconds) + "\n");
  std::cerr << "pure " << r.best_report.pure << " total " << r.best_report.total << " violations "
            << r.best_report.violations.total() << " in " << r.seconds << " s\n";
  return kOk;
}

// --- experiment -------------------------------------------------------------

struct Variant {
  std::string name;
  GaConfig config;
};

struct ExperimentSpec {
  fs::path scenario;
  std::vector<Variant> variants;
  int replicates = 31;
  std::uint64_t base_seed = 1;
};

inline bool valid_variant_name(const std::string& n) {
  return !n.empty() && std::all_of(n.begin(), n.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '-' || c == '_' || c == '.';
  }) && n != "." && n != "..";
}

// Spec document:
//   {"scenario": "dir", "replicates": 31, "base_seed": 1, "base": {...},
//    "variants": [{"name": "spm-decreasing", "config": {...}}, ...]}
// The scenario path is relative to the spec file. Variant configs override
// "base", which overrides the built-in defaults.
inline ExperimentSpec experiment_spec_from_json(const json& j, const fs::path& relative_to) {
  if (!j.is_object()) throw InputError("experiment spec must be a JSON object");
  io::detail::reject_unknown(j, {"scenario", "replicates", "base_seed", "base", "variants"}, "experiment spec");
  ExperimentSpec spec;
  try {
    fs::path sc = j.at("scenario").get<std::string>();
    spec.scenario = sc.is_absolute() ? sc : relative_to / sc;
    spec.replicates = io::get_or(j, "replicates", spec.replicates);
    spec.base_seed = io::get_or(j, "base_seed", spec.base_seed);
    const json base_json = j.value("base", json::object());
    const GaConfig base = io::ga_config_from_json(base_json);
    for (const auto& v : j.at("variants")) {
      io::detail::reject_unknown(v, {"name", "config"}, "variant");
      Variant var;
      var.name = v.at("name").get<std::string>();
      if (!valid_variant_name(var.name)) throw InputError("variant name '" + var.name + "' is not a plain identifier");
      for (const auto& other : spec.variants)
        if (other.name == var.name) throw InputError("duplicate variant name '" + var.name + "'");
      var.config = io::ga_config_from_json(v.value("config", json::object()), base);
      spec.variants.push_back(std::move(var));
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("experiment spec: ") + e.what());
  }
  if (spec.replicates < 1) throw InputError("replicates must be >= 1");
  if (spec.variants.empty()) throw InputError("experiment spec needs at least one variant");
  return spec;
}

struct SummaryRow {
  std::string variant;
  int replicate = 0;
  std::uint64_t seed = 0;
  std::string status = "ok";
  double pure = 0.0;
  double total = 0.0;
  long bg = 0;
  long rnw = 0;
  int first_feasible = 0;
  double seconds = 0.0;  // written to timings.csv only
};

inline io::CsvTable summary_table(std::span<const SummaryRow> rows) {
  io::CsvTable t;
  t.header = {"variant", "replicate", "seed", "status", "pure", "total", "bg_errors", "rnw_errors",
              "first_feasible_generation"};
  for (const auto& r : rows) {
    if (r.status == "ok")
      t.rows.push_back({r.variant, std::to_string(r.replicate), std::to_string(r.seed), r.status,
                        io::format_double(r.pure), io::format_double(r.total), std::to_string(r.bg),
                        std::to_string(r.rnw), std::to_string(r.first_feasible)});
    else
      t.rows.push_back({r.variant, std::to_string(r.replicate), std::to_string(r.seed), r.status, "", "", "", "", ""});
  }
  return t;
}

inline io::CsvTable timings_table(std::span<const SummaryRow> rows) {
  io::CsvTable t;
  t.header = {"variant", "replicate", "seconds"};
  for (const auto& r : rows) t.rows.push_back({r.variant, std::to_string(r.replicate), io::format_double(r.seconds)});
  return t;
}

inline std::vector<SummaryRow> parse_summary(const io::CsvTable& t) {
  const std::size_t cv = t.column("variant"), cr = t.column("replicate"), cs = t.column("seed"),
                    cst = t.column("status"), cp = t.column("pure"), ct = t.column("total"),
                    cb = t.column("bg_errors"), cn = t.column("rnw_errors"),
                    cf = t.column("first_feasible_generation");
  std::vector<SummaryRow> out;
  for (const auto& row : t.rows) {
    SummaryRow r;
    r.variant = row[cv];
    r.replicate = static_cast<int>(io::parse_long(row[cr], "replicate"));
    r.seed = static_cast<std::uint64_t>(io::parse_long(row[cs], "seed"));
    r.status = row[cst];
    if (r.status == "ok") {
      r.pure = io::parse_double(row[cp], "pure");
      r.total = io::parse_double(row[ct], "total");
      r.bg = io::parse_long(row[cb], "bg_errors");
      r.rnw = io::parse_long(row[cn], "rnw_errors");
      r.first_feasible = static_cast<int>(io::parse_long(row[cf], "first_feasible_generation"));
    }
    out.push_back(std::move(r));
  }
  return out;
}

// Attaches runtimes from a timings table to matching summary rows.
inline void merge_timings(std::vector<SummaryRow>& rows, const io::CsvTable& t) {
  const std::size_t cv = t.column("variant"), cr = t.column("replicate"), cs = t.column("seconds");
  for (const auto& row : t.rows) {
    const int rep = static_cast<int>(io::parse_long(row[cr], "replicate"));
    for (auto& r : rows)
      if (r.variant == row[cv] && r.replicate == rep) r.seconds = io::parse_double(row[cs], "seconds");
  }
}

inline std::string replicate_stem(int r) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "r%03d", r);
  return buf;
}

struct ExperimentArgs {
  fs::path spec;
  fs::path out;
  int workers = 0;  // 0 = hardware concurrency
};

inline int run_experiment(const ExperimentSpec& spec, const fs::path& out, int workers) {
  const auto loaded = io::load_scenario(spec.scenario);
  const Scenario& s = loaded.scenario;

  struct Job {
    std::size_t variant;
    int replicate;
  };
  std::vector<Job> jobs;
  for (std::size_t v = 0; v < spec.variants.size(); ++v)
    for (int r = 0; r < spec.replicates; ++r) jobs.push_back({v, r});

  std::vector<SummaryRow> rows(jobs.size());
  std::vector<std::string> traces(jobs.size()), assignments(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      const auto& v = spec.variants[jobs[k].variant];
      SummaryRow& row = rows[k];
      row.variant = v.name;
      row.replicate = jobs[k].replicate;
      row.seed = spec.base_seed + static_cast<std::uint64_t>(jobs[k].replicate);
      try {
        GaConfig cfg = v.config;
        cfg.seed = row.seed;
        const RunResult r = run_ga(s, cfg);
        row.pure = r.best_report.pure;
        row.total = r.best_report.total;
        row.bg = r.best_report.violations.bg();
        row.rnw = r.best_report.violations.rnw();
        row.first_feasible = r.first_feasible_generation;
        row.seconds = r.seconds;
        traces[k] = io::to_csv(io::trace_table(r.trace));
        assignments[k] = io::to_csv(io::assignment_table(r.best, s));
      } catch (const std::exception& e) {
        row.status = "failed";
        std::cerr << "run " << v.name << "/" << row.replicate << " failed: " << e.what() << "\n";
      }
    }
  };
  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min<int>(workers, static_cast<int>(jobs.size()));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  // Single writer, fixed order.
  fs::create_directories(out);
  io::write_file(out / "summary.csv", io::to_csv(summary_table(rows)));
  io::write_file(out / "timings.csv", io::to_csv(timings_table(rows)));
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    if (rows[k].status != "ok") continue;
    const fs::path dir = out / "runs" / rows[k].variant;
    io::write_file(dir / (replicate_stem(rows[k].replicate) + "_trace.csv"), traces[k]);
    io::write_file(dir / (replicate_stem(rows[k].replicate) + "_assignment.csv"), assignments[k]);
  }
  json meta;
  meta["scenario"] = scenario_json(s, loaded.cleaning);
  meta["replicates"] = spec.replicates;
  meta["base_seed"] = spec.base_seed;
  meta["variants"] = json::array();
  for (const auto& v : spec.variants) meta["variants"].push_back({{"name", v.name}, {"config", io::to_json(v.config)}});
  io::write_file(out / "experiment.json", meta.dump(2) + "\n");

  const auto failed = std::count_if(rows.begin(), rows.end(), [](const SummaryRow& r) { return r.status != "ok"; });
  std::cerr << rows.size() - static_cast<std::size_t>(failed) << " of " << rows.size() << " runs completed\n";
  return failed ? kRuntimeFailure : kOk;
}

inline int cmd_experiment(const ExperimentArgs& a) {
  const auto spec = experiment_spec_from_json(io::read_json(a.spec), a.spec.parent_path());
  return run_experiment(spec, a.out, a.workers);
}

// --- oracle -----------------------------------------------------------------

struct OracleArgs {
  fs::path scenario;
  std::uint64_t budget = OracleOptions{}.budget;
  fs::path out;
  Limits limits;
};

inline int cmd_oracle(const OracleArgs& a) {
  const auto loaded = io::load_scenario(a.scenario);
  a.limits.validate();
  OracleOptions opt;
  opt.budget = a.budget;
  const auto t0 = std::chrono::steady_clock::now();
  const OracleResult r = exact_solve(loaded.scenario, a.limits, opt);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  json j;
  j["status"] = to_string(r.status);
  j["nodes"] = r.nodes;
  j["budget"] = a.budget;
  j["max_bg"] = a.limits.max_bg;
  j["max_rnw"] = a.limits.max_rnw;
  if (r.status == OracleStatus::Optimal) {
    j["optimum"] = r.optimum;
    io::write_file(a.out / "assignment.csv", io::to_csv(io::assignment_table(r.best, loaded.scenario)));
  }
  io::write_file(a.out / "oracle.json", j.dump(2) + "\n");
  std::cerr << "oracle " << to_string(r.status) << " after " << r.nodes << " nodes in " << seconds << " s\n";
  return r.status == OracleStatus::BudgetExceeded ? kBudgetExceeded : kOk;
}

// --- compare ----------------------------------------------------------------

struct CompareArgs {
  std::vector<fs::path> inputs;
  fs::path out;
};

struct SampleGroup {
  std::string label;
  std::vector<double> pure;
  std::vector<double> total;
  std::vector<double> bg;
  std::vector<double> seconds;
};

// Decision-matrix columns and their importance ratings; every column is
// minimized.
struct AttributeSpec {
  const char* name;
  double rating;
};
inline constexpr AttributeSpec kCompareAttributes[] = {
    {"fitness_min", 8}, {"fitness_median", 9}, {"fitness_max", 4}, {"fitness_std", 3}, {"bg_max", 6},
    {"bg_median", 7},   {"bg_std", 5},         {"time_median", 2}, {"time_std", 1},
};

inline std::vector<double> attribute_row(const SampleGroup& g) {
  const auto [lo, hi] = std::minmax_element(g.total.begin(), g.total.end());
  return {*lo,
          stats::median(g.total),
          *hi,
          stats::stddev(g.total),
          *std::max_element(g.bg.begin(), g.bg.end()),
          stats::median(g.bg),
          stats::stddev(g.bg),
          stats::median(g.seconds),
          stats::stddev(g.seconds)};
}

inline stats::DecisionMatrix decision_matrix(std::span<const SampleGroup> groups) {
  stats::DecisionMatrix m;
  for (const auto& a : kCompareAttributes) m.criteria.push_back({a.name, a.rating, stats::Direction::Minimize});
  for (const auto& g : groups) {
    m.alternatives.push_back(g.label);
    m.values.push_back(attribute_row(g));
  }
  return m;
}

inline json test_json(const std::function<stats::TestResult()>& f) {
  try {
    const auto r = f();
    return {{"statistic", r.statistic}, {"p_value", r.p_value}, {"accepted", r.accepted}};
  } catch (const std::invalid_argument& e) {
    return {{"error", e.what()}};
  }
}

inline std::vector<SampleGroup> load_groups(std::span<const fs::path> inputs) {
  std::vector<SampleGroup> groups;
  for (const auto& dir : inputs) {
    auto rows = parse_summary(io::read_csv(dir / "summary.csv"));
    if (fs::exists(dir / "timings.csv")) merge_timings(rows, io::read_csv(dir / "timings.csv"));
    std::string prefix = dir.filename().string();
    if (prefix.empty()) prefix = dir.parent_path().filename().string();
    std::vector<std::string> order;
    for (const auto& r : rows)
      if (std::find(order.begin(), order.end(), r.variant) == order.end()) order.push_back(r.variant);
    for (const auto& variant : order) {
      SampleGroup g;
      g.label = prefix + ":" + variant;
      for (int n = 2; std::any_of(groups.begin(), groups.end(), [&](const SampleGroup& o) { return o.label == g.label; });
           ++n)
        g.label = prefix + ":" + variant + "#" + std::to_string(n);
      for (const auto& r : rows) {
        if (r.variant != variant || r.status != "ok") continue;
        g.pure.push_back(r.pure);
        g.total.push_back(r.total);
        g.bg.push_back(static_cast<double>(r.bg));
        g.seconds.push_back(r.seconds);
      }
      if (g.pure.empty()) throw InputError("variant " + g.label + " has no completed runs");
      groups.push_back(std::move(g));
    }
  }
  return groups;
}

inline json compare_groups(std::span<const SampleGroup> groups, io::CsvTable& pairs_csv) {
  json j;
  j["samples"] = json::array();
  for (const auto& g : groups) {
    json e{{"label", g.label}, {"n", g.pure.size()}, {"mean", stats::mean(g.pure)}, {"median", stats::median(g.pure)}};
    e["std"] = stats::stddev(g.pure);
    try {
      const auto m = stats::moments(g.pure);
      e["skewness"] = m.skewness;
      e["kurtosis"] = std::isnan(m.kurtosis_excess) ? json(nullptr) : json(m.kurtosis_excess);
    } catch (const std::invalid_argument& ex) {
      e["moments_error"] = ex.what();
    }
    e["shapiro_wilk"] = test_json([&] { return stats::shapiro_wilk(g.pure); });
    e["dagostino"] = test_json([&] { return stats::dagostino_k2(g.pure); });
    j["samples"].push_back(e);
  }

  pairs_csv.header = {"a", "b", "t_statistic", "t_p", "u_statistic", "u_p", "levene_statistic", "levene_p"};
  auto cell = [](const json& t, const char* key) {
    return t.contains(key) ? io::format_double(t[key].get<double>()) : std::string();
  };
  j["pairs"] = json::array();
  for (std::size_t a = 0; a < groups.size(); ++a)
    for (std::size_t b = a + 1; b < groups.size(); ++b) {
      const auto& x = groups[a].pure;
      const auto& y = groups[b].pure;
      json p{{"a", groups[a].label}, {"b", groups[b].label}};
      p["t_test"] = test_json([&] { return stats::t_test(x, y); });
      p["mann_whitney"] = test_json([&] { return stats::mann_whitney_u(x, y); });
      p["levene"] = test_json([&] { return stats::homoscedasticity(x, y); });
      pairs_csv.rows.push_back({groups[a].label, groups[b].label, cell(p["t_test"], "statistic"),
                                cell(p["t_test"], "p_value"), cell(p["mann_whitney"], "statistic"),
                                cell(p["mann_whitney"], "p_value"), cell(p["levene"], "statistic"),
                                cell(p["levene"], "p_value")});
      j["pairs"].push_back(p);
    }

  const auto m = decision_matrix(groups);
  json dm;
  dm["alternatives"] = m.alternatives;
  dm["criteria"] = json::array();
  for (const auto& c : m.criteria) dm["criteria"].push_back({{"name", c.name}, {"rating", c.weight}, {"direction", "min"}});
  dm["values"] = m.values;
  j["decision_matrix"] = dm;
  if (groups.size() >= 2) {
    try {
      const auto r = stats::electre(m);
      json e;
      e["concordance"] = r.concordance;
      e["discordance"] = r.discordance;
      e["dominance"] = r.dominance;
      e["beats"] = r.beats;
      e["overcome"] = r.overcome;
      e["concordance_threshold"] = r.concordance_threshold;
      e["discordance_threshold"] = r.discordance_threshold;
      e["removed_criteria"] = r.removed_criteria;
      e["ranking"] = json::array();
      for (std::size_t k : r.ranking) e["ranking"].push_back(m.alternatives[k]);
      j["electre"] = e;
    } catch (const std::invalid_argument& ex) {
      j["electre"] = {{"error", ex.what()}};
    }
  }
  return j;
}

inline int cmd_compare(const CompareArgs& a) {
  if (a.inputs.empty()) throw InputError("compare needs at least one input directory");
  const auto groups = load_groups(a.inputs);
  io::CsvTable pairs;
  const json j = compare_groups(groups, pairs);
  io::write_file(a.out / "compare.json", j.dump(2) + "\n");
  io::write_file(a.out / "pairs.csv", io::to_csv(pairs));
  return kOk;
}

// --- gen --------------------------------------------------------------------

struct GenArgs {
  GeneratorParams params;
  fs::path out;
};

inline int cmd_gen(const GenArgs& a) {
  write_generated(a.out, generate_scenario(a.params));
  return kOk;
}

}  // namespace lto::cli
