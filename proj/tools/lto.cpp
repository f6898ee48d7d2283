#include <iostream>

#include "CLI11.hpp"
#include "lto/commands.hpp"

int main(int argc, char** argv) {
  using namespace lto::cli;
  CLI::App app{"Gate and runway assignment that minimizes LTO-cycle emissions"};
  app.require_subcommand(1);

  SolveArgs solve;
  std::string solve_config, solve_oracle;
  std::uint64_t solve_seed = 0;
  auto* s = app.add_subcommand("solve", "run the genetic algorithm once");
  s->add_option("--scenario", solve.scenario, "scenario directory")->required();
  s->add_option("--config", solve_config, "GA configuration (JSON)");
  auto* seed_opt = s->add_option("--seed", solve_seed, "random seed, overrides the config");
  s->add_option("--out", solve.out, "output directory")->required();
  s->add_option("--oracle", solve_oracle, "oracle.json to report the gap against");

  ExperimentArgs exp;
  auto* e = app.add_subcommand("experiment", "run variants x replicates");
  e->add_option("--spec", exp.spec, "experiment spec (JSON)")->required();
  e->add_option("--out", exp.out, "output directory")->required();
  e->add_option("--workers", exp.workers, "concurrent runs (0 = all cores)")->check(CLI::NonNegativeNumber);

  OracleArgs orc;
  auto* o = app.add_subcommand("oracle", "solve exactly by branch and bound");
  o->add_option("--scenario", orc.scenario, "scenario directory")->required();
  o->add_option("--budget", orc.budget, "search node budget");
  o->add_option("--out", orc.out, "output directory")->required();
  o->add_option("--max-bg", orc.limits.max_bg, "movements allowed per gate");
  o->add_option("--max-rnw", orc.limits.max_rnw, "consecutive operations allowed per runway");

  CompareArgs cmp;
  auto* c = app.add_subcommand("compare", "statistics and Electre ranking over experiment outputs");
  c->add_option("--inputs", cmp.inputs, "experiment output directories")->required()->expected(1, -1);
  c->add_option("--out", cmp.out, "output directory")->required();

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "write a synthetic scenario");
  g->add_option("--movements", gen.params.movements)->required();
  g->add_option("--terminals", gen.params.terminals)->required();
  g->add_option("--gates", gen.params.gates, "gates per terminal")->required();
  g->add_option("--runways", gen.params.runways)->required();
  g->add_option("--seed", gen.params.seed)->required();
  g->add_option("--out", gen.out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kInvalidInput;
  }

  return guarded([&] {
    if (s->parsed()) {
      if (!solve_config.empty()) solve.config = solve_config;
      if (!solve_oracle.empty()) solve.oracle = solve_oracle;
      if (seed_opt->count()) solve.seed = solve_seed;
      return cmd_solve(solve);
    }
    if (e->parsed()) return cmd_experiment(exp);
    if (o->parsed()) return cmd_oracle(orc);
    if (c->parsed()) return cmd_compare(cmp);
    return cmd_gen(gen);
  });
}
