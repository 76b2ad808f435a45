// fgcount: generate instances, run approximate counters, and benchmark them.

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "fgcount/errors.hpp"
#include "fgcount/experiment.hpp"
#include "fgcount/instance.hpp"

namespace {

using namespace fgcount;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNoEstimate = 2;
constexpr int kExitBudget = 3;

int exit_code(TrialOutcome outcome) {
  switch (outcome) {
    case TrialOutcome::Ok: return kExitOk;
    case TrialOutcome::NoEstimate: return kExitNoEstimate;
    case TrialOutcome::BudgetExceeded: return kExitBudget;
  }
  return kExitError;
}

/// FGCOUNT_SEED, when set, wins over --seed.
std::uint64_t effective_seed(std::uint64_t flag_value) {
  const char* env = std::getenv("FGCOUNT_SEED");
  if (env == nullptr || *env == '\0') return flag_value;
  char* end = nullptr;
  errno = 0;
  const auto v = std::strtoull(env, &end, 10);
  if (errno != 0 || *end != '\0' || *env == '-') throw ParseError("FGCOUNT_SEED is not an unsigned integer");
  return v;
}

/// Writes to `path`, or stdout when it is empty or "-".
template <typename Fn>
void with_output(const std::string& path, Fn&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  write(out);
  if (!out) throw ParseError("write failed: " + path);
}

struct GenFlags {
  std::string problem;
  GeneratorSpec spec;
  std::uint64_t planted = 0;
};

void add_generator_flags(CLI::App* cmd, GenFlags& g, bool need_n) {
  cmd->add_option("--problem", g.problem, "3sum, ov, nwt, cnf or bipartite")->required();
  auto* n = cmd->add_option("--n", g.spec.n, "instance size");
  if (need_n) n->required();
  cmd->add_option("--d", g.spec.d, "OV dimension")->capture_default_str();
  cmd->add_option("--value-bound", g.spec.value_bound, "3SUM value bound")->capture_default_str();
  cmd->add_option("--weight-bound", g.spec.weight_bound, "NWT weight bound")->capture_default_str();
  cmd->add_option("--clauses", g.spec.clauses, "CNF clause count");
  cmd->add_option("--width", g.spec.width, "CNF clause width")->capture_default_str();
  cmd->add_option("--density", g.spec.density, "bit / edge probability")->capture_default_str();
  cmd->add_option("--shape", g.spec.shape, "bipartite shape: random or star")->capture_default_str();
  cmd->add_option("--planted", g.planted, "exact witness count to plant");
}

GeneratorSpec finish_spec(GenFlags& g, CLI::App* cmd) {
  GeneratorSpec spec = g.spec;
  spec.problem = parse_problem_kind(g.problem);
  if (cmd->count("--planted") > 0) spec.planted_count = g.planted;
  return spec;
}

int run_gen(GenFlags& g, CLI::App* cmd, std::uint64_t seed, const std::string& out_path) {
  GeneratorSpec spec = finish_spec(g, cmd);
  spec.seed = effective_seed(seed);
  const auto instance = generate(spec);
  with_output(out_path, [&](std::ostream& out) { write_instance(out, instance); });
  return kExitOk;
}

struct CountFlags {
  std::string path;
  double eps = 0.25;
  std::uint64_t seed = 0;
  bool exact = false;
  double delta = 0.3;
  EdgeCountConstants constants;
};

int run_count(ProblemKind expected, const CountFlags& f) {
  const auto instance = read_instance_file(f.path);
  if (kind_of(instance) != expected) {
    throw ParseError(f.path + " holds a " + to_string(kind_of(instance)) + " instance, expected " +
                     to_string(expected));
  }
  if (!(f.eps > 0.0 && f.eps < 1.0)) throw ContractViolation("--eps must lie in (0,1)");
  SolverSettings settings;
  settings.cnf_delta = f.delta;
  settings.constants = f.constants;
  RngStream rng(effective_seed(f.seed), "count");
  const auto out = solve_instance(instance, f.eps, rng, settings);
  std::cout << "outcome=" << to_string(out.outcome) << '\n';
  if (out.estimate) std::cout << "estimate=" << out.estimate->str() << '\n';
  std::cout << "independence_calls=" << out.independence_calls << '\n'
            << "adjacency_calls=" << out.adjacency_calls << '\n';
  if (f.exact) {
    const BigInt exact = exact_count(instance);
    std::cout << "exact=" << exact.str() << '\n';
  }
  return exit_code(out.outcome);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate counting via decision oracles"};
  app.require_subcommand(1);

  GenFlags gen_flags;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "generate an instance (JSON, or DIMACS for cnf)");
  add_generator_flags(gen, gen_flags, true);
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--out,-o", gen_out, "output file (default stdout)");

  CountFlags count_flags;
  const std::pair<const char*, ProblemKind> counters[] = {{"count-3sum", ProblemKind::ThreeSum},
                                                         {"count-ov", ProblemKind::Ov},
                                                         {"count-nwt", ProblemKind::Nwt},
                                                         {"count-cnf", ProblemKind::Cnf}};
  std::vector<std::pair<CLI::App*, ProblemKind>> count_cmds;
  for (const auto& [name, kind] : counters) {
    auto* cmd = app.add_subcommand(name, "approximate count of " + to_string(kind) + " witnesses");
    cmd->add_option("instance", count_flags.path, "instance file")->required();
    cmd->add_option("--eps", count_flags.eps, "relative accuracy")->capture_default_str();
    cmd->add_option("--seed", count_flags.seed, "random seed");
    cmd->add_flag("--exact", count_flags.exact, "also print the brute-force count");
    if (kind == ProblemKind::Cnf) {
      cmd->add_option("--delta", count_flags.delta, "hash sparsity parameter")->capture_default_str();
    } else {
      auto& k = count_flags.constants;
      const char* group = "Estimator constants";
      cmd->add_option("--exact-cutoff", k.exact_cutoff, "enumerate exactly below this n")->group(group);
      cmd->add_option("--zeta-denominator", k.zeta_denominator)->group(group);
      cmd->add_option("--core-scale", k.core_scale)->group(group);
      cmd->add_option("--core-divisor", k.core_divisor)->group(group);
      cmd->add_option("--iteration-factor", k.iteration_factor)->group(group);
      cmd->add_option("--amplification-constant", k.amplification_constant)->group(group);
    }
    count_cmds.emplace_back(cmd, kind);
  }

  std::string bench_config;
  std::string bench_out;
  std::size_t bench_workers = 0;
  std::uint64_t bench_seed = 0;
  auto* bench = app.add_subcommand("bench", "run an experiment config, write CSV");
  bench->add_option("config", bench_config, "experiment config (JSON)")->required();
  bench->add_option("--out,-o", bench_out, "CSV file (default stdout)");
  bench->add_option("--workers", bench_workers, "override the worker count");
  bench->add_option("--seed", bench_seed, "override the master seed");

  GenFlags probe_flags;
  std::vector<std::size_t> probe_sizes;
  double probe_eps = 0.25;
  std::uint64_t probe_trials = 5;
  std::uint64_t probe_seed = 0;
  std::string probe_out;
  auto* probe = app.add_subcommand("probe", "median oracle calls across instance sizes");
  add_generator_flags(probe, probe_flags, false);
  probe->add_option("--sizes", probe_sizes, "instance sizes")->required()->delimiter(',');
  probe->add_option("--eps", probe_eps, "relative accuracy")->capture_default_str();
  probe->add_option("--trials", probe_trials, "trials per size")->capture_default_str();
  probe->add_option("--seed", probe_seed, "master seed");
  probe->add_option("--out,-o", probe_out, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*gen) return run_gen(gen_flags, gen, gen_seed, gen_out);
    for (const auto& [cmd, kind] : count_cmds) {
      if (*cmd) return run_count(kind, count_flags);
    }
    if (*bench) {
      auto cfg = parse_experiment_config(slurp(bench_config));
      if (bench->count("--seed") > 0) cfg.master_seed = bench_seed;
      cfg.master_seed = effective_seed(cfg.master_seed);
      if (bench_workers > 0) cfg.workers = bench_workers;
      const auto result = run_experiment(cfg);
      for (const auto& rec : result.records) {
        if (!rec.error.empty()) std::cerr << "trial " << rec.trial_id << ": " << rec.error << '\n';
      }
      with_output(bench_out, [&](std::ostream& out) { write_csv(out, result); });
      return kExitOk;
    }
    if (*probe) {
      GeneratorSpec base = finish_spec(probe_flags, probe);
      base.seed = effective_seed(probe_seed);
      const auto rows = scaling_probe(base, probe_sizes, probe_eps, probe_trials, base.seed);
      with_output(probe_out, [&](std::ostream& out) { write_probe_csv(out, rows); });
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "fgcount: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
