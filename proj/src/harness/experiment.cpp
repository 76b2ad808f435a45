#include "fgcount/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <ostream>
#include <sstream>
#include <thread>

#include "fgcount/errors.hpp"
#include "json.hpp"

namespace fgcount {

using nlohmann::json;

std::string to_string(TrialOutcome outcome) {
  switch (outcome) {
    case TrialOutcome::Ok: return "OK";
    case TrialOutcome::NoEstimate: return "NO_ESTIMATE";
    case TrialOutcome::BudgetExceeded: return "BUDGET_EXCEEDED";
  }
  return "?";
}

namespace {

SolveOutput from_count(const CountResult& r) {
  return {TrialOutcome::Ok, r.estimate, r.independence_calls, r.adjacency_calls};
}

}  // namespace

SolveOutput solve_instance(const ProblemInstance& instance, double eps, RngStream& rng,
                           const SolverSettings& settings) {
  CountOptions options;
  options.edge_count.constants = settings.constants;
  try {
    switch (kind_of(instance)) {
      case ProblemKind::ThreeSum:
        return from_count(count_3sum(std::get<ThreeSumInstance>(instance), eps, rng, options));
      case ProblemKind::Ov:
        return from_count(count_ov(std::get<OvInstance>(instance), eps, rng, options));
      case ProblemKind::Nwt:
        return from_count(count_nwt(std::get<NwtInstance>(instance), eps, rng, options));
      case ProblemKind::Bipartite: {
        const auto& g = std::get<BipartiteInstance>(instance);
        const EdgeListGraph graph(g.left, g.right, g.edges);
        return from_count(run_edge_count(graph.oracles(), eps, rng, options));
      }
      case ProblemKind::Cnf: {
        ApproxCountOptions cnf_options;
        cnf_options.oracle_failure_constant = settings.oracle_failure_constant;
        const auto r = approx_count_cnf(std::get<CnfFormula>(instance), eps, settings.cnf_delta, rng, cnf_options);
        // Π queries are reported in the independence column.
        SolveOutput out;
        out.outcome = r.no_estimate() ? TrialOutcome::NoEstimate : TrialOutcome::Ok;
        out.estimate = r.estimate;
        out.independence_calls = r.oracle_calls;
        return out;
      }
    }
  } catch (const IterationBudgetExceeded&) {
    return {TrialOutcome::BudgetExceeded, std::nullopt, 0, 0};
  }
  throw ContractViolation("solve_instance: unknown problem");
}

void ExperimentConfig::validate() const {
  if (!(eps > 0.0 && eps < 1.0)) throw ContractViolation("experiment: eps must lie in (0,1)");
  if (trials == 0) throw ContractViolation("experiment: trials must be positive");
  if (workers == 0) throw ContractViolation("experiment: workers must be positive");
  if (const auto* spec = std::get_if<GeneratorSpec>(&source)) spec->validate();
}

namespace {

template <typename T>
void take(const json& obj, const char* key, T& field) {
  if (obj.contains(key)) field = obj.at(key).get<T>();
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; })) {
      throw ParseError(where + ": unknown key '" + key + "'");
    }
  }
}

GeneratorSpec parse_generator(const json& j) {
  reject_unknown(j,
                 {"problem", "n", "d", "value_bound", "weight_bound", "clauses", "width", "density", "shape",
                  "planted_count", "seed"},
                 "generator");
  GeneratorSpec spec;
  spec.problem = parse_problem_kind(j.at("problem").get<std::string>());
  spec.n = j.at("n").get<std::size_t>();
  take(j, "d", spec.d);
  take(j, "value_bound", spec.value_bound);
  take(j, "weight_bound", spec.weight_bound);
  take(j, "clauses", spec.clauses);
  take(j, "width", spec.width);
  take(j, "density", spec.density);
  take(j, "shape", spec.shape);
  take(j, "seed", spec.seed);
  if (j.contains("planted_count") && !j["planted_count"].is_null()) {
    spec.planted_count = j["planted_count"].get<std::uint64_t>();
  }
  return spec;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  ExperimentConfig cfg;
  try {
    const json j = json::parse(json_text);
    reject_unknown(j,
                   {"instance", "generator", "eps", "trials", "seed", "exact", "workers", "cnf_delta",
                    "oracle_failure_constant", "caps", "constants"},
                   "config");
    if (j.contains("instance") == j.contains("generator")) {
      throw ParseError("config: give exactly one of 'instance' and 'generator'");
    }
    if (j.contains("instance")) {
      cfg.source = j["instance"].get<std::string>();
    } else {
      cfg.source = parse_generator(j["generator"]);
    }
    take(j, "eps", cfg.eps);
    take(j, "trials", cfg.trials);
    take(j, "seed", cfg.master_seed);
    take(j, "exact", cfg.compute_exact);
    take(j, "workers", cfg.workers);
    take(j, "cnf_delta", cfg.settings.cnf_delta);
    take(j, "oracle_failure_constant", cfg.settings.oracle_failure_constant);
    if (j.contains("caps")) {
      const auto& c = j["caps"];
      reject_unknown(c, {"3sum", "ov", "nwt", "cnf_vars", "bipartite"}, "caps");
      take(c, "3sum", cfg.caps.three_sum);
      take(c, "ov", cfg.caps.ov);
      take(c, "nwt", cfg.caps.nwt);
      take(c, "cnf_vars", cfg.caps.cnf_vars);
      take(c, "bipartite", cfg.caps.bipartite);
    }
    if (j.contains("constants")) {
      const auto& c = j["constants"];
      auto& k = cfg.settings.constants;
      reject_unknown(c,
                     {"zeta_denominator", "exact_cutoff", "core_scale", "core_divisor", "iteration_factor",
                      "amplification_constant"},
                     "constants");
      take(c, "zeta_denominator", k.zeta_denominator);
      take(c, "exact_cutoff", k.exact_cutoff);
      take(c, "core_scale", k.core_scale);
      take(c, "core_divisor", k.core_divisor);
      take(c, "iteration_factor", k.iteration_factor);
      take(c, "amplification_constant", k.amplification_constant);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("config json: ") + e.what());
  }
  try {
    cfg.validate();
  } catch (const ContractViolation& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  return cfg;
}

double ExperimentResult::success_fraction() const {
  if (records.empty()) return 0.0;
  const auto good = std::count_if(records.begin(), records.end(), [&](const TrialRecord& r) {
    return r.outcome == TrialOutcome::Ok && r.rel_error && *r.rel_error <= eps;
  });
  return static_cast<double>(good) / static_cast<double>(records.size());
}

namespace {

double relative_error(const BigInt& estimate, const BigInt& exact) {
  const BigInt diff = estimate > exact ? BigInt(estimate - exact) : BigInt(exact - estimate);
  const BigInt denom = exact > 0 ? exact : BigInt(1);
  return diff.convert_to<double>() / denom.convert_to<double>();
}

}  // namespace

ExperimentResult run_experiment(const ProblemInstance& instance, const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult result;
  result.eps = cfg.eps;
  if (cfg.compute_exact) {
    try {
      result.exact = exact_count(instance, cfg.caps);
    } catch (const CapExceeded&) {
      // Too large to enumerate; rows get no exact/rel_error.
    }
  }
  result.records.resize(cfg.trials);
  const RngStream master(cfg.master_seed, "experiment");

  auto run_trial = [&](std::uint64_t i) {
    RngStream rng = derive_stream(master, "trial/" + std::to_string(i));
    TrialRecord rec;
    rec.trial_id = i;
    rec.seed = rng.key();
    const auto start = std::chrono::steady_clock::now();
    SolveOutput out;
    try {
      out = solve_instance(instance, cfg.eps, rng, cfg.settings);
    } catch (const std::exception& e) {
      out.outcome = TrialOutcome::NoEstimate;
      rec.error = e.what();
    }
    rec.wall_time_ns = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start).count());
    rec.outcome = out.outcome;
    rec.estimate = out.estimate;
    rec.exact = result.exact;
    if (rec.estimate && rec.exact) rec.rel_error = relative_error(*rec.estimate, *rec.exact);
    rec.independence_calls = out.independence_calls;
    rec.adjacency_calls = out.adjacency_calls;
    result.records[i] = std::move(rec);
  };

  const std::size_t workers = std::min<std::size_t>(cfg.workers, cfg.trials);
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < cfg.trials; ++i) run_trial(i);
    return result;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::uint64_t i = next++; i < cfg.trials; i = next++) run_trial(i);
    });
  }
  for (auto& t : pool) t.join();
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const ProblemInstance instance = std::holds_alternative<std::string>(cfg.source)
                                       ? read_instance_file(std::get<std::string>(cfg.source))
                                       : generate(std::get<GeneratorSpec>(cfg.source));
  return run_experiment(instance, cfg);
}

namespace {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

}  // namespace

void write_csv(std::ostream& out, const ExperimentResult& result) {
  out << "# fgcount-csv v1\n";
  out << "trial_id,seed,estimate,exact,rel_error,independence_calls,adjacency_calls,wall_time_ns,outcome\n";
  std::size_t counts[3] = {0, 0, 0};
  for (const auto& r : result.records) {
    ++counts[static_cast<int>(r.outcome)];
    out << r.trial_id << ',' << r.seed << ',' << (r.estimate ? r.estimate->str() : "") << ','
        << (r.exact ? r.exact->str() : "") << ',' << (r.rel_error ? format_double(*r.rel_error) : "") << ','
        << r.independence_calls << ',' << r.adjacency_calls << ',' << r.wall_time_ns << ',' << to_string(r.outcome)
        << '\n';
  }
  out << "# summary trials=" << result.records.size() << " ok=" << counts[0] << " no_estimate=" << counts[1]
      << " budget_exceeded=" << counts[2] << " eps=" << format_double(result.eps)
      << " exact=" << (result.exact ? result.exact->str() : "unavailable");
  if (result.exact) out << " success_fraction=" << format_double(result.success_fraction());
  out << '\n';
}

std::string strip_timing(const std::string& csv) {
  constexpr std::size_t kTimingColumn = 7;
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') {
      out << line << '\n';
      continue;
    }
    std::size_t start = 0;
    for (std::size_t k = 0; k < kTimingColumn && start != std::string::npos; ++k) {
      start = line.find(',', start);
      if (start != std::string::npos) ++start;
    }
    if (start == std::string::npos) {
      out << line << '\n';
      continue;
    }
    const auto end = line.find(',', start);
    out << line.substr(0, start - 1) << (end == std::string::npos ? "" : line.substr(end)) << '\n';
  }
  return out.str();
}

std::vector<ProbeRow> scaling_probe(const GeneratorSpec& base, const std::vector<std::size_t>& sizes, double eps,
                                    std::uint64_t trials, std::uint64_t master_seed, const SolverSettings& settings) {
  if (trials == 0) throw ContractViolation("scaling_probe: trials must be positive");
  const RngStream master(master_seed, "probe");
  auto median = [](std::vector<std::uint64_t> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? static_cast<double>(v[m]) : (static_cast<double>(v[m - 1]) + static_cast<double>(v[m])) / 2;
  };
  std::vector<ProbeRow> rows;
  for (const auto size : sizes) {
    GeneratorSpec spec = base;
    spec.n = size;
    const auto instance = generate(spec);
    std::vector<std::uint64_t> ind;
    std::vector<std::uint64_t> adj;
    for (std::uint64_t t = 0; t < trials; ++t) {
      RngStream rng = derive_stream(master, "n" + std::to_string(size) + "/trial/" + std::to_string(t));
      const auto out = solve_instance(instance, eps, rng, settings);
      ind.push_back(out.independence_calls);
      adj.push_back(out.adjacency_calls);
    }
    rows.push_back({size, median(ind), median(adj), trials});
  }
  return rows;
}

void write_probe_csv(std::ostream& out, const std::vector<ProbeRow>& rows) {
  out << "# fgcount-probe v1\n";
  out << "size,median_independence_calls,median_adjacency_calls,trials\n";
  for (const auto& r : rows) {
    out << r.size << ',' << format_double(r.median_independence_calls) << ','
        << format_double(r.median_adjacency_calls) << ',' << r.trials << '\n';
  }
}

}  // namespace fgcount
