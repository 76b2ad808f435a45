#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fgcount/bigint.hpp"
#include "fgcount/edgecount.hpp"
#include "fgcount/instance.hpp"
#include "fgcount/satcount.hpp"

namespace fgcount {

enum class TrialOutcome { Ok, NoEstimate, BudgetExceeded };

std::string to_string(TrialOutcome outcome);

/// Knobs shared by single counts and experiments.
struct SolverSettings {
  EdgeCountConstants constants;
  /// δ for #CNF (approx_count_cnf).
  double cnf_delta = 0.3;
  /// C in the Π oracle failure target.
  double oracle_failure_constant = 1000.0;
};

struct SolveOutput {
  TrialOutcome outcome = TrialOutcome::Ok;
  std::optional<BigInt> estimate;
  std::uint64_t independence_calls = 0;
  std::uint64_t adjacency_calls = 0;
};

/// One approximate count of `instance` with the problem's counter.
/// IterationBudgetExceeded and NO_ESTIMATE become outcomes; other errors
/// propagate.
SolveOutput solve_instance(const ProblemInstance& instance, double eps, RngStream& rng,
                           const SolverSettings& settings = {});

struct TrialRecord {
  std::uint64_t trial_id = 0;
  std::uint64_t seed = 0;
  std::optional<BigInt> estimate;
  std::optional<BigInt> exact;
  std::optional<double> rel_error;  ///< |estimate − exact| / max(exact, 1)
  std::uint64_t independence_calls = 0;
  std::uint64_t adjacency_calls = 0;
  std::uint64_t wall_time_ns = 0;
  TrialOutcome outcome = TrialOutcome::Ok;
  /// Set when the trial threw; such trials are recorded as NO_ESTIMATE so the
  /// rest of the batch still runs.
  std::string error;
};

struct ExperimentConfig {
  std::variant<std::string, GeneratorSpec> source;  ///< file path or generator
  double eps = 0.25;
  std::uint64_t trials = 1;
  std::uint64_t master_seed = 0;
  bool compute_exact = true;
  std::size_t workers = 1;
  SolverSettings settings;
  ExactCaps caps;

  void validate() const;
};

/// Parses the JSON form used by `fgcount bench`.
ExperimentConfig parse_experiment_config(const std::string& json_text);

struct ExperimentResult {
  std::vector<TrialRecord> records;  ///< ordered by trial_id
  std::optional<BigInt> exact;
  double eps = 0.0;

  /// Fraction of trials with outcome OK and rel_error <= eps.
  double success_fraction() const;
};

/// Runs cfg.trials independent trials. Trial i uses its own stream derived
/// from the master seed, so results do not depend on the worker count.
ExperimentResult run_experiment(const ExperimentConfig& cfg);
/// Same, on an already materialized instance.
ExperimentResult run_experiment(const ProblemInstance& instance, const ExperimentConfig& cfg);

/// "# fgcount-csv v1" header, one row per trial, then a summary comment.
void write_csv(std::ostream& out, const ExperimentResult& result);

/// Drops the wall_time_ns column so runs can be compared byte for byte.
std::string strip_timing(const std::string& csv);

struct ProbeRow {
  std::size_t size = 0;
  double median_independence_calls = 0.0;
  double median_adjacency_calls = 0.0;
  std::uint64_t trials = 0;
};

/// For each size, generates an instance from `base` with n = size and
/// reports median oracle-call counts over `trials` runs.
std::vector<ProbeRow> scaling_probe(const GeneratorSpec& base, const std::vector<std::size_t>& sizes, double eps,
                                    std::uint64_t trials, std::uint64_t master_seed,
                                    const SolverSettings& settings = {});

void write_probe_csv(std::ostream& out, const std::vector<ProbeRow>& rows);

}  // namespace fgcount
