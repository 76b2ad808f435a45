#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "fgcount/bigint.hpp"
#include "fgcount/cnf.hpp"
#include "fgcount/rng.hpp"

namespace fgcount {

/// Decision procedure for Π_{k,s}: is the augmented formula satisfiable?
using PiOracle = std::function<bool(const AugmentedFormula&)>;

/// Count(v) or FAIL (value absent).
struct SparseCountResult {
  std::optional<BigInt> count;

  bool failed() const { return !count.has_value(); }
  static SparseCountResult fail() { return {}; }
};

/// Exact #sat(F) by self-reduction when it is at most `budget`, FAIL
/// otherwise. `oracle_calls`, when given, is incremented per oracle query.
SparseCountResult sparse_count(const AugmentedFormula& formula, const BigInt& budget,
                               const PiOracle& oracle, std::uint64_t* oracle_calls = nullptr);

/// An (s, m, n)-hash: m rows, each with a uniform size-s support in [n] and
/// uniform coefficients on it. Right-hand sides are left at zero.
SparseXorSystem sample_hash(std::uint32_t s, std::uint32_t m, std::uint32_t n, RngStream& rng);

/// F ∧ (Ax = b) with a fresh uniform b.
AugmentedFormula conjoin(const CnfFormula& formula, SparseXorSystem hash, RngStream& rng);

struct PiDeciderOptions {
  std::uint32_t max_vars = 32;
};

/// Backtracking with unit propagation on clauses and XOR rows; Gaussian
/// elimination once every clause is satisfied. Throws CapExceeded above
/// `max_vars`.
bool decide_pi_ks(const AugmentedFormula& formula, const PiDeciderOptions& options = {});

struct SatSolveParams {
  double delta = 0.0;
  double eps = 0.0;
  std::uint64_t t = 0;
  std::uint32_t sparsity = 0;
};

/// t = ⌈δn/2 + 2·lg(1/ε)⌉; sparsity defaults to ⌈40·lg(2/δ)²/δ⌉.
SatSolveParams make_sat_solve_params(std::uint32_t n_vars, double delta, double eps,
                                     std::optional<std::uint32_t> sparsity = std::nullopt);

enum class SatSolvePath { BruteForce, SparseOnly, Hashed, NoEstimate };

struct SatSolveOptions {
  /// Skip the small-instance brute-force branch (exercise hashing at desk scale).
  bool disable_brute_force = false;
};

struct SatSolveResult {
  std::optional<BigInt> estimate;  ///< absent means NO_ESTIMATE
  SatSolvePath path = SatSolvePath::NoEstimate;
  std::uint32_t hash_rows_extra = 0;  ///< the m at which A3 returned
  std::uint64_t oracle_calls = 0;

  bool no_estimate() const { return !estimate.has_value(); }
};

/// Approximate #sat(F) via hashing into Π_{k,s} queries; (1±ε) with
/// probability >= 3/4 when the oracle is reliable.
SatSolveResult sat_solve(const CnfFormula& formula, const SatSolveParams& params,
                         const PiOracle& oracle, RngStream& rng, const SatSolveOptions& options = {});

struct ApproxCountOptions {
  /// C in the per-call oracle failure target ε² / (C·n·2^{δn/3}).
  double oracle_failure_constant = 1000.0;
  PiDeciderOptions decider;
  SatSolveOptions solve;
};

/// Randomised approximation scheme for #k-SAT with success probability
/// >= 2/3, backed by the brute-force Π_{k,s} decider.
SatSolveResult approx_count_cnf(const CnfFormula& formula, double eps, double delta, RngStream& rng,
                                const ApproxCountOptions& options = {});

}  // namespace fgcount
