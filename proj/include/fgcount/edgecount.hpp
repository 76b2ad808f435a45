#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "fgcount/bigint.hpp"
#include "fgcount/oracle.hpp"
#include "fgcount/rng.hpp"

namespace fgcount {

/// Tunable constants of FindCore/EdgeCount. Defaults are the published
/// values; overrides exist only for sensitivity studies and for driving the
/// halving loop at small sizes in tests.
struct EdgeCountConstants {
  double zeta_denominator = 36.0 * 36.0;  ///< ζ = ε² / (this · (ln n)³)
  std::size_t exact_cutoff = 3000;        ///< n below this: exact enumeration
  double core_scale = 24.0;               ///< the 24 in fcc, |X| threshold and unbalancer size
  double core_divisor = 48.0;             ///< FindCore at E2 runs with ζ / this
  double iteration_factor = 7.0;          ///< loop budget ⌈factor · ln n⌉ + 1
  /// Randomized independence oracles are amplified to per-call failure
  /// ε² / (this · (ln n)⁶).
  double amplification_constant = 2000.0;
};

struct CoreParams {
  double xi = 0.0;
  std::size_t n = 0;
  std::uint64_t fcc = 0;  ///< ⌈scale · ln n / ξ⌉
};

CoreParams make_core_params(double xi, std::size_t n, double core_scale = 24.0);

struct ExactCount {
  std::uint64_t count = 0;
};

struct Core {
  std::vector<std::uint32_t> members;  ///< sorted right-vertex indices
};

using FindCoreOutcome = std::variant<ExactCount, Core>;

enum class CoreClass { Witness, Unbalancer };

struct FindCoreOptions {
  double core_scale = 24.0;
  /// Per-query failure target when the independence oracle is randomized;
  /// defaults to 1/n².
  std::optional<double> independence_failure;
};

/// Approximates the high-degree part of X (a ξ-core), or counts e_b(X)
/// exactly when X or U_X is small. X must be non-empty and sorted.
FindCoreOutcome find_core(const BipartiteOracles& oracles, std::span<const std::uint32_t> x,
                          double xi, RngStream& rng, const FindCoreOptions& options = {});

/// UNBALANCER iff 1 <= |S| < scale/ξ².
CoreClass classify_core(std::size_t core_size, double xi, double core_scale = 24.0);

/// Keeps each element independently with probability 1/2.
std::vector<std::uint32_t> halve(std::span<const std::uint32_t> x, RngStream& rng);

/// Live loop state, exposed to observers at each loop head.
struct EdgeCountState {
  std::vector<std::uint32_t> x;
  std::uint64_t t = 0;
  BigInt n_acc = 0;  ///< accumulated 2^{t_i} · e_b(S_i)
  double zeta = 0.0;
  std::size_t iteration = 0;
};

struct EdgeCountOptions {
  EdgeCountConstants constants;
  /// Replaces the random halving step (tests use a no-op here).
  std::function<std::vector<std::uint32_t>(std::span<const std::uint32_t>, RngStream&)> halve_hook;
  /// Called at every loop head before FindCore.
  std::function<void(const EdgeCountState&)> observer;
};

enum class EdgeCountExit { SmallGraph, FindCoreAtE2, FindCoreAtE5, EmptyX };

struct EdgeCountResult {
  BigInt estimate = 0;
  EdgeCountExit exit = EdgeCountExit::SmallGraph;
  std::size_t iterations = 0;
  std::uint64_t halvings = 0;
};

/// (1±ε)-approximation of e(G) with probability >= 2/3. Throws
/// IterationBudgetExceeded when the loop does not settle in time.
EdgeCountResult edge_count(const BipartiteOracles& oracles, double eps, RngStream& rng,
                           const EdgeCountOptions& options = {});

/// e(G) by querying every (u, v) pair.
std::uint64_t count_edges_exhaustively(const BipartiteOracles& oracles);

}  // namespace fgcount
