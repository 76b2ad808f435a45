#pragma once

#include <cstdint>

#include "fgcount/bigint.hpp"
#include "fgcount/edgecount.hpp"
#include "fgcount/oracle.hpp"
#include "fgcount/rng.hpp"

namespace fgcount {

/// Outcome of one approximate-counting run on a concrete problem.
struct CountResult {
  BigInt estimate = 0;
  /// True when eps fell below the problem's exact threshold.
  bool exact_fallback = false;
  std::uint64_t independence_calls = 0;
  std::uint64_t adjacency_calls = 0;
  EdgeCountResult edge_count;
};

struct CountOptions {
  EdgeCountOptions edge_count;
};

/// Runs edge_count on `oracles` and packages the call counters.
CountResult run_edge_count(const BipartiteOracles& oracles, double eps, RngStream& rng,
                           const CountOptions& options);

}  // namespace fgcount
