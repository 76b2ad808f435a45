#include "fgcount/counting.hpp"

namespace fgcount {

CountResult run_edge_count(const BipartiteOracles& oracles, double eps, RngStream& rng,
                           const CountOptions& options) {
  CountResult result;
  result.edge_count = edge_count(oracles, eps, rng, options.edge_count);
  result.estimate = result.edge_count.estimate;
  result.independence_calls = oracles.independence_calls();
  result.adjacency_calls = oracles.adjacency_calls();
  return result;
}

}  // namespace fgcount
