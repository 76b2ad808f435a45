#include <algorithm>
#include <cmath>
#include <numeric>

#include "fgcount/amplify.hpp"
#include "fgcount/edgecount.hpp"
#include "fgcount/errors.hpp"

namespace fgcount {

CoreParams make_core_params(double xi, std::size_t n, double core_scale) {
  if (!(xi > 0.0 && xi < 1.0)) throw ContractViolation("core parameter xi must lie in (0,1)");
  if (n < 2) throw ContractViolation("core parameters need n >= 2");
  CoreParams p;
  p.xi = xi;
  p.n = n;
  p.fcc = static_cast<std::uint64_t>(std::ceil(core_scale * std::log(static_cast<double>(n)) / xi));
  return p;
}

CoreClass classify_core(std::size_t core_size, double xi, double core_scale) {
  if (!(xi > 0.0 && xi < 1.0)) throw ContractViolation("classify_core: xi must lie in (0,1)");
  if (core_size >= 1 && static_cast<double>(core_size) < core_scale / (xi * xi)) {
    return CoreClass::Unbalancer;
  }
  return CoreClass::Witness;
}

std::vector<std::uint32_t> halve(std::span<const std::uint32_t> x, RngStream& rng) {
  std::vector<std::uint32_t> kept;
  kept.reserve(x.size() / 2 + 1);
  for (auto v : x) {
    if (rng.coin()) kept.push_back(v);
  }
  return kept;
}

namespace {

std::uint64_t edges_between(const BipartiteOracles& oracles, std::span<const std::uint32_t> left,
                            std::span<const std::uint32_t> right) {
  std::uint64_t total = 0;
  for (auto u : left) {
    for (auto v : right) {
      if (oracles.adjacent(u, v)) ++total;
    }
  }
  return total;
}

}  // namespace

FindCoreOutcome find_core(const BipartiteOracles& oracles, std::span<const std::uint32_t> x,
                          double xi, RngStream& rng, const FindCoreOptions& options) {
  if (x.empty()) throw ContractViolation("find_core: X must be non-empty");
  const std::size_t n = oracles.n();
  const CoreParams params = make_core_params(xi, n, options.core_scale);
  const double log_n = std::log(static_cast<double>(n));

  std::vector<std::uint32_t> all_left(oracles.left_size());
  std::iota(all_left.begin(), all_left.end(), 0U);

  // C1: few right vertices, count their edges directly.
  if (static_cast<double>(x.size()) < options.core_scale * log_n) {
    return ExactCount{edges_between(oracles, all_left, x)};
  }

  std::function<bool(const VertexSubset&, RngStream&)> independent =
      [&oracles](const VertexSubset& s, RngStream& r) { return oracles.independent(s, r); };
  if (!oracles.deterministic()) {
    const double target = options.independence_failure.value_or(1.0 / (static_cast<double>(n) * n));
    independent = amplify<VertexSubset>(independent, target);
  }

  // C2: random ordering u_1..u_t of U.
  std::vector<std::uint32_t> order = all_left;
  rng.shuffle(std::span<std::uint32_t>(order));
  const std::uint64_t t = order.size();

  // C3: k_i is the largest k such that X ∪ {u_1..u_k} minus earlier hits is
  // independent; u_{k_i+1} is then the next element of U_X in the ordering.
  // Each k_i >= k_{i-1}+1, so we gallop forward from there before bisecting.
  std::vector<char> is_hit(oracles.left_size(), 0);
  VertexSubset query;
  query.right.assign(x.begin(), x.end());
  auto prefix_independent = [&](std::uint64_t k) {
    query.left.clear();
    for (std::uint64_t i = 0; i < k; ++i) {
      if (!is_hit[order[i]]) query.left.push_back(order[i]);
    }
    std::sort(query.left.begin(), query.left.end());
    return independent(query, rng);
  };

  std::vector<std::uint32_t> hits;
  std::uint64_t lo = 0;  // prefix length known to be independent
  bool exhausted = false;
  for (std::uint64_t i = 0; i < params.fcc; ++i) {
    std::uint64_t known_true = lo;
    std::uint64_t known_false = t + 1;
    std::uint64_t step = 1;
    while (known_true < t) {
      const std::uint64_t probe = std::min(t, known_true + step);
      if (prefix_independent(probe)) {
        known_true = probe;
        step *= 2;
      } else {
        known_false = probe;
        break;
      }
    }
    while (known_false - known_true > 1 && known_false <= t) {
      const std::uint64_t mid = known_true + (known_false - known_true) / 2;
      if (prefix_independent(mid)) {
        known_true = mid;
      } else {
        known_false = mid;
      }
    }
    if (known_true == t) {
      exhausted = true;  // every later k_j is t as well
      break;
    }
    const std::uint32_t hit = order[known_true];
    hits.push_back(hit);
    is_hit[hit] = 1;
    lo = known_true + 1;
  }
  std::sort(hits.begin(), hits.end());

  // C4: fewer than fcc elements in U_X, so Y = U_X and e_b(X) is exact.
  if (exhausted) {
    return ExactCount{edges_between(oracles, hits, x)};
  }

  // C5: vertices of X adjacent to at least ξ·fcc/2 members of Y.
  const double threshold = xi * static_cast<double>(params.fcc) / 2.0;
  Core core;
  for (auto v : x) {
    std::uint64_t deg_in_y = 0;
    for (auto y : hits) {
      if (oracles.adjacent(y, v)) ++deg_in_y;
    }
    if (static_cast<double>(deg_in_y) >= threshold) core.members.push_back(v);
  }
  return core;
}

}  // namespace fgcount
