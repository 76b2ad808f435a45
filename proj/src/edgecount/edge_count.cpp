#include <algorithm>
#include <cmath>
#include <numeric>

#include "fgcount/edgecount.hpp"
#include "fgcount/errors.hpp"

namespace fgcount {

std::uint64_t count_edges_exhaustively(const BipartiteOracles& oracles) {
  std::uint64_t total = 0;
  for (std::uint32_t u = 0; u < oracles.left_size(); ++u) {
    for (std::uint32_t v = 0; v < oracles.right_size(); ++v) {
      if (oracles.adjacent(u, v)) ++total;
    }
  }
  return total;
}

namespace {

std::uint64_t edges_into(const BipartiteOracles& oracles, std::span<const std::uint32_t> right) {
  std::uint64_t total = 0;
  for (std::uint32_t u = 0; u < oracles.left_size(); ++u) {
    for (auto v : right) {
      if (oracles.adjacent(u, v)) ++total;
    }
  }
  return total;
}

std::vector<std::uint32_t> set_minus(std::span<const std::uint32_t> x, std::span<const std::uint32_t> s) {
  std::vector<std::uint32_t> out;
  out.reserve(x.size());
  std::set_difference(x.begin(), x.end(), s.begin(), s.end(), std::back_inserter(out));
  return out;
}

}  // namespace

EdgeCountResult edge_count(const BipartiteOracles& oracles, double eps, RngStream& rng,
                           const EdgeCountOptions& options) {
  if (!(eps > 0.0 && eps < 1.0)) throw ContractViolation("edge_count: eps must lie in (0,1)");
  const auto& k = options.constants;
  const std::size_t n = oracles.n();

  EdgeCountResult result;
  // E1
  if (n < k.exact_cutoff) {
    result.estimate = count_edges_exhaustively(oracles);
    result.exit = EdgeCountExit::SmallGraph;
    return result;
  }

  const double log_n = std::log(static_cast<double>(n));
  EdgeCountState state;
  state.zeta = eps * eps / (k.zeta_denominator * log_n * log_n * log_n);
  state.x.resize(oracles.right_size());
  std::iota(state.x.begin(), state.x.end(), 0U);
  const double outer_xi = state.zeta / k.core_divisor;
  if (!(state.zeta < 1.0)) throw ContractViolation("edge_count: constants give zeta >= 1");

  FindCoreOptions core_opts;
  core_opts.core_scale = k.core_scale;
  if (!oracles.deterministic()) {
    core_opts.independence_failure = eps * eps / (k.amplification_constant * std::pow(log_n, 6));
  }

  auto do_halve = [&](std::span<const std::uint32_t> x) {
    return options.halve_hook ? options.halve_hook(x, rng) : halve(x, rng);
  };

  const auto budget = static_cast<std::size_t>(std::ceil(k.iteration_factor * log_n)) + 1;
  for (std::size_t iter = 1; iter <= budget; ++iter) {
    state.iteration = iter;
    result.iterations = iter;
    if (options.observer) options.observer(state);

    if (state.x.empty()) {
      result.estimate = state.n_acc;
      result.exit = EdgeCountExit::EmptyX;
      return result;
    }

    // E2
    auto outer = find_core(oracles, state.x, outer_xi, rng, core_opts);
    if (auto* exact = std::get_if<ExactCount>(&outer)) {
      result.estimate = pow2(state.t) * exact->count + state.n_acc;
      result.exit = EdgeCountExit::FindCoreAtE2;
      return result;
    }
    auto s = std::get<Core>(std::move(outer)).members;

    // E3
    if (classify_core(s.size(), outer_xi, k.core_scale) == CoreClass::Witness) {
      state.x = do_halve(state.x);
      ++state.t;
      ++result.halvings;
      continue;
    }

    // E4
    const std::uint64_t e_s = edges_into(oracles, s);
    auto rest = set_minus(state.x, s);

    // E5; e_b(X) = e_b(X∖S) + e_b(S).
    if (rest.empty()) {
      result.estimate = pow2(state.t) * e_s + state.n_acc;
      result.exit = EdgeCountExit::FindCoreAtE5;
      return result;
    }
    auto inner = find_core(oracles, rest, state.zeta, rng, core_opts);
    if (auto* exact = std::get_if<ExactCount>(&inner)) {
      result.estimate = pow2(state.t) * (BigInt(exact->count) + e_s) + state.n_acc;
      result.exit = EdgeCountExit::FindCoreAtE5;
      return result;
    }
    const auto& s_inner = std::get<Core>(inner).members;

    state.n_acc += pow2(state.t) * e_s;
    if (classify_core(s_inner.size(), state.zeta, k.core_scale) == CoreClass::Witness) {
      // E6
      state.x = do_halve(rest);
      ++state.t;
      ++result.halvings;
    } else {
      // E7
      state.x = std::move(rest);
    }
  }
  throw IterationBudgetExceeded("edge_count: no exact branch reached within " +
                                std::to_string(budget) + " iterations");
}

}  // namespace fgcount
