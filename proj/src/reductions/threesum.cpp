#include "fgcount/threesum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>

#include "fgcount/errors.hpp"

namespace fgcount {

void ThreeSumInstance::validate() const {
  if (bound <= 0 || bound > kThreeSumMaxBound) throw ContractViolation("3sum: bound out of range");
  for (const auto* list : {&a, &b, &c}) {
    for (auto v : *list) {
      if (v < -bound || v > bound) throw ContractViolation("3sum: entry exceeds bound");
    }
  }
}

bool decide_3sum(const ThreeSumInstance& instance) {
  if (instance.a.empty() || instance.b.empty() || instance.c.empty()) return false;
  std::vector<std::int64_t> sorted_copy;
  const std::vector<std::int64_t>* c = &instance.c;
  if (!std::is_sorted(c->begin(), c->end())) {
    sorted_copy = instance.c;
    std::sort(sorted_copy.begin(), sorted_copy.end());
    c = &sorted_copy;
  }
  for (auto x : instance.a) {
    for (auto y : instance.b) {
      if (std::binary_search(c->begin(), c->end(), x + y)) return true;
    }
  }
  return false;
}

std::uint64_t count_3sum_exact(const ThreeSumInstance& instance) {
  auto c = instance.c;
  std::sort(c.begin(), c.end());
  std::uint64_t total = 0;
  for (auto x : instance.a) {
    for (auto y : instance.b) {
      auto [lo, hi] = std::equal_range(c.begin(), c.end(), x + y);
      total += static_cast<std::uint64_t>(hi - lo);
    }
  }
  return total;
}

namespace {

struct ThreeSumData {
  std::vector<std::int64_t> a;
  std::vector<std::int64_t> b;
  std::vector<std::int64_t> sorted_c;
  std::int64_t bound;
};

bool has_repeats(std::vector<std::int64_t> values) {
  std::sort(values.begin(), values.end());
  return std::adjacent_find(values.begin(), values.end()) != values.end();
}

std::vector<std::int64_t> negated(const std::vector<std::int64_t>& values) {
  std::vector<std::int64_t> out(values.size());
  std::transform(values.begin(), values.end(), out.begin(), [](std::int64_t v) { return -v; });
  return out;
}

}  // namespace

BipartiteOracles three_sum_oracles(const ThreeSumInstance& instance, ThreeSumDecision decision) {
  instance.validate();
  auto data = std::make_shared<ThreeSumData>();
  data->a = instance.a;
  data->b = instance.b;
  data->sorted_c = instance.c;
  std::sort(data->sorted_c.begin(), data->sorted_c.end());
  data->bound = instance.bound;

  auto independence = [data, decision = std::move(decision)](const VertexSubset& s, RngStream&) {
    ThreeSumInstance sub;
    sub.bound = data->bound;
    sub.a.reserve(s.left.size());
    for (auto i : s.left) sub.a.push_back(data->a[i]);
    sub.b.reserve(s.right.size());
    for (auto j : s.right) sub.b.push_back(data->b[j]);
    sub.c = data->sorted_c;
    return !decision(sub);
  };
  auto adjacency = [data](std::uint32_t u, std::uint32_t v) {
    return std::binary_search(data->sorted_c.begin(), data->sorted_c.end(), data->a[u] + data->b[v]);
  };
  return BipartiteOracles(instance.a.size(), instance.b.size(), std::move(independence), std::move(adjacency));
}

ThreeSumInstance normalize_for_tuple_count(const ThreeSumInstance& instance) {
  instance.validate();
  if (!has_repeats(instance.c)) return instance;
  // c + (-b) = a and (-a) + c = b describe the same tuples.
  if (!has_repeats(instance.a)) return ThreeSumInstance{instance.c, negated(instance.b), instance.a, instance.bound};
  if (!has_repeats(instance.b)) return ThreeSumInstance{negated(instance.a), instance.c, instance.b, instance.bound};

  // Every list repeats: tag the j-th copy of each c value with j and give
  // each b one copy per tag, so (a, b, c_j) maps to exactly one pair.
  std::map<std::int64_t, std::int64_t> multiplicity;
  for (auto v : instance.c) ++multiplicity[v];
  std::int64_t scale = 1;
  for (const auto& [value, count] : multiplicity) scale = std::max(scale, count);
  if (instance.bound > (kThreeSumMaxBound - scale) / scale) {
    throw ContractViolation("3sum: values too large to rescale for duplicate C entries");
  }
  ThreeSumInstance out;
  out.bound = instance.bound * scale + scale;
  for (auto v : instance.a) out.a.push_back(v * scale);
  for (auto v : instance.b) {
    for (std::int64_t r = 0; r < scale; ++r) out.b.push_back(v * scale + r);
  }
  std::map<std::int64_t, std::int64_t> seen;
  for (auto v : instance.c) out.c.push_back(v * scale + seen[v]++);
  return out;
}

CountResult count_3sum(const ThreeSumInstance& instance, double eps, RngStream& rng, const CountOptions& options) {
  if (!(eps > 0.0 && eps < 1.0)) throw ContractViolation("count_3sum: eps must lie in (0,1)");
  instance.validate();
  const auto n = static_cast<double>(instance.n());
  if (instance.n() == 0 || eps <= std::pow(n, -3.0)) {
    CountResult exact;
    exact.estimate = count_3sum_exact(instance);
    exact.exact_fallback = true;
    return exact;
  }
  const auto normalized = normalize_for_tuple_count(instance);
  const auto oracles = three_sum_oracles(normalized);
  return run_edge_count(oracles, eps, rng, options);
}

}  // namespace fgcount
