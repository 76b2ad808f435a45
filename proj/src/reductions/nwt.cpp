#include "fgcount/nwt.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>
#include <utility>

#include "fgcount/errors.hpp"

namespace fgcount {

void NwtInstance::validate() const {
  if (weight_bound <= 0) throw ContractViolation("nwt: weight bound must be positive");
  std::vector<int> part(vertex_count, -1);
  int label = 0;
  for (const auto* p : {&part_a, &part_b, &part_c}) {
    for (auto v : *p) {
      if (v >= vertex_count) throw ContractViolation("nwt: part member out of range");
      if (part[v] != -1) throw ContractViolation("nwt: parts must be disjoint");
      part[v] = label;
    }
    ++label;
  }
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  for (const auto& e : edges) {
    if (e.u >= vertex_count || e.v >= vertex_count) throw ContractViolation("nwt: edge endpoint out of range");
    if (part[e.u] < 0 || part[e.v] < 0 || part[e.u] == part[e.v]) {
      throw ContractViolation("nwt: edges must join two different parts");
    }
    if (e.w < -weight_bound || e.w > weight_bound) throw ContractViolation("nwt: weight exceeds bound");
    if (!seen.insert(std::minmax(e.u, e.v)).second) throw ContractViolation("nwt: repeated edge");
  }
}

WeightMatrix::WeightMatrix(const NwtInstance& instance)
    : size_(instance.vertex_count), w_(size_ * size_, kAbsent) {
  for (const auto& e : instance.edges) {
    w_[e.u * size_ + e.v] = e.w;
    w_[e.v * size_ + e.u] = e.w;
  }
}

namespace {

template <class Visit>
void for_each_negative_triangle(const NwtInstance& g, const WeightMatrix& w, Visit&& visit) {
  for (auto a : g.part_a) {
    for (auto b : g.part_b) {
      if (!w.has(a, b)) continue;
      const std::int64_t ab = w.at(a, b);
      for (auto c : g.part_c) {
        if (!w.has(a, c) || !w.has(b, c)) continue;
        if (ab + w.at(b, c) + w.at(a, c) < 0) {
          if (!visit(a, b, c)) return;
        }
      }
    }
  }
}

}  // namespace

bool decide_nwt(const NwtInstance& instance) {
  const WeightMatrix w(instance);
  bool found = false;
  for_each_negative_triangle(instance, w, [&](auto, auto, auto) {
    found = true;
    return false;
  });
  return found;
}

std::uint64_t count_nwt_exact(const NwtInstance& instance) {
  const WeightMatrix w(instance);
  std::uint64_t total = 0;
  for_each_negative_triangle(instance, w, [&](auto, auto, auto) {
    ++total;
    return true;
  });
  return total;
}

ApspMatrix::ApspMatrix(std::size_t n) : n_(n), d_(n * n, kInfinity) {}

ApspMatrix floyd_warshall(const WeightedDigraph& graph, std::size_t max_vertices) {
  const std::size_t n = graph.vertex_count;
  if (n > max_vertices) throw CapExceeded("floyd_warshall: graph exceeds the vertex cap");
  ApspMatrix d(n);
  for (std::size_t v = 0; v < n; ++v) d.at(v, v) = 0;
  for (const auto& arc : graph.arcs) {
    if (arc.from >= n || arc.to >= n) throw ContractViolation("floyd_warshall: arc endpoint out of range");
    d.at(arc.from, arc.to) = std::min(d.at(arc.from, arc.to), arc.w);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::int64_t ik = d.at(i, k);
      if (ik == ApspMatrix::kInfinity) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const std::int64_t kj = d.at(k, j);
        if (kj == ApspMatrix::kInfinity) continue;
        if (ik + kj < d.at(i, j)) d.at(i, j) = ik + kj;
      }
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (d.at(v, v) < 0) throw ContractViolation("floyd_warshall: negative cycle");
  }
  return d;
}

ApspReduction nwt_to_apsp(const NwtInstance& instance) {
  instance.validate();
  const auto n = static_cast<std::uint32_t>(instance.vertex_count);
  ApspReduction out;
  out.graph.vertex_count = 3 * static_cast<std::size_t>(n);
  for (std::uint32_t layer = 0; layer < 2; ++layer) {
    for (const auto& e : instance.edges) {
      out.graph.arcs.push_back({layer * n + e.u, (layer + 1) * n + e.v, e.w});
      out.graph.arcs.push_back({layer * n + e.v, (layer + 1) * n + e.u, e.w});
    }
  }
  auto edges = std::make_shared<const std::vector<WeightedEdge>>(instance.edges);
  out.check = [edges, n](const ApspMatrix& dist) {
    for (const auto& e : *edges) {
      for (auto [from, to] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
        const std::int64_t path = dist.at(from, 2 * static_cast<std::size_t>(n) + to);
        if (path != ApspMatrix::kInfinity && path + e.w < 0) return true;
      }
    }
    return false;
  };
  return out;
}

bool decide_nwt_via_apsp(const NwtInstance& instance) {
  const auto reduction = nwt_to_apsp(instance);
  return reduction.check(floyd_warshall(reduction.graph));
}

namespace {

struct NwtData {
  NwtInstance instance;
  WeightMatrix weights;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> right;  // (b, c) per right vertex
  std::vector<std::int64_t> right_weight;
  std::vector<std::vector<WeightedEdge>> incident_to_a;  // per index into part_a

  explicit NwtData(const NwtInstance& g) : instance(g), weights(g) {
    std::vector<char> in_b(g.vertex_count, 0);
    std::vector<char> in_c(g.vertex_count, 0);
    std::vector<int> a_pos(g.vertex_count, -1);
    for (auto v : g.part_b) in_b[v] = 1;
    for (auto v : g.part_c) in_c[v] = 1;
    for (std::size_t i = 0; i < g.part_a.size(); ++i) a_pos[g.part_a[i]] = static_cast<int>(i);
    incident_to_a.resize(g.part_a.size());
    for (const auto& e : g.edges) {
      if (a_pos[e.u] >= 0) {
        incident_to_a[a_pos[e.u]].push_back(e);
      } else if (a_pos[e.v] >= 0) {
        incident_to_a[a_pos[e.v]].push_back(e);
      } else if (in_b[e.u] && in_c[e.v]) {
        right.emplace_back(e.u, e.v);
        right_weight.push_back(e.w);
      } else if (in_c[e.u] && in_b[e.v]) {
        right.emplace_back(e.v, e.u);
        right_weight.push_back(e.w);
      }
    }
  }
};

}  // namespace

BipartiteOracles nwt_oracles(const NwtInstance& instance, NwtDecision decision) {
  instance.validate();
  auto data = std::make_shared<const NwtData>(instance);
  auto independence = [data, decision = std::move(decision)](const VertexSubset& s, RngStream&) {
    const auto& g = data->instance;
    NwtInstance sub;
    sub.vertex_count = g.vertex_count;
    sub.weight_bound = g.weight_bound;
    sub.part_b = g.part_b;
    sub.part_c = g.part_c;
    for (auto i : s.left) {
      sub.part_a.push_back(g.part_a[i]);
      const auto& inc = data->incident_to_a[i];
      sub.edges.insert(sub.edges.end(), inc.begin(), inc.end());
    }
    for (auto j : s.right) {
      sub.edges.push_back({data->right[j].first, data->right[j].second, data->right_weight[j]});
    }
    return !decision(sub);
  };
  auto adjacency = [data](std::uint32_t u, std::uint32_t v) {
    const auto a = data->instance.part_a[u];
    const auto [b, c] = data->right[v];
    const auto& w = data->weights;
    return w.has(a, b) && w.has(a, c) && w.at(a, b) + w.at(a, c) + data->right_weight[v] < 0;
  };
  const std::size_t right_size = data->right.size();
  return BipartiteOracles(instance.part_a.size(), right_size, std::move(independence), std::move(adjacency));
}

CountResult count_nwt(const NwtInstance& instance, double eps, RngStream& rng, const CountOptions& options) {
  if (!(eps > 0.0 && eps < 1.0)) throw ContractViolation("count_nwt: eps must lie in (0,1)");
  instance.validate();
  const auto n = static_cast<double>(instance.n());
  if (instance.n() == 0 || eps < std::pow(n, -3.0)) {
    CountResult exact;
    exact.estimate = count_nwt_exact(instance);
    exact.exact_fallback = true;
    return exact;
  }
  const auto oracles = nwt_oracles(instance);
  return run_edge_count(oracles, eps, rng, options);
}

}  // namespace fgcount
