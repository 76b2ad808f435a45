#include "fgcount/oracle.hpp"

#include <algorithm>

#include "fgcount/errors.hpp"

namespace fgcount {

void VertexSubset::normalize() {
  for (auto* side : {&left, &right}) {
    std::sort(side->begin(), side->end());
    side->erase(std::unique(side->begin(), side->end()), side->end());
  }
}

BipartiteOracles::BipartiteOracles(std::size_t left_size, std::size_t right_size,
                                   IndependenceFn independence, AdjacencyFn adjacency,
                                   bool deterministic)
    : left_size_(left_size),
      right_size_(right_size),
      independence_(std::move(independence)),
      adjacency_(std::move(adjacency)),
      deterministic_(deterministic) {
  if (!independence_ || !adjacency_) {
    throw ContractViolation("BipartiteOracles: both oracle procedures are required");
  }
}

BipartiteOracles::BipartiteOracles(BipartiteOracles&& other) noexcept
    : left_size_(other.left_size_),
      right_size_(other.right_size_),
      independence_(std::move(other.independence_)),
      adjacency_(std::move(other.adjacency_)),
      deterministic_(other.deterministic_),
      independence_calls_(other.independence_calls_.load()),
      adjacency_calls_(other.adjacency_calls_.load()) {}

bool BipartiteOracles::independent(const VertexSubset& subset, RngStream& rng) const {
  independence_calls_.fetch_add(1, std::memory_order_relaxed);
  return independence_(subset, rng);
}

bool BipartiteOracles::independent(const VertexSubset& subset) const {
  RngStream scratch(0, "deterministic-oracle");
  return independent(subset, scratch);
}

bool BipartiteOracles::adjacent(std::uint32_t left, std::uint32_t right) const {
  adjacency_calls_.fetch_add(1, std::memory_order_relaxed);
  return adjacency_(left, right);
}

bool BipartiteOracles::adjacent(VertexId a, VertexId b) const {
  if (a.side == b.side) return false;
  if (a.side == Side::Right) std::swap(a, b);
  return adjacent(a.index, b.index);
}

void BipartiteOracles::reset_counters() {
  independence_calls_.store(0);
  adjacency_calls_.store(0);
}

EdgeListGraph::EdgeListGraph(std::size_t left_size, std::size_t right_size,
                             std::vector<std::pair<std::uint32_t, std::uint32_t>> edges)
    : left_size_(left_size), right_size_(right_size), adj_left_(left_size), adj_right_(right_size) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (auto [u, v] : edges) {
    if (u >= left_size || v >= right_size) {
      throw ContractViolation("EdgeListGraph: edge endpoint out of range");
    }
    adj_left_[u].push_back(v);
    adj_right_[v].push_back(u);
  }
  edge_count_ = edges.size();
}

bool EdgeListGraph::has_edge(std::uint32_t u, std::uint32_t v) const {
  const auto& nb = adj_left_[u];
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::uint64_t EdgeListGraph::edges_into(std::span<const std::uint32_t> right_subset) const {
  std::uint64_t total = 0;
  for (auto v : right_subset) total += adj_right_[v].size();
  return total;
}

std::size_t EdgeListGraph::left_neighborhood_size(std::span<const std::uint32_t> right_subset) const {
  std::vector<char> seen(left_size_, 0);
  std::size_t count = 0;
  for (auto v : right_subset) {
    for (auto u : adj_right_[v]) {
      if (!seen[u]) {
        seen[u] = 1;
        ++count;
      }
    }
  }
  return count;
}

bool EdgeListGraph::is_independent(const VertexSubset& subset) const {
  if (subset.left.empty() || subset.right.empty()) return true;
  std::vector<char> in_right(right_size_, 0);
  for (auto v : subset.right) in_right[v] = 1;
  for (auto u : subset.left) {
    for (auto v : adj_left_[u]) {
      if (in_right[v]) return false;
    }
  }
  return true;
}

BipartiteOracles EdgeListGraph::oracles() const {
  auto shared = std::make_shared<const EdgeListGraph>(*this);
  return BipartiteOracles(
      left_size_, right_size_,
      [shared](const VertexSubset& s, RngStream&) { return shared->is_independent(s); },
      [shared](std::uint32_t u, std::uint32_t v) { return shared->has_edge(u, v); });
}

}  // namespace fgcount
