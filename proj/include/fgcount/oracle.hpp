#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "fgcount/rng.hpp"

namespace fgcount {

enum class Side : std::uint8_t { Left, Right };

struct VertexId {
  Side side = Side::Left;
  std::uint32_t index = 0;

  friend auto operator<=>(const VertexId&, const VertexId&) = default;
};

/// A vertex subset of a bipartite graph, stored as sorted, duplicate-free
/// index lists per side. Oracles answer on set contents only.
struct VertexSubset {
  std::vector<std::uint32_t> left;
  std::vector<std::uint32_t> right;

  bool empty() const { return left.empty() && right.empty(); }
  std::size_t size() const { return left.size() + right.size(); }
  /// Sorts and deduplicates both sides.
  void normalize();
};

/// A hidden bipartite graph G = (U, V, E) seen only through its
/// independence and adjacency oracles.
///
/// The independence procedure receives an RngStream so randomized deciders
/// fit the same interface; deterministic procedures ignore it. Call counters
/// belong to the object and count every procedure invocation.
class BipartiteOracles {
 public:
  using IndependenceFn = std::function<bool(const VertexSubset&, RngStream&)>;
  using AdjacencyFn = std::function<bool(std::uint32_t left, std::uint32_t right)>;

  BipartiteOracles(std::size_t left_size, std::size_t right_size, IndependenceFn independence,
                   AdjacencyFn adjacency, bool deterministic = true);

  BipartiteOracles(const BipartiteOracles&) = delete;
  BipartiteOracles& operator=(const BipartiteOracles&) = delete;
  BipartiteOracles(BipartiteOracles&& other) noexcept;
  BipartiteOracles& operator=(BipartiteOracles&&) = delete;

  std::size_t left_size() const { return left_size_; }
  std::size_t right_size() const { return right_size_; }
  /// |U ∪ V|.
  std::size_t n() const { return left_size_ + right_size_; }
  /// False when the independence procedure may err (and needs amplification).
  bool deterministic() const { return deterministic_; }

  /// True iff no edge has both endpoints in `subset`.
  bool independent(const VertexSubset& subset, RngStream& rng) const;
  /// Convenience for deterministic oracles; uses a throwaway stream.
  bool independent(const VertexSubset& subset) const;
  bool adjacent(std::uint32_t left, std::uint32_t right) const;
  /// VertexId form; returns false unless one endpoint is on each side.
  bool adjacent(VertexId a, VertexId b) const;

  std::uint64_t independence_calls() const { return independence_calls_.load(); }
  std::uint64_t adjacency_calls() const { return adjacency_calls_.load(); }
  void reset_counters();

 private:
  std::size_t left_size_;
  std::size_t right_size_;
  IndependenceFn independence_;
  AdjacencyFn adjacency_;
  bool deterministic_;
  mutable std::atomic<std::uint64_t> independence_calls_{0};
  mutable std::atomic<std::uint64_t> adjacency_calls_{0};
};

/// An explicit bipartite graph, used for synthetic instances and as a
/// ground-truth oracle in tests.
class EdgeListGraph {
 public:
  EdgeListGraph(std::size_t left_size, std::size_t right_size,
                std::vector<std::pair<std::uint32_t, std::uint32_t>> edges);

  std::size_t left_size() const { return left_size_; }
  std::size_t right_size() const { return right_size_; }
  std::uint64_t edge_count() const { return edge_count_; }

  const std::vector<std::uint32_t>& neighbors_of_left(std::uint32_t u) const { return adj_left_[u]; }
  const std::vector<std::uint32_t>& neighbors_of_right(std::uint32_t v) const { return adj_right_[v]; }
  std::size_t right_degree(std::uint32_t v) const { return adj_right_[v].size(); }
  bool has_edge(std::uint32_t u, std::uint32_t v) const;
  /// Number of edges between U and the right-side subset X.
  std::uint64_t edges_into(std::span<const std::uint32_t> right_subset) const;
  /// |U_X|: left vertices with a neighbour in X.
  std::size_t left_neighborhood_size(std::span<const std::uint32_t> right_subset) const;
  bool is_independent(const VertexSubset& subset) const;

  /// Oracles that share ownership of this graph's adjacency structure.
  BipartiteOracles oracles() const;

 private:
  std::size_t left_size_;
  std::size_t right_size_;
  std::uint64_t edge_count_ = 0;
  std::vector<std::vector<std::uint32_t>> adj_left_;
  std::vector<std::vector<std::uint32_t>> adj_right_;
};

}  // namespace fgcount
