#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "fgcount/counting.hpp"
#include "fgcount/oracle.hpp"

namespace fgcount {

struct WeightedEdge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  std::int64_t w = 0;
};

/// Tripartite graph on vertices 0..vertex_count-1 with integer edge weights.
/// Absent edges carry no weight (they are not zero-weight edges).
struct NwtInstance {
  std::size_t vertex_count = 0;
  std::vector<std::uint32_t> part_a;
  std::vector<std::uint32_t> part_b;
  std::vector<std::uint32_t> part_c;
  std::vector<WeightedEdge> edges;
  std::int64_t weight_bound = 1;

  std::size_t n() const { return vertex_count; }
  /// Parts disjoint, every edge joins two different parts, no repeated
  /// edges, weights within [-weight_bound, weight_bound].
  void validate() const;
};

/// Dense symmetric weight table for an NwtInstance.
class WeightMatrix {
 public:
  static constexpr std::int64_t kAbsent = std::numeric_limits<std::int64_t>::min();

  explicit WeightMatrix(const NwtInstance& instance);

  bool has(std::uint32_t u, std::uint32_t v) const { return at(u, v) != kAbsent; }
  std::int64_t at(std::uint32_t u, std::uint32_t v) const { return w_[u * size_ + v]; }

 private:
  std::size_t size_;
  std::vector<std::int64_t> w_;
};

using NwtDecision = std::function<bool(const NwtInstance&)>;

/// Is there a triangle abc with w(a,b) + w(b,c) + w(c,a) < 0? Checks every
/// (a, b, c) ∈ A × B × C.
bool decide_nwt(const NwtInstance& instance);

std::uint64_t count_nwt_exact(const NwtInstance& instance);

struct Arc {
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  std::int64_t w = 0;
};

struct WeightedDigraph {
  std::size_t vertex_count = 0;
  std::vector<Arc> arcs;
};

/// All-pairs shortest-path distances; kInfinity marks unreachable pairs.
class ApspMatrix {
 public:
  static constexpr std::int64_t kInfinity = std::numeric_limits<std::int64_t>::max();

  explicit ApspMatrix(std::size_t n);

  std::size_t size() const { return n_; }
  std::int64_t at(std::size_t from, std::size_t to) const { return d_[from * n_ + to]; }
  std::int64_t& at(std::size_t from, std::size_t to) { return d_[from * n_ + to]; }
  bool finite(std::size_t from, std::size_t to) const { return at(from, to) != kInfinity; }

 private:
  std::size_t n_;
  std::vector<std::int64_t> d_;
};

/// Cubic all-pairs shortest paths. The graph must have no negative cycle;
/// graphs above `max_vertices` are rejected with CapExceeded.
ApspMatrix floyd_warshall(const WeightedDigraph& graph, std::size_t max_vertices = 3000);

/// G' on V × {1,2,3}: every edge {u,v} yields arcs (u,i)→(v,i+1) and
/// (v,i)→(u,i+1) for i = 1, 2 with the weight copied. Vertex (v, i) has id
/// (i-1)·vertex_count + v.
struct ApspReduction {
  WeightedDigraph graph;
  /// True iff some edge {u,v} has dist[(u,1)][(v,3)] + w(u,v) < 0.
  std::function<bool(const ApspMatrix&)> check;
};

ApspReduction nwt_to_apsp(const NwtInstance& instance);

bool decide_nwt_via_apsp(const NwtInstance& instance);

/// U = A; V = edges of G inside B ∪ C (in input order); (a, {b,c}) ∈ E iff
/// abc is a negative triangle. Independence of X is decided on G_X, which
/// keeps the edges meeting X ∩ A and the B–C edges in X.
BipartiteOracles nwt_oracles(const NwtInstance& instance, NwtDecision decision = decide_nwt);

/// (1±eps)-approximation of the negative triangle count with probability
/// >= 2/3; exact when eps < n⁻³ (n = vertex count).
CountResult count_nwt(const NwtInstance& instance, double eps, RngStream& rng, const CountOptions& options = {});

}  // namespace fgcount
