#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "fgcount/errors.hpp"
#include "fgcount/nwt.hpp"
#include "fgcount/ov.hpp"
#include "fgcount/threesum.hpp"

using namespace fgcount;

namespace {

// ---- independent reference implementations ----

std::uint64_t cubic_3sum(const ThreeSumInstance& g) {
  std::uint64_t n = 0;
  for (auto a : g.a) {
    for (auto b : g.b) {
      for (auto c : g.c) n += a + b == c;
    }
  }
  return n;
}

bool naive_orthogonal(const std::vector<std::uint8_t>& x, const std::vector<std::uint8_t>& y) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] && y[i]) return false;
  }
  return true;
}

struct PlainOv {
  std::vector<std::vector<std::uint8_t>> a;
  std::vector<std::vector<std::uint8_t>> b;
  OvInstance packed;

  std::uint64_t count() const {
    std::uint64_t n = 0;
    for (const auto& x : a) {
      for (const auto& y : b) n += naive_orthogonal(x, y);
    }
    return n;
  }
};

PlainOv random_ov(std::size_t na, std::size_t nb, std::size_t d, double p, RngStream& rng) {
  PlainOv out{{}, {}, OvInstance(d)};
  auto draw = [&] {
    std::vector<std::uint8_t> v(d);
    for (auto& bit : v) bit = rng.bernoulli(p);
    return v;
  };
  for (std::size_t i = 0; i < na; ++i) {
    out.a.push_back(draw());
    out.packed.add_a(out.a.back());
  }
  for (std::size_t j = 0; j < nb; ++j) {
    out.b.push_back(draw());
    out.packed.add_b(out.b.back());
  }
  return out;
}

ThreeSumInstance random_3sum(std::size_t na, std::size_t nb, std::size_t nc, std::int64_t bound, RngStream& rng) {
  ThreeSumInstance g;
  g.bound = bound;
  for (std::size_t i = 0; i < na; ++i) g.a.push_back(rng.uniform_int(-bound / 2, bound / 2));
  for (std::size_t i = 0; i < nb; ++i) g.b.push_back(rng.uniform_int(-bound / 2, bound / 2));
  for (std::size_t i = 0; i < nc; ++i) g.c.push_back(rng.uniform_int(-bound, bound));
  return g;
}

/// Vertices 0..pa-1 in A, then B, then C; each cross-part edge present with
/// probability p.
NwtInstance random_nwt(std::size_t pa, std::size_t pb, std::size_t pc, double p, std::int64_t w, RngStream& rng) {
  NwtInstance g;
  g.vertex_count = pa + pb + pc;
  g.weight_bound = w;
  std::uint32_t id = 0;
  for (std::size_t i = 0; i < pa; ++i) g.part_a.push_back(id++);
  for (std::size_t i = 0; i < pb; ++i) g.part_b.push_back(id++);
  for (std::size_t i = 0; i < pc; ++i) g.part_c.push_back(id++);
  auto connect = [&](const std::vector<std::uint32_t>& x, const std::vector<std::uint32_t>& y) {
    for (auto u : x) {
      for (auto v : y) {
        if (rng.bernoulli(p)) g.edges.push_back({u, v, rng.uniform_int(-w, w)});
      }
    }
  };
  connect(g.part_a, g.part_b);
  connect(g.part_b, g.part_c);
  connect(g.part_a, g.part_c);
  return g;
}

std::uint64_t cubic_nwt(const NwtInstance& g) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::int64_t> w;
  for (const auto& e : g.edges) {
    w[{e.u, e.v}] = e.w;
    w[{e.v, e.u}] = e.w;
  }
  std::uint64_t n = 0;
  for (auto a : g.part_a) {
    for (auto b : g.part_b) {
      for (auto c : g.part_c) {
        auto ab = w.find({a, b});
        auto bc = w.find({b, c});
        auto ca = w.find({c, a});
        if (ab == w.end() || bc == w.end() || ca == w.end()) continue;
        n += ab->second + bc->second + ca->second < 0;
      }
    }
  }
  return n;
}

std::vector<std::int64_t> bellman_ford(const WeightedDigraph& g, std::uint32_t source) {
  constexpr auto inf = std::numeric_limits<std::int64_t>::max();
  std::vector<std::int64_t> d(g.vertex_count, inf);
  d[source] = 0;
  for (std::size_t round = 0; round + 1 < g.vertex_count; ++round) {
    bool changed = false;
    for (const auto& a : g.arcs) {
      if (d[a.from] != inf && d[a.from] + a.w < d[a.to]) {
        d[a.to] = d[a.from] + a.w;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return d;
}

/// Every edge inside `s`, checked against the adjacency oracle.
bool independent_by_adjacency(const BipartiteOracles& o, const VertexSubset& s) {
  for (auto u : s.left) {
    for (auto v : s.right) {
      if (o.adjacent(u, v)) return false;
    }
  }
  return true;
}

VertexSubset random_subset(std::size_t left, std::size_t right, double p, RngStream& rng) {
  VertexSubset s;
  for (std::uint32_t i = 0; i < left; ++i) {
    if (rng.bernoulli(p)) s.left.push_back(i);
  }
  for (std::uint32_t j = 0; j < right; ++j) {
    if (rng.bernoulli(p)) s.right.push_back(j);
  }
  return s;
}

void expect_consistent_exhaustively(const BipartiteOracles& o) {
  const std::size_t n = o.n();
  ASSERT_LE(n, 16U);
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    VertexSubset s;
    for (std::uint32_t i = 0; i < o.left_size(); ++i) {
      if (mask & (1U << i)) s.left.push_back(i);
    }
    for (std::uint32_t j = 0; j < o.right_size(); ++j) {
      if (mask & (1U << (o.left_size() + j))) s.right.push_back(j);
    }
    ASSERT_EQ(o.independent(s), independent_by_adjacency(o, s)) << "mask " << mask;
  }
}

}  // namespace

// ---------------------------------------------------------------- 3SUM

TEST(ThreeSum, DecideExamples) {
  EXPECT_TRUE(decide_3sum({{1}, {2}, {3}, 10}));
  EXPECT_FALSE(decide_3sum({{1}, {2}, {4}, 10}));
  EXPECT_FALSE(decide_3sum({{}, {2}, {4}, 10}));
}

TEST(ThreeSum, DecideAgreesWithCubic) {
  RngStream rng(1, "3sum-decide");
  int yes = 0;
  for (int i = 0; i < 300; ++i) {
    const auto g = random_3sum(20, 20, 20, 1000, rng);
    const bool expected = cubic_3sum(g) > 0;
    ASSERT_EQ(decide_3sum(g), expected);
    yes += expected;
  }
  EXPECT_GT(yes, 0);
  EXPECT_LT(yes, 300);
}

TEST(ThreeSum, ExactCountsMultiplicity) {
  const ThreeSumInstance g{{0, 0}, {0, 0}, {0}, 1};
  EXPECT_EQ(count_3sum_exact(g), 4U);
  RngStream rng(2, "3sum-exact");
  for (int i = 0; i < 50; ++i) {
    const auto h = random_3sum(30, 30, 30, 40, rng);
    EXPECT_EQ(count_3sum_exact(h), cubic_3sum(h));
  }
}

TEST(ThreeSum, ValidateRejectsOutOfBound) {
  EXPECT_THROW((ThreeSumInstance{{5}, {0}, {0}, 4}).validate(), ContractViolation);
  EXPECT_THROW((ThreeSumInstance{{0}, {0}, {0}, 0}).validate(), ContractViolation);
  EXPECT_THROW((ThreeSumInstance{{0}, {0}, {0}, kThreeSumMaxBound + 1}).validate(), ContractViolation);
}

TEST(ThreeSum, OracleExamples) {
  const auto o = three_sum_oracles({{1}, {2}, {3}, 10});
  EXPECT_TRUE(o.independent(VertexSubset{}));
  EXPECT_TRUE(o.adjacent(0, 0));
  EXPECT_FALSE(o.independent(VertexSubset{{0}, {0}}));
}

TEST(ThreeSum, OracleConsistencyExhaustive) {
  RngStream rng(3, "3sum-exh");
  for (int i = 0; i < 20; ++i) {
    const auto g = random_3sum(7, 7, 10, 8, rng);
    expect_consistent_exhaustively(three_sum_oracles(g));
  }
}

TEST(ThreeSum, OracleConsistencyRandomSubsets) {
  RngStream rng(4, "3sum-rand");
  const auto g = random_3sum(70, 70, 60, 3000, rng);
  ThreeSumDecision checked = [](const ThreeSumInstance& sub) {
    sub.validate();
    return decide_3sum(sub);
  };
  const auto o = three_sum_oracles(g, checked);
  for (int i = 0; i < 500; ++i) {
    const auto s = random_subset(70, 70, rng.uniform01() * 0.4, rng);
    ASSERT_EQ(o.independent(s), independent_by_adjacency(o, s));
  }
}

TEST(ThreeSum, NormalizationPreservesTupleCount) {
  RngStream rng(5, "3sum-norm");
  for (int i = 0; i < 200; ++i) {
    // Tiny ranges force repeats in every list.
    const auto g = random_3sum(1 + rng.uniform(12), 1 + rng.uniform(12), 1 + rng.uniform(12), 3, rng);
    const auto h = normalize_for_tuple_count(g);
    h.validate();
    auto c = h.c;
    std::sort(c.begin(), c.end());
    ASSERT_EQ(std::adjacent_find(c.begin(), c.end()), c.end());
    const auto o = three_sum_oracles(h);
    std::uint64_t pairs = 0;
    for (std::uint32_t u = 0; u < o.left_size(); ++u) {
      for (std::uint32_t v = 0; v < o.right_size(); ++v) pairs += o.adjacent(u, v);
    }
    ASSERT_EQ(pairs, cubic_3sum(g)) << i;
  }
}

TEST(ThreeSum, CountExamples) {
  RngStream rng(6, "3sum-count");
  EXPECT_EQ(count_3sum({{1, 2}, {3, 4}, {100}, 100}, 0.5, rng).estimate, 0);
  const auto r = count_3sum({{0, 0}, {0, 0}, {0}, 1}, 0.1, rng);
  EXPECT_EQ(r.estimate, 4);
  EXPECT_THROW(count_3sum({{0}, {0}, {0}, 1}, 0.0, rng), ContractViolation);
}

TEST(ThreeSum, ExactRegimesMatchBruteForce) {
  RngStream rng(7, "3sum-fallback");
  for (int i = 0; i < 50; ++i) {
    const auto g = random_3sum(100, 100, 100, 200, rng);
    const double n = static_cast<double>(g.n());
    const auto tiny = count_3sum(g, std::pow(n, -3.0), rng);
    EXPECT_TRUE(tiny.exact_fallback);
    EXPECT_EQ(tiny.estimate, cubic_3sum(g));
    const auto small = count_3sum(g, 0.3, rng);
    EXPECT_EQ(small.edge_count.exit, EdgeCountExit::SmallGraph);
    EXPECT_EQ(small.estimate, cubic_3sum(g));
  }
}

// ---------------------------------------------------------------- OV

TEST(Ov, DecideExamples) {
  OvInstance g(2);
  g.add_a(std::vector<std::uint8_t>{1, 0});
  g.add_b(std::vector<std::uint8_t>{0, 1});
  EXPECT_TRUE(decide_ov(g));
  OvInstance h(2);
  h.add_a(std::vector<std::uint8_t>{1, 1});
  h.add_b(std::vector<std::uint8_t>{1, 0});
  EXPECT_FALSE(decide_ov(h));
}

TEST(Ov, PackingRoundTrips) {
  RngStream rng(8, "ov-pack");
  const auto g = random_ov(5, 5, 130, 0.5, rng);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t k = 0; k < 130; ++k) {
      EXPECT_EQ(g.packed.a_bit(i, k), g.a[i][k] != 0);
      EXPECT_EQ(g.packed.b_bit(i, k), g.b[i][k] != 0);
    }
  }
  EXPECT_EQ(g.packed.words(), 3U);
  EXPECT_THROW(OvInstance(3).add_a(std::vector<std::uint8_t>{1, 0}), ContractViolation);
}

TEST(Ov, DecideAgreesWithNaive) {
  RngStream rng(9, "ov-decide");
  int yes = 0;
  for (int i = 0; i < 300; ++i) {
    const auto g = random_ov(40, 40, 32, 0.45, rng);
    const bool expected = g.count() > 0;
    ASSERT_EQ(decide_ov(g.packed), expected);
    ASSERT_EQ(count_ov_exact(g.packed), g.count());
    yes += expected;
  }
  EXPECT_GT(yes, 0);
  EXPECT_LT(yes, 300);
}

TEST(Ov, OracleConsistency) {
  RngStream rng(10, "ov-oracle");
  for (int i = 0; i < 20; ++i) {
    const auto g = random_ov(7, 7, 6, 0.4, rng);
    expect_consistent_exhaustively(ov_oracles(g.packed));
  }
  const auto big = random_ov(100, 100, 40, 0.5, rng);
  OvDecision checked = [](const OvInstance& sub) { return decide_ov(sub); };
  const auto o = ov_oracles(big.packed, checked);
  for (int i = 0; i < 500; ++i) {
    const auto s = random_subset(100, 100, rng.uniform01() * 0.5, rng);
    ASSERT_EQ(o.independent(s), independent_by_adjacency(o, s));
  }
}

TEST(Ov, CountExamples) {
  RngStream rng(11, "ov-count");
  OvInstance ones(4);
  for (int i = 0; i < 5; ++i) {
    ones.add_a(std::vector<std::uint8_t>{1, 1, 1, 1});
    ones.add_b(std::vector<std::uint8_t>{1, 1, 1, 1});
  }
  EXPECT_EQ(count_ov(ones, 0.5, rng).estimate, 0);

  OvInstance zeros(8);
  for (int i = 0; i < 600; ++i) {
    zeros.add_a(std::vector<std::uint8_t>(8, 0));
    zeros.add_b(std::vector<std::uint8_t>(8, 0));
  }
  const auto r = count_ov(zeros, 0.5, rng);
  EXPECT_EQ(r.edge_count.exit, EdgeCountExit::SmallGraph);
  EXPECT_EQ(r.estimate, 600 * 600);
}

TEST(Ov, ExactRegimesMatchBruteForce) {
  RngStream rng(12, "ov-fallback");
  for (int i = 0; i < 50; ++i) {
    const auto g = random_ov(60, 60, 16, 0.3, rng);
    const double n = static_cast<double>(g.packed.n());
    const auto tiny = count_ov(g.packed, std::pow(n, -2.0), rng);
    EXPECT_TRUE(tiny.exact_fallback);
    EXPECT_EQ(tiny.estimate, g.count());
    EXPECT_EQ(count_ov(g.packed, 0.3, rng).estimate, g.count());
  }
}

// ---------------------------------------------------------------- NWT

namespace {

NwtInstance single_triangle(std::int64_t ab, std::int64_t bc, std::int64_t ca) {
  NwtInstance g;
  g.vertex_count = 3;
  g.part_a = {0};
  g.part_b = {1};
  g.part_c = {2};
  g.weight_bound = 10;
  g.edges = {{0, 1, ab}, {1, 2, bc}, {2, 0, ca}};
  return g;
}

}  // namespace

TEST(Nwt, DecideExamples) {
  EXPECT_TRUE(decide_nwt(single_triangle(1, 1, -3)));
  EXPECT_FALSE(decide_nwt(single_triangle(1, 1, -1)));
  EXPECT_EQ(count_nwt_exact(single_triangle(1, 1, -3)), 1U);
}

TEST(Nwt, ValidateRejectsMalformed) {
  auto g = single_triangle(1, 1, 1);
  g.edges.push_back({1, 0, 2});
  EXPECT_THROW(g.validate(), ContractViolation);
  g = single_triangle(1, 1, 11);
  EXPECT_THROW(g.validate(), ContractViolation);
  g = single_triangle(1, 1, 1);
  g.part_b.push_back(0);
  EXPECT_THROW(g.validate(), ContractViolation);
  g = single_triangle(1, 1, 1);
  g.vertex_count = 4;
  g.part_a.push_back(3);
  g.edges.push_back({0, 3, 1});
  EXPECT_THROW(g.validate(), ContractViolation);
}

TEST(Nwt, ApspExamples) {
  const auto tri = nwt_to_apsp(single_triangle(1, 1, -3));
  const auto d = floyd_warshall(tri.graph);
  EXPECT_TRUE(tri.check(d));
  // (u,1) → (v,3) through the third vertex: the two non-(u,v) edges.
  EXPECT_EQ(d.at(0, 2 * 3 + 1), -2);

  NwtInstance path;
  path.vertex_count = 3;
  path.part_a = {0};
  path.part_b = {1};
  path.part_c = {2};
  path.weight_bound = 10;
  path.edges = {{0, 1, -5}, {1, 2, -5}};
  const auto p = nwt_to_apsp(path);
  EXPECT_FALSE(p.check(floyd_warshall(p.graph)));
}

TEST(FloydWarshall, Examples) {
  WeightedDigraph g{3, {{0, 1, 5}}};
  const auto d = floyd_warshall(g);
  EXPECT_EQ(d.at(0, 1), 5);
  EXPECT_FALSE(d.finite(1, 0));
  EXPECT_FALSE(d.finite(0, 2));
  EXPECT_EQ(d.at(2, 2), 0);

  WeightedDigraph h{3, {{0, 1, 2}, {1, 2, -4}}};
  EXPECT_EQ(floyd_warshall(h).at(0, 2), -2);

  EXPECT_THROW(floyd_warshall(WeightedDigraph{10, {}}, 5), CapExceeded);
  EXPECT_THROW(floyd_warshall(WeightedDigraph{2, {{0, 1, -1}, {1, 0, -1}}}), ContractViolation);
}

TEST(FloydWarshall, MatchesBellmanFordOnLayeredDags) {
  RngStream rng(13, "fw");
  for (int i = 0; i < 5; ++i) {
    const auto g = random_nwt(7, 7, 6, 0.5, 50, rng);  // 20 vertices, 60 in G'
    const auto red = nwt_to_apsp(g);
    const auto d = floyd_warshall(red.graph);
    for (std::uint32_t s = 0; s < red.graph.vertex_count; ++s) {
      const auto bf = bellman_ford(red.graph, s);
      for (std::uint32_t t = 0; t < red.graph.vertex_count; ++t) ASSERT_EQ(d.at(s, t), bf[t]);
    }
  }
}

TEST(Nwt, DecideMatchesApspReduction) {
  RngStream rng(14, "nwt-cross");
  int yes = 0;
  for (int i = 0; i < 100; ++i) {
    const auto g = random_nwt(15, 15, 15, 0.3, 100, rng);
    const bool expected = decide_nwt(g);
    ASSERT_EQ(decide_nwt_via_apsp(g), expected) << i;
    ASSERT_EQ(count_nwt_exact(g), cubic_nwt(g));
    yes += expected;
  }
  EXPECT_GT(yes, 0);
}

TEST(Nwt, OracleConsistency) {
  RngStream rng(15, "nwt-oracle");
  for (int i = 0; i < 20; ++i) {
    const auto g = random_nwt(6, 3, 3, 0.8, 10, rng);
    const auto o = nwt_oracles(g);
    if (o.n() > 16) continue;
    expect_consistent_exhaustively(o);
  }
  const auto big = random_nwt(20, 15, 15, 0.5, 30, rng);
  NwtDecision checked = [](const NwtInstance& sub) {
    sub.validate();
    return decide_nwt(sub);
  };
  const auto o = nwt_oracles(big, checked);
  EXPECT_EQ(o.left_size(), 20U);
  std::uint64_t pairs = 0;
  for (std::uint32_t u = 0; u < o.left_size(); ++u) {
    for (std::uint32_t v = 0; v < o.right_size(); ++v) pairs += o.adjacent(u, v);
  }
  EXPECT_EQ(pairs, cubic_nwt(big));
  for (int i = 0; i < 500; ++i) {
    const auto s = random_subset(o.left_size(), o.right_size(), rng.uniform01() * 0.3, rng);
    ASSERT_EQ(o.independent(s), independent_by_adjacency(o, s));
  }
}

TEST(Nwt, CountExamples) {
  RngStream rng(16, "nwt-count");
  EXPECT_EQ(count_nwt(single_triangle(1, 1, 1), 0.5, rng).estimate, 0);
  EXPECT_EQ(count_nwt(single_triangle(1, 1, -3), 0.5, rng).estimate, 1);
}

TEST(Nwt, ExactRegimesMatchBruteForce) {
  RngStream rng(17, "nwt-fallback");
  for (int i = 0; i < 50; ++i) {
    const auto g = random_nwt(10, 10, 10, 0.5, 100, rng);
    const double n = static_cast<double>(g.n());
    const auto tiny = count_nwt(g, 0.5 * std::pow(n, -3.0), rng);
    EXPECT_TRUE(tiny.exact_fallback);
    EXPECT_EQ(tiny.estimate, cubic_nwt(g));
    EXPECT_EQ(count_nwt(g, 0.3, rng).estimate, cubic_nwt(g));
  }
}
