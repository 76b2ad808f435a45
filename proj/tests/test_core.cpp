#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "fgcount/amplify.hpp"
#include "fgcount/errors.hpp"
#include "fgcount/oracle.hpp"
#include "fgcount/rng.hpp"

using namespace fgcount;

namespace {

std::vector<std::uint64_t> draw(RngStream s, int count) {
  std::vector<std::uint64_t> out;
  for (int i = 0; i < count; ++i) out.push_back(s.next_u64());
  return out;
}

EdgeListGraph random_graph(std::size_t left, std::size_t right, double p, std::uint64_t seed) {
  RngStream rng(seed, "graph");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t u = 0; u < left; ++u) {
    for (std::uint32_t v = 0; v < right; ++v) {
      if (rng.bernoulli(p)) edges.emplace_back(u, v);
    }
  }
  return EdgeListGraph(left, right, std::move(edges));
}

}  // namespace

TEST(RngStream, SameSeedAndLabelGiveIdenticalStreams) {
  EXPECT_EQ(draw(RngStream(7, "x"), 64), draw(RngStream(7, "x"), 64));
}

TEST(RngStream, DerivedLabelsDiffer) {
  RngStream master(42, "master");
  auto a = draw(derive_stream(master, "a"), 2);
  auto b = draw(derive_stream(master, "b"), 2);
  EXPECT_NE(a, b);
  // Frozen outputs; any change to the mixing or key schedule shows up here.
  EXPECT_EQ(a, (std::vector<std::uint64_t>{0x5110b897a76eb23dULL, 0x5c5a98fdda9034b4ULL}));
  EXPECT_EQ(b, (std::vector<std::uint64_t>{0xd0379825a9c76917ULL, 0x46fa7f68a223ba6bULL}));
}

TEST(RngStream, EmptyLabelIsDistinctFromZero) {
  RngStream master(1);
  EXPECT_NE(draw(derive_stream(master, ""), 4), draw(derive_stream(master, "0"), 4));
}

TEST(RngStream, DerivationIgnoresParentPosition) {
  RngStream fresh(9, "m");
  RngStream used(9, "m");
  for (int i = 0; i < 100; ++i) used.next_u64();
  EXPECT_EQ(draw(derive_stream(fresh, "k"), 8), draw(derive_stream(used, "k"), 8));
}

TEST(RngStream, UniformStaysInRangeAndCoversIt) {
  RngStream rng(3, "u");
  std::vector<int> hist(7, 0);
  for (int i = 0; i < 7000; ++i) {
    auto v = rng.uniform(7);
    ASSERT_LT(v, 7U);
    ++hist[v];
  }
  for (int h : hist) EXPECT_GT(h, 800);
  for (int i = 0; i < 1000; ++i) {
    auto v = rng.uniform_int(-5, 5);
    ASSERT_GE(v, -5);
    ASSERT_LE(v, 5);
  }
  EXPECT_THROW(rng.uniform(0), ContractViolation);
}

TEST(RngStream, BernoulliAndCoinMeans) {
  RngStream rng(11, "b");
  int heads = 0;
  int hits = 0;
  constexpr int kTrials = 100000;
  for (int i = 0; i < kTrials; ++i) {
    heads += rng.coin();
    hits += rng.bernoulli(0.2);
  }
  EXPECT_NEAR(heads / double(kTrials), 0.5, 0.01);
  EXPECT_NEAR(hits / double(kTrials), 0.2, 0.01);
  double sum = 0;
  for (int i = 0; i < kTrials; ++i) {
    double x = rng.uniform01();
    ASSERT_GE(x, 0.0);
    ASSERT_LT(x, 1.0);
    sum += x;
  }
  EXPECT_NEAR(sum / kTrials, 0.5, 0.01);
}

TEST(RngStream, ShuffleIsPermutation) {
  RngStream rng(5, "s");
  std::vector<int> v(50);
  for (int i = 0; i < 50; ++i) v[i] = i;
  rng.shuffle(std::span<int>(v));
  EXPECT_EQ(std::set<int>(v.begin(), v.end()).size(), 50U);
}

TEST(Amplify, RepetitionCount) {
  EXPECT_EQ(amplification_repetitions(0.5), 1U);
  EXPECT_EQ(amplification_repetitions(1.0 / 3.0), 1U);
  // 18·ln(200) = 95.37 -> 96 -> odd 97
  EXPECT_EQ(amplification_repetitions(0.01), 97U);
  for (double target : {0.3, 0.1, 0.01, 1e-4, 1e-9}) {
    const auto r = amplification_repetitions(target);
    EXPECT_EQ(r % 2, 1U);
    EXPECT_GE(static_cast<double>(r), 18.0 * std::log(2.0 / target));
    EXPECT_LT(static_cast<double>(r), 18.0 * std::log(2.0 / target) + 2.0);
  }
  EXPECT_THROW(amplification_repetitions(0.0), ContractViolation);
  EXPECT_THROW(amplification_repetitions(1.0), ContractViolation);
}

TEST(Amplify, AlwaysTrueBaseStaysTrue) {
  auto d = amplify<int>([](const int&, RngStream&) { return true; }, 0.001);
  RngStream rng(1, "t");
  for (int i = 0; i < 100; ++i) EXPECT_TRUE(d(i, rng));
}

TEST(Amplify, HighTargetIsSingleCall) {
  int calls = 0;
  auto d = amplify<int>(
      [&calls](const int& x, RngStream&) {
        ++calls;
        return x > 0;
      },
      0.5);
  EXPECT_EQ(d.repetitions(), 1U);
  RngStream rng(1, "t");
  EXPECT_TRUE(d(3, rng));
  EXPECT_FALSE(d(-3, rng));
  EXPECT_EQ(calls, 2);
}

TEST(Amplify, DeterministicBaseIsPassedThrough) {
  auto base = [](const int& x, RngStream&) { return x % 3 == 0; };
  auto d = amplify<int>(base, 1e-6, DeciderKind::Deterministic);
  EXPECT_EQ(d.repetitions(), 1U);
  RngStream rng(2, "d");
  for (int x = -20; x < 20; ++x) EXPECT_EQ(d(x, rng), x % 3 == 0);
}

TEST(Amplify, BiasedCoinMonteCarlo) {
  // Correct answer is "true"; base is right with probability exactly 2/3.
  auto base = [](const int&, RngStream& r) { return r.uniform(3) != 0; };
  const double target = 0.01;
  auto d = amplify<int>(base, target);
  RngStream rng(2024, "coin");
  constexpr int kTrials = 10000;
  int failures = 0;
  for (int i = 0; i < kTrials; ++i) failures += !d(0, rng);
  const double sigma = std::sqrt(target * (1 - target) / kTrials);
  EXPECT_LE(failures / double(kTrials), target + 3 * sigma);
}

TEST(VertexSubset, NormalizeSortsAndDedups) {
  VertexSubset s{{3, 1, 3}, {2, 2, 0}};
  s.normalize();
  EXPECT_EQ(s.left, (std::vector<std::uint32_t>{1, 3}));
  EXPECT_EQ(s.right, (std::vector<std::uint32_t>{0, 2}));
}

TEST(EdgeListGraph, IndependenceMatchesEdgeCountExhaustively) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto g = random_graph(7, 7, 0.3, seed);
    const auto oracles = g.oracles();
    for (std::uint32_t mask = 0; mask < (1U << 14); ++mask) {
      VertexSubset s;
      for (std::uint32_t i = 0; i < 7; ++i) {
        if (mask & (1U << i)) s.left.push_back(i);
        if (mask & (1U << (i + 7))) s.right.push_back(i);
      }
      std::uint64_t inside = 0;
      for (auto u : s.left) {
        for (auto v : s.right) inside += g.has_edge(u, v);
      }
      ASSERT_EQ(oracles.independent(s), inside == 0) << "mask " << mask;
    }
  }
}

TEST(EdgeListGraph, IndependenceMatchesOnRandomSubsetsUpTo64) {
  const auto g = random_graph(32, 32, 0.05, 77);
  const auto oracles = g.oracles();
  RngStream rng(77, "subsets");
  for (int trial = 0; trial < 2000; ++trial) {
    VertexSubset s;
    for (std::uint32_t i = 0; i < 32; ++i) {
      if (rng.bernoulli(0.2)) s.left.push_back(i);
      if (rng.bernoulli(0.2)) s.right.push_back(i);
    }
    std::uint64_t inside = 0;
    for (auto u : s.left) {
      for (auto v : s.right) inside += g.has_edge(u, v);
    }
    ASSERT_EQ(oracles.independent(s), inside == 0);
  }
}

TEST(BipartiteOracles, CountersIncreaseByOnePerQuery) {
  const auto g = random_graph(10, 10, 0.5, 4);
  auto oracles = g.oracles();
  EXPECT_EQ(oracles.independence_calls(), 0U);
  EXPECT_EQ(oracles.adjacency_calls(), 0U);
  RngStream rng(0, "c");
  for (int i = 1; i <= 5; ++i) {
    oracles.independent(VertexSubset{{0}, {1}}, rng);
    EXPECT_EQ(oracles.independence_calls(), static_cast<std::uint64_t>(i));
  }
  for (int i = 1; i <= 7; ++i) {
    oracles.adjacent(1, 2);
    EXPECT_EQ(oracles.adjacency_calls(), static_cast<std::uint64_t>(i));
  }
  oracles.reset_counters();
  EXPECT_EQ(oracles.independence_calls(), 0U);
  EXPECT_EQ(oracles.adjacency_calls(), 0U);
}

TEST(BipartiteOracles, VertexIdAdjacencyRequiresOppositeSides) {
  EdgeListGraph g(2, 2, {{0, 1}});
  const auto oracles = g.oracles();
  EXPECT_TRUE(oracles.adjacent(VertexId{Side::Left, 0}, VertexId{Side::Right, 1}));
  EXPECT_TRUE(oracles.adjacent(VertexId{Side::Right, 1}, VertexId{Side::Left, 0}));
  EXPECT_FALSE(oracles.adjacent(VertexId{Side::Left, 0}, VertexId{Side::Left, 1}));
  EXPECT_FALSE(oracles.adjacent(VertexId{Side::Left, 1}, VertexId{Side::Right, 1}));
  EXPECT_TRUE(oracles.independent(VertexSubset{}));
}

TEST(EdgeListGraph, DegreeHelpers) {
  EdgeListGraph g(3, 3, {{0, 0}, {1, 0}, {2, 2}});
  EXPECT_EQ(g.edge_count(), 3U);
  EXPECT_EQ(g.right_degree(0), 2U);
  const std::vector<std::uint32_t> x{0, 1};
  EXPECT_EQ(g.edges_into(x), 2U);
  EXPECT_EQ(g.left_neighborhood_size(x), 2U);
}
