#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

#include "fgcount/errors.hpp"
#include "fgcount/instance.hpp"

namespace fgcount {

void GeneratorSpec::validate() const {
  if (!(density >= 0.0 && density <= 1.0)) throw ContractViolation("generator: density must lie in [0,1]");
  switch (problem) {
    case ProblemKind::ThreeSum:
      if (n < 3) throw ContractViolation("generator: 3sum needs n >= 3");
      if (value_bound < 1 || value_bound > kThreeSumMaxBound) throw ContractViolation("generator: bad value bound");
      break;
    case ProblemKind::Ov:
      if (n < 2 || d < 1) throw ContractViolation("generator: ov needs n >= 2 and d >= 1");
      break;
    case ProblemKind::Nwt:
      if (n < 3 || weight_bound < 1) throw ContractViolation("generator: nwt needs n >= 3 and a positive weight bound");
      break;
    case ProblemKind::Cnf:
      if (n < 1 || width < 1 || width > n) throw ContractViolation("generator: cnf needs 1 <= width <= n");
      break;
    case ProblemKind::Bipartite:
      if (n < 2) throw ContractViolation("generator: bipartite needs n >= 2");
      if (shape != "random" && shape != "star") throw ContractViolation("generator: shape is 'random' or 'star'");
      break;
  }
}

namespace {

constexpr int kRepairRounds = 400;

/// Planted witnesses come in blocks: `full` blocks of size `r` and, when
/// rem > 0, one block of size rem. Each block is carried by one right-side
/// item, so full + (rem > 0) <= right items.
struct BlockPlan {
  std::uint64_t r = 0;
  std::uint64_t full = 0;
  std::uint64_t rem = 0;
};

BlockPlan plan_blocks(std::uint64_t planted, std::size_t left, std::size_t right) {
  BlockPlan plan;
  if (planted == 0) return plan;
  if (right == 0 || planted > static_cast<std::uint64_t>(left) * right) {
    throw InfeasiblePlant("planted count exceeds |left|·|right|");
  }
  plan.r = (planted + right - 1) / right;
  plan.full = planted / plan.r;
  plan.rem = planted % plan.r;
  if (plan.r + plan.rem > left) {
    throw InfeasiblePlant("planted count cannot be split into blocks that fit the left list");
  }
  return plan;
}

std::vector<std::int64_t> distinct_values(std::size_t count, std::int64_t lo, std::int64_t hi, RngStream& rng) {
  if (hi < lo || static_cast<std::uint64_t>(hi - lo) + 1 < count) {
    throw InfeasiblePlant("value range too small for distinct values");
  }
  std::set<std::int64_t> seen;
  std::vector<std::int64_t> out;
  while (out.size() < count) {
    const auto v = rng.uniform_int(lo, hi);
    if (seen.insert(v).second) out.push_back(v);
  }
  return out;
}

ThreeSumInstance generate_3sum(const GeneratorSpec& spec, RngStream& rng) {
  const std::size_t na = spec.n / 3;
  const std::size_t nb = spec.n / 3;
  const std::size_t nc = spec.n - na - nb;
  const std::int64_t m = spec.value_bound;
  const std::int64_t half = m / 2;
  ThreeSumInstance g;
  g.bound = m;

  if (!spec.planted_count) {
    for (std::size_t i = 0; i < na; ++i) g.a.push_back(rng.uniform_int(-half, half));
    for (std::size_t i = 0; i < nb; ++i) g.b.push_back(rng.uniform_int(-half, half));
    for (std::size_t i = 0; i < nc; ++i) g.c.push_back(rng.uniform_int(-m, m));
    return g;
  }

  const std::uint64_t planted = *spec.planted_count;
  const auto plan = plan_blocks(planted, na, nb);
  if (planted > 0 && nc == 0) throw InfeasiblePlant("3sum: C is empty");

  // A holds `groups` blocks of r equal values, a block of rem equal values,
  // then singles. Each planted b equals c − (block value).
  const std::size_t groups =
      plan.r == 0 ? 0 : std::max<std::size_t>(1, std::min<std::size_t>((na - plan.rem) / plan.r, plan.full));
  const std::size_t block_values = groups + (plan.rem > 0 ? 1 : 0);
  const std::size_t singles = na - groups * plan.r - plan.rem;

  auto c = distinct_values(nc, -half, half, rng);
  std::vector<std::int64_t> block_value = distinct_values(block_values, -half, half, rng);
  std::vector<std::int64_t> single_value(singles);
  for (auto& v : single_value) v = rng.uniform_int(-half, half);

  // planted_for[j]: block carried by b_j, or -1.
  std::vector<long> planted_for(nb, -1);
  for (std::size_t j = 0; j < plan.full; ++j) planted_for[j] = static_cast<long>(j % groups);
  if (plan.rem > 0) planted_for[plan.full] = static_cast<long>(groups);
  auto block_size = [&](long blk) {
    return static_cast<std::uint64_t>(blk == static_cast<long>(groups) ? plan.rem : plan.r);
  };

  std::vector<std::int64_t> b(nb);
  auto draw_b = [&](std::size_t j) {
    if (planted_for[j] < 0) {
      b[j] = rng.uniform_int(-m, m);
    } else {
      b[j] = c[rng.uniform(nc)] - block_value[planted_for[j]];
    }
  };
  for (std::size_t j = 0; j < nb; ++j) draw_b(j);

  std::vector<std::int64_t> sorted_c = c;
  std::sort(sorted_c.begin(), sorted_c.end());
  // A as (value, multiplicity).
  std::map<std::int64_t, std::uint64_t> a_mult;
  for (std::size_t k = 0; k < groups; ++k) a_mult[block_value[k]] += plan.r;
  if (plan.rem > 0) a_mult[block_value[groups]] += plan.rem;

  for (int round = 0;; ++round) {
    std::map<std::int64_t, std::uint64_t> mult = a_mult;
    for (auto v : single_value) ++mult[v];
    // Singles must not merge with blocks.
    bool clean = true;
    for (std::size_t i = 0; i < singles; ++i) {
      if (std::find(block_value.begin(), block_value.end(), single_value[i]) != block_value.end()) {
        single_value[i] = rng.uniform_int(-half, half);
        clean = false;
      }
    }
    std::uint64_t total = 0;
    for (std::size_t j = 0; j < nb && clean; ++j) {
      std::uint64_t w = 0;
      for (const auto& [a, k] : mult) {
        if (std::binary_search(sorted_c.begin(), sorted_c.end(), a + b[j])) w += k;
      }
      const std::uint64_t want = planted_for[j] < 0 ? 0 : block_size(planted_for[j]);
      if (w != want) {
        draw_b(j);
        clean = false;
      }
      total += w;
    }
    if (clean && total == planted) break;
    if (round >= kRepairRounds) throw InfeasiblePlant("3sum: could not repair accidental witnesses");
  }

  for (std::size_t k = 0; k < groups; ++k) g.a.insert(g.a.end(), plan.r, block_value[k]);
  if (plan.rem > 0) g.a.insert(g.a.end(), plan.rem, block_value[groups]);
  g.a.insert(g.a.end(), single_value.begin(), single_value.end());
  g.b = std::move(b);
  g.c = std::move(c);
  rng.shuffle(std::span<std::int64_t>(g.a));
  rng.shuffle(std::span<std::int64_t>(g.b));
  rng.shuffle(std::span<std::int64_t>(g.c));
  return g;
}

using Bits = std::vector<std::uint8_t>;

bool bits_orthogonal(const Bits& x, const Bits& y) {
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] && y[k]) return false;
  }
  return true;
}

OvInstance generate_ov(const GeneratorSpec& spec, RngStream& rng) {
  const std::size_t na = spec.n / 2;
  const std::size_t nb = spec.n - na;
  const std::size_t d = spec.d;
  auto random_bits = [&](std::size_t from) {
    Bits v(d, 0);
    for (std::size_t k = from; k < d; ++k) v[k] = rng.bernoulli(spec.density);
    return v;
  };

  OvInstance g(d);
  if (!spec.planted_count) {
    for (std::size_t i = 0; i < na; ++i) g.add_a(random_bits(0));
    for (std::size_t j = 0; j < nb; ++j) g.add_b(random_bits(0));
    return g;
  }

  const std::uint64_t planted = *spec.planted_count;
  if (planted > 0 && d < 2) throw InfeasiblePlant("ov: planting needs d >= 2");
  const auto plan = plan_blocks(planted, na, nb);

  // Coordinate 0 is set in every a and every unplanted b, so only planted b
  // (which clear it) can be orthogonal to anything. A planted b is the
  // complement of its block's vector on coordinates 1..d-1.
  const std::size_t groups =
      plan.r == 0 ? 0 : std::max<std::size_t>(1, std::min<std::size_t>((na - plan.rem) / plan.r, plan.full));
  const std::size_t blocks = groups + (plan.rem > 0 ? 1 : 0);
  const std::size_t singles = na - groups * plan.r - plan.rem;

  auto block_vector = [&] {
    for (;;) {
      Bits v = random_bits(1);
      v[0] = 1;
      // An all-ones block would give an all-zero planted b.
      if (std::count(v.begin() + 1, v.end(), 1) < static_cast<long>(d - 1)) return v;
    }
  };
  std::vector<Bits> block(blocks);
  for (auto& v : block) v = block_vector();
  std::vector<Bits> single(singles);
  for (auto& v : single) {
    v = random_bits(1);
    v[0] = 1;
  }
  auto complement = [&](const Bits& v) {
    Bits out(d, 0);
    for (std::size_t k = 1; k < d; ++k) out[k] = v[k] ? 0 : 1;
    return out;
  };
  const std::size_t planted_b = plan.full + (plan.rem > 0 ? 1 : 0);
  auto block_of = [&](std::size_t j) { return j < plan.full ? j % groups : groups; };

  for (int round = 0;; ++round) {
    bool clean = true;
    // Any a outside a planted block that is orthogonal to that block's b is
    // resampled (a whole block if the stray a is itself a block).
    for (std::size_t k = 0; k < blocks && clean; ++k) {
      const Bits bk = complement(block[k]);
      for (std::size_t other = 0; other < blocks; ++other) {
        if (other != k && bits_orthogonal(block[other], bk)) {
          block[other] = block_vector();
          clean = false;
        }
      }
      for (auto& s : single) {
        if (bits_orthogonal(s, bk)) {
          s = random_bits(1);
          s[0] = 1;
          clean = false;
        }
      }
    }
    if (clean) break;
    if (round >= kRepairRounds) throw InfeasiblePlant("ov: could not repair accidental witnesses");
  }

  std::vector<Bits> a;
  for (std::size_t k = 0; k < groups; ++k) a.insert(a.end(), plan.r, block[k]);
  if (plan.rem > 0) a.insert(a.end(), plan.rem, block[groups]);
  a.insert(a.end(), single.begin(), single.end());
  std::vector<Bits> b;
  for (std::size_t j = 0; j < planted_b; ++j) b.push_back(complement(block[block_of(j)]));
  while (b.size() < nb) {
    Bits v = random_bits(1);
    v[0] = 1;
    b.push_back(std::move(v));
  }
  rng.shuffle(std::span<Bits>(a));
  rng.shuffle(std::span<Bits>(b));
  for (const auto& v : a) g.add_a(v);
  for (const auto& v : b) g.add_b(v);
  return g;
}

NwtInstance generate_nwt(const GeneratorSpec& spec, RngStream& rng) {
  NwtInstance g;
  g.vertex_count = spec.n;
  g.weight_bound = spec.weight_bound;
  const std::size_t pa = spec.n / 3;
  const std::size_t pb = spec.n / 3;
  std::uint32_t id = 0;
  for (std::size_t i = 0; i < pa; ++i) g.part_a.push_back(id++);
  for (std::size_t i = 0; i < pb; ++i) g.part_b.push_back(id++);
  while (id < spec.n) g.part_c.push_back(id++);
  const std::int64_t w = spec.weight_bound;

  // Edge weights keyed by (min, max) so output order is canonical.
  using EdgeMap = std::map<std::pair<std::uint32_t, std::uint32_t>, std::int64_t>;
  auto base = [&](std::int64_t lo, std::int64_t hi) {
    EdgeMap edges;
    auto connect = [&](const std::vector<std::uint32_t>& x, const std::vector<std::uint32_t>& y) {
      for (auto u : x) {
        for (auto v : y) {
          if (rng.bernoulli(spec.density)) edges[std::minmax(u, v)] = rng.uniform_int(lo, hi);
        }
      }
    };
    connect(g.part_a, g.part_b);
    connect(g.part_b, g.part_c);
    connect(g.part_a, g.part_c);
    return edges;
  };
  auto emit = [&](const EdgeMap& edges) {
    g.edges.clear();
    for (const auto& [key, weight] : edges) g.edges.push_back({key.first, key.second, weight});
  };

  if (!spec.planted_count) {
    emit(base(-w, w));
    return g;
  }

  const std::uint64_t planted = *spec.planted_count;
  if (planted > 0 && w < 3) throw InfeasiblePlant("nwt: planting needs weight bound >= 3");
  if (planted > static_cast<std::uint64_t>(pb) * g.part_c.size() || (planted > 0 && pa == 0)) {
    throw InfeasiblePlant("nwt: planted count exceeds |B|·|C|");
  }
  // Background weights in [w-1, w] keep every unplanted triangle positive.
  // A planted triangle gets w(b,c) = -w and light edges of weight 1 to a.
  // Two light edges at a closing a -w edge make a triangle, so a pair (b,c)
  // is only planted at an a where it adds exactly one.
  EdgeMap edges = base(std::max<std::int64_t>(1, w - 1), w);
  std::set<std::pair<std::uint32_t, std::uint32_t>> heavy_pairs;
  std::vector<std::set<std::uint32_t>> light_b(pa);
  std::vector<std::set<std::uint32_t>> light_c(pa);
  auto is_heavy = [&](std::uint32_t b, std::uint32_t c) { return heavy_pairs.count({b, c}) > 0; };
  auto new_triangles = [&](std::size_t ai, std::uint32_t b, std::uint32_t c) {
    std::uint64_t count = 0;
    for (std::size_t other = 0; other < pa; ++other) {
      const bool to_b = other == ai || light_b[other].count(b);
      const bool to_c = other == ai || light_c[other].count(c);
      count += to_b && to_c;
    }
    if (!light_b[ai].count(b)) {
      for (auto c2 : light_c[ai]) count += c2 != c && is_heavy(b, c2);
    }
    if (!light_c[ai].count(c)) {
      for (auto b2 : light_b[ai]) count += b2 != b && is_heavy(b2, c);
    }
    return count;
  };
  const std::uint64_t max_tries = 64 * planted + 1024;
  for (std::uint64_t tries = 0; heavy_pairs.size() < planted; ++tries) {
    if (tries >= max_tries) throw InfeasiblePlant("nwt: could not plant without accidental triangles");
    const auto b = g.part_b[rng.uniform(pb)];
    const auto c = g.part_c[rng.uniform(g.part_c.size())];
    if (is_heavy(b, c)) continue;
    // Vertices already light to b or c grow a star around it, which rarely
    // adds cross triangles, so they are tried before random ones.
    std::vector<std::size_t> candidates;
    for (std::size_t ai = 0; ai < pa; ++ai) {
      if (light_b[ai].count(b) || light_c[ai].count(c)) candidates.push_back(ai);
    }
    rng.shuffle(std::span<std::size_t>(candidates));
    for (int pick = 0; pick < 16; ++pick) candidates.push_back(rng.uniform(pa));
    for (const std::size_t ai : candidates) {
      if (new_triangles(ai, b, c) != 1) continue;
      heavy_pairs.insert({b, c});
      light_b[ai].insert(b);
      light_c[ai].insert(c);
      const auto a = g.part_a[ai];
      edges[std::minmax(b, c)] = -w;
      edges[std::minmax(a, b)] = 1;
      edges[std::minmax(a, c)] = 1;
      break;
    }
  }
  emit(edges);
  if (count_nwt_exact(g) != planted) throw InfeasiblePlant("nwt: planted count not reproduced");
  return g;
}

CnfFormula generate_cnf(const GeneratorSpec& spec, RngStream& rng) {
  if (spec.planted_count) throw InfeasiblePlant("cnf: planted counts are not supported");
  CnfFormula f;
  f.n_vars = static_cast<std::uint32_t>(spec.n);
  f.width = spec.width;
  std::vector<std::uint32_t> vars(spec.n);
  std::iota(vars.begin(), vars.end(), 1U);
  for (std::size_t i = 0; i < spec.clauses; ++i) {
    // Partial Fisher-Yates picks `width` distinct variables.
    for (std::uint32_t k = 0; k < spec.width; ++k) {
      std::swap(vars[k], vars[k + rng.uniform(spec.n - k)]);
    }
    std::vector<std::uint32_t> chosen(vars.begin(), vars.begin() + spec.width);
    std::sort(chosen.begin(), chosen.end());
    std::vector<std::int32_t> clause;
    for (auto v : chosen) clause.push_back(rng.coin() ? static_cast<std::int32_t>(v) : -static_cast<std::int32_t>(v));
    f.clauses.push_back(std::move(clause));
  }
  return f;
}

BipartiteInstance generate_bipartite(const GeneratorSpec& spec, RngStream& rng) {
  BipartiteInstance g;
  g.left = spec.n / 2;
  g.right = spec.n - g.left;
  if (spec.planted_count) {
    const std::uint64_t planted = *spec.planted_count;
    const std::uint64_t cells = static_cast<std::uint64_t>(g.left) * g.right;
    if (planted > cells) throw InfeasiblePlant("bipartite: planted count exceeds |U|·|V|");
    std::unordered_set<std::uint64_t> chosen;
    while (chosen.size() < planted) chosen.insert(rng.uniform(cells));
    std::vector<std::uint64_t> cells_sorted(chosen.begin(), chosen.end());
    std::sort(cells_sorted.begin(), cells_sorted.end());
    for (auto cell : cells_sorted) {
      g.edges.emplace_back(static_cast<std::uint32_t>(cell / g.right), static_cast<std::uint32_t>(cell % g.right));
    }
    return g;
  }
  // "star": a few hubs on each side are adjacent to the whole other side.
  const std::size_t hubs = spec.shape == "star" ? std::max<std::size_t>(1, g.right / 256) : 0;
  for (std::uint32_t u = 0; u < g.left; ++u) {
    for (std::uint32_t v = 0; v < g.right; ++v) {
      const bool hub = u < hubs || v < hubs;
      if (hub || rng.bernoulli(spec.density)) g.edges.emplace_back(u, v);
    }
  }
  return g;
}

}  // namespace

ProblemInstance generate(const GeneratorSpec& spec) {
  spec.validate();
  RngStream rng(spec.seed, "generate/" + to_string(spec.problem));
  switch (spec.problem) {
    case ProblemKind::ThreeSum: return generate_3sum(spec, rng);
    case ProblemKind::Ov: return generate_ov(spec, rng);
    case ProblemKind::Nwt: return generate_nwt(spec, rng);
    case ProblemKind::Cnf: return generate_cnf(spec, rng);
    case ProblemKind::Bipartite: return generate_bipartite(spec, rng);
  }
  throw ContractViolation("generate: unknown problem");
}

BigInt exact_count(const ProblemInstance& instance, const ExactCaps& caps) {
  const std::size_t size = instance_size(instance);
  auto check = [&](std::size_t cap) {
    if (size > cap) {
      throw CapExceeded("exact_count: " + to_string(kind_of(instance)) + " instance of size " + std::to_string(size) +
                        " exceeds cap " + std::to_string(cap));
    }
  };
  switch (kind_of(instance)) {
    case ProblemKind::ThreeSum:
      check(caps.three_sum);
      return count_3sum_exact(std::get<ThreeSumInstance>(instance));
    case ProblemKind::Ov:
      check(caps.ov);
      return count_ov_exact(std::get<OvInstance>(instance));
    case ProblemKind::Nwt:
      check(caps.nwt);
      return count_nwt_exact(std::get<NwtInstance>(instance));
    case ProblemKind::Cnf:
      check(caps.cnf_vars);
      return count_models(std::get<CnfFormula>(instance));
    case ProblemKind::Bipartite:
      check(caps.bipartite);
      return std::get<BipartiteInstance>(instance).edges.size();
  }
  throw ContractViolation("exact_count: unknown problem");
}

}  // namespace fgcount
