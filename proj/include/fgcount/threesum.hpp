#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fgcount/counting.hpp"
#include "fgcount/oracle.hpp"

namespace fgcount {

/// Largest admissible |value|; keeps every a + b inside int64.
inline constexpr std::int64_t kThreeSumMaxBound = std::int64_t{1} << 61;

struct ThreeSumInstance {
  std::vector<std::int64_t> a;
  std::vector<std::int64_t> b;
  std::vector<std::int64_t> c;
  std::int64_t bound = 1;  ///< every entry lies in [-bound, bound]

  std::size_t n() const { return a.size() + b.size() + c.size(); }
  void validate() const;
};

using ThreeSumDecision = std::function<bool(const ThreeSumInstance&)>;

/// Is there (a, b, c) with a + b = c? Sorts C unless it already is sorted,
/// then binary-searches every a + b.
bool decide_3sum(const ThreeSumInstance& instance);

/// Number of tuples (a, b, c) with a + b = c, multiplicities included.
std::uint64_t count_3sum_exact(const ThreeSumInstance& instance);

/// U = A, V = B, (a, b) ∈ E iff a + b ∈ C. C is sorted once here and the
/// sorted copy is handed to every sub-instance.
BipartiteOracles three_sum_oracles(const ThreeSumInstance& instance,
                                   ThreeSumDecision decision = decide_3sum);

/// Equivalent instance whose C has no repeated value, so that the number of
/// (a, b) pairs with a + b ∈ C equals the number of tuples of the original.
/// Rotates the lists when A or B is repeat-free; otherwise rescales.
ThreeSumInstance normalize_for_tuple_count(const ThreeSumInstance& instance);

/// (1±eps)-approximation of the tuple count with probability >= 2/3;
/// exact when eps <= n⁻³.
CountResult count_3sum(const ThreeSumInstance& instance, double eps, RngStream& rng,
                       const CountOptions& options = {});

}  // namespace fgcount
