#include <limits>

#include "fgcount/errors.hpp"
#include "fgcount/satcount.hpp"

namespace fgcount {
namespace {

class SelfReduction {
 public:
  SelfReduction(const PiOracle& oracle, std::uint64_t budget, std::uint64_t* calls)
      : oracle_(oracle), budget_(budget), calls_(calls) {}

  /// False once the running total has exceeded the budget; the whole
  /// recursion unwinds from there.
  bool run(const AugmentedFormula& f) {
    if (calls_ != nullptr) ++*calls_;
    if (!oracle_(f)) return true;  // S1
    const std::uint32_t v = f.first_free_variable();
    if (v == 0) {  // S2
      ++total_;
      return total_ <= budget_;
    }
    // S3
    if (!run(f.with_assignment(v, false))) return false;
    return run(f.with_assignment(v, true));
  }

  std::uint64_t total() const { return total_; }

 private:
  const PiOracle& oracle_;
  std::uint64_t budget_;
  std::uint64_t* calls_;
  std::uint64_t total_ = 0;
};

}  // namespace

SparseCountResult sparse_count(const AugmentedFormula& formula, const BigInt& budget,
                               const PiOracle& oracle, std::uint64_t* oracle_calls) {
  if (budget < 0) throw ContractViolation("sparse_count: budget must be non-negative");
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t cap = budget >= BigInt(kMax) ? kMax : budget.convert_to<std::uint64_t>();
  SelfReduction search(oracle, cap, oracle_calls);
  if (!search.run(formula)) return SparseCountResult::fail();
  return SparseCountResult{BigInt(search.total())};
}

}  // namespace fgcount
