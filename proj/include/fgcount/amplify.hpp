#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>

#include "fgcount/errors.hpp"
#include "fgcount/rng.hpp"

namespace fgcount {

enum class DeciderKind { Deterministic, Randomized };

/// Majority-of-r wrapper around a boolean procedure that errs with
/// probability at most 1/3 per call.
template <class Input>
class AmplifiedDecider {
 public:
  using Base = std::function<bool(const Input&, RngStream&)>;

  AmplifiedDecider(Base base, std::size_t repetitions, double target_failure)
      : base_(std::move(base)), repetitions_(repetitions), target_failure_(target_failure) {}

  std::size_t repetitions() const { return repetitions_; }
  double target_failure() const { return target_failure_; }

  /// Runs the base procedure `repetitions()` times, each on its own derived
  /// stream, and returns the majority answer.
  bool operator()(const Input& input, RngStream& rng) const {
    if (repetitions_ == 1) return base_(input, rng);
    const auto call_stream = derive_stream(rng, "amplify/" + std::to_string(rng.next_u64()));
    std::size_t yes = 0;
    for (std::size_t i = 0; i < repetitions_; ++i) {
      auto rep = derive_stream(call_stream, std::to_string(i));
      if (base_(input, rep)) ++yes;
      // Majority already decided.
      if (yes * 2 > repetitions_ || (i + 1 - yes) * 2 > repetitions_) break;
    }
    return yes * 2 > repetitions_;
  }

 private:
  Base base_;
  std::size_t repetitions_;
  double target_failure_;
};

/// Smallest odd r >= 18·ln(2/target_failure); 1 when target_failure >= 1/3.
inline std::size_t amplification_repetitions(double target_failure) {
  if (!(target_failure > 0.0 && target_failure < 1.0)) {
    throw ContractViolation("amplify: target_failure must lie in (0,1)");
  }
  if (target_failure >= 1.0 / 3.0) return 1;
  auto r = static_cast<std::size_t>(std::ceil(18.0 * std::log(2.0 / target_failure)));
  if (r % 2 == 0) ++r;
  return r;
}

/// Deterministic bases never err, so they are wrapped with r = 1.
template <class Input>
AmplifiedDecider<Input> amplify(typename AmplifiedDecider<Input>::Base base, double target_failure,
                                DeciderKind kind = DeciderKind::Randomized) {
  std::size_t r = amplification_repetitions(target_failure);
  if (kind == DeciderKind::Deterministic) r = 1;
  return AmplifiedDecider<Input>(std::move(base), r, target_failure);
}

}  // namespace fgcount
