#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <utility>

namespace fgcount {

/// Counter-based random stream keyed by (seed, label).
///
/// The i-th 64-bit output is a fixed mixing function of (key, i), so a
/// stream is fully described by its key and position. Sub-streams are
/// obtained with derive_stream() and never share state with their parent.
/// Satisfies UniformRandomBitGenerator, but the helpers below are preferred:
/// they are portable across standard libraries, std distributions are not.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed, std::string label = {});

  std::uint64_t seed() const { return seed_; }
  const std::string& label() const { return label_; }
  /// Mixed (seed, label) key; used as the seed of derived streams.
  std::uint64_t key() const { return key_; }
  std::uint64_t position() const { return counter_; }

  std::uint64_t next_u64();
  result_type operator()() { return next_u64(); }
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t uniform(std::uint64_t bound);
  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01();
  bool coin();
  bool bernoulli(double p);

  template <class T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = uniform(i);
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t seed_;
  std::string label_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::uint64_t bit_buffer_ = 0;
  int bits_left_ = 0;
};

/// Child stream that depends only on the parent's (seed, label) and `label`.
/// The parent's position is irrelevant, so derivation order does not matter.
RngStream derive_stream(const RngStream& master, std::string_view label);

}  // namespace fgcount
