#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "fgcount/counting.hpp"
#include "fgcount/oracle.hpp"

namespace fgcount {

/// Two lists of 0/1 vectors of a common dimension, packed 64 bits per word.
class OvInstance {
 public:
  explicit OvInstance(std::size_t dim = 0);

  std::size_t dim() const { return dim_; }
  std::size_t words() const { return words_; }
  std::size_t a_count() const { return a_count_; }
  std::size_t b_count() const { return b_count_; }
  std::size_t n() const { return a_count_ + b_count_; }

  /// Appends a vector given as one 0/1 entry per coordinate.
  void add_a(std::span<const std::uint8_t> bits);
  void add_b(std::span<const std::uint8_t> bits);
  void add_a_packed(std::span<const std::uint64_t> row);
  void add_b_packed(std::span<const std::uint64_t> row);

  std::span<const std::uint64_t> a_row(std::size_t i) const { return {a_bits_.data() + i * words_, words_}; }
  std::span<const std::uint64_t> b_row(std::size_t j) const { return {b_bits_.data() + j * words_, words_}; }
  bool a_bit(std::size_t i, std::size_t coord) const;
  bool b_bit(std::size_t j, std::size_t coord) const;

  /// Lists restricted to the given (sorted) positions.
  OvInstance subset(std::span<const std::uint32_t> a_idx, std::span<const std::uint32_t> b_idx) const;

 private:
  std::size_t dim_;
  std::size_t words_;
  std::size_t a_count_ = 0;
  std::size_t b_count_ = 0;
  std::vector<std::uint64_t> a_bits_;
  std::vector<std::uint64_t> b_bits_;
};

bool orthogonal(std::span<const std::uint64_t> x, std::span<const std::uint64_t> y);

using OvDecision = std::function<bool(const OvInstance&)>;

/// Is some (a, b) orthogonal? All pairs, one AND per packed word.
bool decide_ov(const OvInstance& instance);

std::uint64_t count_ov_exact(const OvInstance& instance);

/// U = A, V = B, (a, b) ∈ E iff ⟨a, b⟩ = 0.
BipartiteOracles ov_oracles(const OvInstance& instance, OvDecision decision = decide_ov);

/// (1±eps)-approximation of the orthogonal pair count with probability
/// >= 2/3; exact when eps <= n⁻².
CountResult count_ov(const OvInstance& instance, double eps, RngStream& rng, const CountOptions& options = {});

}  // namespace fgcount
