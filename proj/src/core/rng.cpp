#include "fgcount/rng.hpp"

#include "fgcount/errors.hpp"

namespace fgcount {
namespace {

__extension__ using u128 = unsigned __int128;

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t hash_label(std::string_view label) {
  // FNV-1a, then length folded in so "" and "\0" stay apart.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return mix64(h ^ (static_cast<std::uint64_t>(label.size()) * kGolden));
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::string label)
    : seed_(seed), label_(std::move(label)) {
  key_ = mix64(mix64(seed_ + kGolden) ^ hash_label(label_));
}

std::uint64_t RngStream::next_u64() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden) ^ mix64(counter_ ^ key_);
}

std::uint64_t RngStream::uniform(std::uint64_t bound) {
  if (bound == 0) throw ContractViolation("RngStream::uniform: bound must be positive");
  // Lemire's multiply-shift with rejection.
  u128 m = static_cast<u128>(next_u64()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<u128>(next_u64()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

std::int64_t RngStream::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw ContractViolation("RngStream::uniform_int: empty range");
  const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  if (span == std::numeric_limits<std::uint64_t>::max()) {
    return static_cast<std::int64_t>(next_u64());
  }
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + uniform(span + 1));
}

double RngStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

bool RngStream::coin() {
  if (bits_left_ == 0) {
    bit_buffer_ = next_u64();
    bits_left_ = 64;
  }
  const bool bit = (bit_buffer_ & 1U) != 0;
  bit_buffer_ >>= 1;
  --bits_left_;
  return bit;
}

bool RngStream::bernoulli(double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return uniform01() < p;
}

RngStream derive_stream(const RngStream& master, std::string_view label) {
  return RngStream(master.key(), std::string(label));
}

}  // namespace fgcount
