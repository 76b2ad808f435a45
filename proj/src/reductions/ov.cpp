#include "fgcount/ov.hpp"

#include <cmath>
#include <memory>

#include "fgcount/errors.hpp"

namespace fgcount {

OvInstance::OvInstance(std::size_t dim) : dim_(dim), words_((dim + 63) / 64) {}

namespace {

std::vector<std::uint64_t> pack(std::span<const std::uint8_t> bits, std::size_t dim, std::size_t words) {
  if (bits.size() != dim) throw ContractViolation("ov: vector has the wrong dimension");
  std::vector<std::uint64_t> row(words, 0);
  for (std::size_t k = 0; k < dim; ++k) {
    if (bits[k] > 1) throw ContractViolation("ov: entries must be 0 or 1");
    if (bits[k]) row[k / 64] |= 1ULL << (k % 64);
  }
  return row;
}

void check_packed(std::span<const std::uint64_t> row, std::size_t dim, std::size_t words) {
  if (row.size() != words) throw ContractViolation("ov: packed row has the wrong width");
  if (dim % 64 != 0 && words > 0 && (row[words - 1] >> (dim % 64)) != 0) {
    throw ContractViolation("ov: packed row has bits beyond the dimension");
  }
}

}  // namespace

void OvInstance::add_a(std::span<const std::uint8_t> bits) {
  auto row = pack(bits, dim_, words_);
  add_a_packed(row);
}

void OvInstance::add_b(std::span<const std::uint8_t> bits) {
  auto row = pack(bits, dim_, words_);
  add_b_packed(row);
}

void OvInstance::add_a_packed(std::span<const std::uint64_t> row) {
  check_packed(row, dim_, words_);
  a_bits_.insert(a_bits_.end(), row.begin(), row.end());
  ++a_count_;
}

void OvInstance::add_b_packed(std::span<const std::uint64_t> row) {
  check_packed(row, dim_, words_);
  b_bits_.insert(b_bits_.end(), row.begin(), row.end());
  ++b_count_;
}

bool OvInstance::a_bit(std::size_t i, std::size_t coord) const {
  return (a_row(i)[coord / 64] >> (coord % 64)) & 1U;
}

bool OvInstance::b_bit(std::size_t j, std::size_t coord) const {
  return (b_row(j)[coord / 64] >> (coord % 64)) & 1U;
}

OvInstance OvInstance::subset(std::span<const std::uint32_t> a_idx, std::span<const std::uint32_t> b_idx) const {
  OvInstance out(dim_);
  out.a_bits_.reserve(a_idx.size() * words_);
  for (auto i : a_idx) {
    auto row = a_row(i);
    out.a_bits_.insert(out.a_bits_.end(), row.begin(), row.end());
  }
  out.a_count_ = a_idx.size();
  out.b_bits_.reserve(b_idx.size() * words_);
  for (auto j : b_idx) {
    auto row = b_row(j);
    out.b_bits_.insert(out.b_bits_.end(), row.begin(), row.end());
  }
  out.b_count_ = b_idx.size();
  return out;
}

bool orthogonal(std::span<const std::uint64_t> x, std::span<const std::uint64_t> y) {
  for (std::size_t w = 0; w < x.size(); ++w) {
    if (x[w] & y[w]) return false;
  }
  return true;
}

bool decide_ov(const OvInstance& instance) {
  for (std::size_t i = 0; i < instance.a_count(); ++i) {
    for (std::size_t j = 0; j < instance.b_count(); ++j) {
      if (orthogonal(instance.a_row(i), instance.b_row(j))) return true;
    }
  }
  return false;
}

std::uint64_t count_ov_exact(const OvInstance& instance) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < instance.a_count(); ++i) {
    for (std::size_t j = 0; j < instance.b_count(); ++j) {
      if (orthogonal(instance.a_row(i), instance.b_row(j))) ++total;
    }
  }
  return total;
}

BipartiteOracles ov_oracles(const OvInstance& instance, OvDecision decision) {
  auto data = std::make_shared<const OvInstance>(instance);
  auto independence = [data, decision = std::move(decision)](const VertexSubset& s, RngStream&) {
    return !decision(data->subset(s.left, s.right));
  };
  auto adjacency = [data](std::uint32_t u, std::uint32_t v) { return orthogonal(data->a_row(u), data->b_row(v)); };
  return BipartiteOracles(instance.a_count(), instance.b_count(), std::move(independence), std::move(adjacency));
}

CountResult count_ov(const OvInstance& instance, double eps, RngStream& rng, const CountOptions& options) {
  if (!(eps > 0.0 && eps < 1.0)) throw ContractViolation("count_ov: eps must lie in (0,1)");
  const auto n = static_cast<double>(instance.n());
  if (instance.n() == 0 || eps <= std::pow(n, -2.0)) {
    CountResult exact;
    exact.estimate = count_ov_exact(instance);
    exact.exact_fallback = true;
    return exact;
  }
  const auto oracles = ov_oracles(instance);
  return run_edge_count(oracles, eps, rng, options);
}

}  // namespace fgcount
