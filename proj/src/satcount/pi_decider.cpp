#include <bit>
#include <cstdlib>
#include <vector>

#include "fgcount/errors.hpp"
#include "fgcount/satcount.hpp"

namespace fgcount {
namespace {

struct Clause {
  std::uint64_t pos = 0;
  std::uint64_t neg = 0;
};

struct Row {
  std::uint64_t mask = 0;
  bool rhs = false;
};

bool parity(std::uint64_t x) { return (std::popcount(x) & 1) != 0; }

class Decider {
 public:
  Decider(std::vector<Clause> clauses, std::vector<Row> rows)
      : clauses_(std::move(clauses)), rows_(std::move(rows)) {}

  bool solve(std::uint64_t assigned, std::uint64_t value) const {
    bool all_clauses_satisfied = false;
    for (bool changed = true; changed;) {
      changed = false;
      all_clauses_satisfied = true;
      for (const auto& c : clauses_) {
        if ((c.pos & assigned & value) || (c.neg & assigned & ~value)) continue;
        const std::uint64_t free = (c.pos | c.neg) & ~assigned;
        if (free == 0) return false;
        all_clauses_satisfied = false;
        if (std::has_single_bit(free)) {
          assigned |= free;
          if (free & c.pos) value |= free;
          changed = true;
        }
      }
      for (const auto& r : rows_) {
        const std::uint64_t free = r.mask & ~assigned;
        const bool fixed_part = parity(r.mask & assigned & value);
        if (free == 0) {
          if (fixed_part != r.rhs) return false;
          continue;
        }
        if (std::has_single_bit(free)) {
          assigned |= free;
          if (fixed_part != r.rhs) value |= free;
          changed = true;
        }
      }
    }
    if (all_clauses_satisfied) return xor_consistent(assigned, value);

    for (const auto& c : clauses_) {
      if ((c.pos & assigned & value) || (c.neg & assigned & ~value)) continue;
      const std::uint64_t free = (c.pos | c.neg) & ~assigned;
      const std::uint64_t bit = free & (~free + 1);
      return solve(assigned | bit, value) || solve(assigned | bit, value | bit);
    }
    return true;  // unreachable: some clause was open
  }

 private:
  bool xor_consistent(std::uint64_t assigned, std::uint64_t value) const {
    std::vector<Row> reduced;
    reduced.reserve(rows_.size());
    for (const auto& r : rows_) {
      reduced.push_back({r.mask & ~assigned, r.rhs != parity(r.mask & assigned & value)});
    }
    std::size_t rank = 0;
    for (int bit = 0; bit < 64 && rank < reduced.size(); ++bit) {
      const std::uint64_t b = 1ULL << bit;
      std::size_t pivot = rank;
      while (pivot < reduced.size() && !(reduced[pivot].mask & b)) ++pivot;
      if (pivot == reduced.size()) continue;
      std::swap(reduced[rank], reduced[pivot]);
      for (std::size_t i = 0; i < reduced.size(); ++i) {
        if (i != rank && (reduced[i].mask & b)) {
          reduced[i].mask ^= reduced[rank].mask;
          reduced[i].rhs = reduced[i].rhs != reduced[rank].rhs;
        }
      }
      ++rank;
    }
    for (std::size_t i = rank; i < reduced.size(); ++i) {
      if (reduced[i].mask == 0 && reduced[i].rhs) return false;
    }
    return true;
  }

  std::vector<Clause> clauses_;
  std::vector<Row> rows_;
};

}  // namespace

bool decide_pi_ks(const AugmentedFormula& formula, const PiDeciderOptions& options) {
  const std::uint32_t n = formula.n_vars();
  if (n > options.max_vars || n > 64) {
    throw CapExceeded("decide_pi_ks: " + std::to_string(n) + " variables exceeds the brute-force cap");
  }
  std::uint64_t assigned = 0;
  std::uint64_t value = 0;
  for (std::uint32_t v = 1; v <= n && v < formula.assignment.size(); ++v) {
    if (formula.assignment[v] >= 0) {
      assigned |= 1ULL << (v - 1);
      if (formula.assignment[v] == 1) value |= 1ULL << (v - 1);
    }
  }
  std::vector<Clause> clauses;
  clauses.reserve(formula.cnf.clauses.size());
  for (const auto& clause : formula.cnf.clauses) {
    Clause c;
    for (auto lit : clause) {
      const std::uint64_t bit = 1ULL << (std::abs(lit) - 1);
      (lit > 0 ? c.pos : c.neg) |= bit;
    }
    clauses.push_back(c);
  }
  std::vector<Row> rows;
  rows.reserve(formula.xors.rows.size());
  for (const auto& row : formula.xors.rows) {
    Row r;
    r.rhs = row.rhs;
    for (auto v : row.active()) r.mask ^= 1ULL << (v - 1);
    rows.push_back(r);
  }
  return Decider(std::move(clauses), std::move(rows)).solve(assigned, value);
}

}  // namespace fgcount
