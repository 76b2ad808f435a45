#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fgcount/bigint.hpp"

namespace fgcount {

/// k-CNF over variables 1..n_vars; literal ±v means x_v / ¬x_v.
struct CnfFormula {
  std::uint32_t n_vars = 0;
  std::uint32_t width = 1;
  std::vector<std::vector<std::int32_t>> clauses;

  /// Throws ContractViolation on zero literals, out-of-range variables or
  /// clauses wider than `width`.
  void validate() const;
};

/// One row of a sparse GF(2) system: Σ_{j ∈ support, coef_j = 1} x_j = rhs.
struct XorRow {
  std::vector<std::uint32_t> support;   ///< sorted variable indices (1-based)
  std::vector<std::uint8_t> coefficients;  ///< one bit per support entry
  bool rhs = false;

  /// Variables that actually appear (coefficient 1).
  std::vector<std::uint32_t> active() const;
};

struct SparseXorSystem {
  std::uint32_t n_vars = 0;
  std::uint32_t sparsity = 0;
  std::vector<XorRow> rows;

  void validate() const;
};

/// F(x) = F'(x) ∧ (Ax = b), plus the partial assignment fixed so far by
/// self-reduction. Assigned variables have already been substituted out of
/// the clauses and rows.
struct AugmentedFormula {
  CnfFormula cnf;
  SparseXorSystem xors;
  /// Index v holds -1 (free), 0 or 1; entry 0 is unused.
  std::vector<std::int8_t> assignment;

  static AugmentedFormula from_cnf(CnfFormula cnf);

  std::uint32_t n_vars() const { return cnf.n_vars; }
  std::uint32_t free_variables() const;
  /// Lowest-index free variable, or 0 when everything is assigned.
  std::uint32_t first_free_variable() const;
  /// True once an empty clause or a contradictory empty row is present.
  bool trivially_unsatisfiable() const;
  /// Copy with x_var fixed to `value`, simplified.
  AugmentedFormula with_assignment(std::uint32_t var, bool value) const;
  void validate() const;
};

/// Number of satisfying assignments of F by exhaustive backtracking.
BigInt count_models(const CnfFormula& formula);

/// DIMACS CNF. Lines "x r v1:c1 v2:c2 ... 0" add XOR rows with rhs r.
struct DimacsFile {
  CnfFormula cnf;
  SparseXorSystem xors;
};

DimacsFile parse_dimacs(std::istream& in);
DimacsFile parse_dimacs_file(const std::string& path);
void write_dimacs(std::ostream& out, const CnfFormula& cnf, const SparseXorSystem* xors = nullptr);

}  // namespace fgcount
