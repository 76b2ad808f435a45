#include "fgcount/cnf.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "fgcount/errors.hpp"

namespace fgcount {

void CnfFormula::validate() const {
  for (const auto& clause : clauses) {
    if (clause.size() > width) throw ContractViolation("clause wider than k");
    for (auto lit : clause) {
      if (lit == 0) throw ContractViolation("zero literal in clause");
      if (static_cast<std::uint32_t>(std::abs(lit)) > n_vars) {
        throw ContractViolation("literal variable out of range");
      }
    }
  }
}

std::vector<std::uint32_t> XorRow::active() const {
  std::vector<std::uint32_t> vars;
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (coefficients[i]) vars.push_back(support[i]);
  }
  return vars;
}

void SparseXorSystem::validate() const {
  if (rows.size() > n_vars) throw ContractViolation("XOR system has more rows than variables");
  for (const auto& row : rows) {
    if (row.support.size() != row.coefficients.size()) {
      throw ContractViolation("XOR row support/coefficient size mismatch");
    }
    if (sparsity != 0 && row.support.size() > sparsity) {
      throw ContractViolation("XOR row exceeds sparsity");
    }
    for (auto v : row.support) {
      if (v == 0 || v > n_vars) throw ContractViolation("XOR variable out of range");
    }
  }
}

AugmentedFormula AugmentedFormula::from_cnf(CnfFormula cnf) {
  AugmentedFormula f;
  f.xors.n_vars = cnf.n_vars;
  f.assignment.assign(cnf.n_vars + 1, -1);
  f.cnf = std::move(cnf);
  return f;
}

std::uint32_t AugmentedFormula::free_variables() const {
  std::uint32_t count = 0;
  for (std::uint32_t v = 1; v <= n_vars(); ++v) {
    if (assignment[v] < 0) ++count;
  }
  return count;
}

std::uint32_t AugmentedFormula::first_free_variable() const {
  for (std::uint32_t v = 1; v <= n_vars(); ++v) {
    if (assignment[v] < 0) return v;
  }
  return 0;
}

bool AugmentedFormula::trivially_unsatisfiable() const {
  for (const auto& clause : cnf.clauses) {
    if (clause.empty()) return true;
  }
  for (const auto& row : xors.rows) {
    if (row.rhs && row.active().empty()) return true;
  }
  return false;
}

AugmentedFormula AugmentedFormula::with_assignment(std::uint32_t var, bool value) const {
  if (var == 0 || var > n_vars()) throw ContractViolation("assignment variable out of range");
  if (assignment[var] >= 0) throw ContractViolation("variable already assigned");

  AugmentedFormula out;
  out.cnf.n_vars = cnf.n_vars;
  out.cnf.width = cnf.width;
  out.xors.n_vars = xors.n_vars;
  out.xors.sparsity = xors.sparsity;
  out.assignment = assignment;
  out.assignment[var] = value ? 1 : 0;

  const auto pos = static_cast<std::int32_t>(var);
  out.cnf.clauses.reserve(cnf.clauses.size());
  for (const auto& clause : cnf.clauses) {
    const bool satisfied = std::any_of(clause.begin(), clause.end(), [&](std::int32_t lit) {
      return (lit == pos && value) || (lit == -pos && !value);
    });
    if (satisfied) continue;
    std::vector<std::int32_t> reduced;
    reduced.reserve(clause.size());
    for (auto lit : clause) {
      if (lit != pos && lit != -pos) reduced.push_back(lit);
    }
    out.cnf.clauses.push_back(std::move(reduced));
  }

  out.xors.rows.reserve(xors.rows.size());
  for (const auto& row : xors.rows) {
    XorRow reduced;
    reduced.rhs = row.rhs;
    for (std::size_t i = 0; i < row.support.size(); ++i) {
      if (row.support[i] == var) {
        if (row.coefficients[i] && value) reduced.rhs = !reduced.rhs;
      } else {
        reduced.support.push_back(row.support[i]);
        reduced.coefficients.push_back(row.coefficients[i]);
      }
    }
    // Rows with no live variable are either vacuous or a contradiction.
    if (reduced.active().empty() && !reduced.rhs) continue;
    out.xors.rows.push_back(std::move(reduced));
  }
  return out;
}

void AugmentedFormula::validate() const {
  cnf.validate();
  xors.validate();
  if (xors.n_vars != cnf.n_vars) throw ContractViolation("XOR system and CNF disagree on n");
  if (assignment.size() != cnf.n_vars + 1u) throw ContractViolation("assignment has wrong length");
}

namespace {

struct PackedClause {
  std::uint64_t pos = 0;
  std::uint64_t neg = 0;
};

BigInt count_rec(const std::vector<PackedClause>& clauses, std::uint64_t all, std::uint64_t assigned,
                 std::uint64_t value) {
  const PackedClause* open = nullptr;
  for (const auto& c : clauses) {
    if ((c.pos & assigned & value) || (c.neg & assigned & ~value)) continue;
    if (((c.pos | c.neg) & ~assigned) == 0) return 0;
    if (open == nullptr) open = &c;
  }
  if (open == nullptr) return pow2(std::popcount(all & ~assigned));
  const std::uint64_t free_lits = (open->pos | open->neg) & ~assigned;
  const std::uint64_t bit = free_lits & (~free_lits + 1);
  return count_rec(clauses, all, assigned | bit, value) +
         count_rec(clauses, all, assigned | bit, value | bit);
}

}  // namespace

BigInt count_models(const CnfFormula& formula) {
  formula.validate();
  if (formula.n_vars > 64) throw CapExceeded("count_models supports at most 64 variables");
  std::vector<PackedClause> packed;
  packed.reserve(formula.clauses.size());
  for (const auto& clause : formula.clauses) {
    PackedClause c;
    for (auto lit : clause) {
      const std::uint64_t bit = 1ULL << (std::abs(lit) - 1);
      (lit > 0 ? c.pos : c.neg) |= bit;
    }
    packed.push_back(c);
  }
  const std::uint64_t all = formula.n_vars == 64 ? ~0ULL : ((1ULL << formula.n_vars) - 1);
  return count_rec(packed, all, 0, 0);
}

DimacsFile parse_dimacs(std::istream& in) {
  DimacsFile file;
  bool have_header = false;
  std::size_t expected_clauses = 0;
  std::vector<std::int32_t> pending;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw ParseError("dimacs line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head == "c" || head[0] == 'c' || head == "%") continue;
    if (head == "p") {
      std::string fmt;
      long long n = 0;
      long long m = 0;
      if (!(ls >> fmt >> n >> m) || fmt != "cnf" || n < 0 || m < 0) fail("bad problem line");
      file.cnf.n_vars = static_cast<std::uint32_t>(n);
      file.xors.n_vars = file.cnf.n_vars;
      expected_clauses = static_cast<std::size_t>(m);
      have_header = true;
      continue;
    }
    if (!have_header) fail("clause before problem line");
    if (head == "x") {
      XorRow row;
      int rhs = 0;
      if (!(ls >> rhs) || (rhs != 0 && rhs != 1)) fail("bad XOR right-hand side");
      row.rhs = rhs == 1;
      std::string tok;
      bool closed = false;
      while (ls >> tok) {
        if (tok == "0") {
          closed = true;
          break;
        }
        const auto colon = tok.find(':');
        if (colon == std::string::npos) fail("XOR term must be idx:coef");
        const long idx = std::strtol(tok.substr(0, colon).c_str(), nullptr, 10);
        const long coef = std::strtol(tok.substr(colon + 1).c_str(), nullptr, 10);
        if (idx <= 0 || idx > static_cast<long>(file.cnf.n_vars) || (coef != 0 && coef != 1)) {
          fail("bad XOR term " + tok);
        }
        row.support.push_back(static_cast<std::uint32_t>(idx));
        row.coefficients.push_back(static_cast<std::uint8_t>(coef));
      }
      if (!closed) fail("XOR row not 0-terminated");
      file.xors.sparsity = std::max<std::uint32_t>(file.xors.sparsity, row.support.size());
      file.xors.rows.push_back(std::move(row));
      continue;
    }
    // Clause literals; clauses may span lines.
    std::istringstream all(line);
    long long lit = 0;
    while (all >> lit) {
      if (lit == 0) {
        file.cnf.width = std::max<std::uint32_t>(file.cnf.width, pending.size());
        file.cnf.clauses.push_back(std::move(pending));
        pending.clear();
      } else {
        if (std::llabs(lit) > file.cnf.n_vars) fail("literal out of range");
        pending.push_back(static_cast<std::int32_t>(lit));
      }
    }
    if (!all.eof()) fail("unexpected token");
  }
  if (!have_header) throw ParseError("dimacs: missing problem line");
  if (!pending.empty()) throw ParseError("dimacs: last clause not 0-terminated");
  if (file.cnf.clauses.size() != expected_clauses) {
    throw ParseError("dimacs: header announces " + std::to_string(expected_clauses) + " clauses, found " +
                     std::to_string(file.cnf.clauses.size()));
  }
  return file;
}

DimacsFile parse_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_dimacs(in);
}

void write_dimacs(std::ostream& out, const CnfFormula& cnf, const SparseXorSystem* xors) {
  out << "p cnf " << cnf.n_vars << ' ' << cnf.clauses.size() << '\n';
  for (const auto& clause : cnf.clauses) {
    for (auto lit : clause) out << lit << ' ';
    out << "0\n";
  }
  if (xors == nullptr) return;
  for (const auto& row : xors->rows) {
    out << "x " << (row.rhs ? 1 : 0);
    for (std::size_t i = 0; i < row.support.size(); ++i) {
      out << ' ' << row.support[i] << ':' << static_cast<int>(row.coefficients[i]);
    }
    out << " 0\n";
  }
}

}  // namespace fgcount
