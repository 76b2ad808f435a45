#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>

#include "fgcount/bigint.hpp"
#include "fgcount/cnf.hpp"
#include "fgcount/nwt.hpp"
#include "fgcount/oracle.hpp"
#include "fgcount/ov.hpp"
#include "fgcount/threesum.hpp"

namespace fgcount {

enum class ProblemKind { ThreeSum, Ov, Nwt, Cnf, Bipartite };

/// An explicit bipartite graph; counts its own edges.
struct BipartiteInstance {
  std::size_t left = 0;
  std::size_t right = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;

  void validate() const;
};

using ProblemInstance = std::variant<ThreeSumInstance, OvInstance, NwtInstance, CnfFormula, BipartiteInstance>;

ProblemKind kind_of(const ProblemInstance& instance);
std::string to_string(ProblemKind kind);
/// Accepts "3sum", "ov", "nwt", "cnf", "bipartite".
ProblemKind parse_problem_kind(const std::string& name);

/// JSON for 3SUM/OV/NWT/bipartite, DIMACS for CNF.
void write_instance(std::ostream& out, const ProblemInstance& instance);
/// Dispatches on the first non-blank character: '{' means JSON.
ProblemInstance read_instance(std::istream& in);
ProblemInstance read_instance_file(const std::string& path);

struct GeneratorSpec {
  ProblemKind problem = ProblemKind::ThreeSum;
  /// Total instance size: |A|+|B|+|C| (3SUM), |A|+|B| (OV), vertex count
  /// (NWT), variable count (CNF), |U|+|V| (bipartite).
  std::size_t n = 0;
  std::size_t d = 64;                  ///< OV dimension
  std::int64_t value_bound = 1 << 20;  ///< 3SUM |entries|
  std::int64_t weight_bound = 100;     ///< NWT |weights|
  std::size_t clauses = 0;             ///< CNF clause count
  std::uint32_t width = 3;             ///< CNF clause width
  /// Bit probability (OV), edge probability (NWT, bipartite).
  double density = 0.5;
  /// Bipartite shape: "random" (Erdős–Rényi) or "star" (random plus a few
  /// hub vertices adjacent to the whole other side).
  std::string shape = "random";
  std::optional<std::uint64_t> planted_count;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Deterministic in spec.seed. With planted_count set the witness count of
/// the result is exactly planted_count; throws InfeasiblePlant if the sizes
/// cannot host it.
ProblemInstance generate(const GeneratorSpec& spec);

/// Size caps for exact_count. Above them CapExceeded is thrown.
struct ExactCaps {
  std::size_t three_sum = 400;
  std::size_t nwt = 400;
  std::size_t ov = 8192;
  std::uint32_t cnf_vars = 24;
  std::size_t bipartite = 1 << 16;
};

/// Ground-truth witness count by full enumeration.
BigInt exact_count(const ProblemInstance& instance, const ExactCaps& caps = {});

/// Size used for caps and reporting (same convention as GeneratorSpec::n).
std::size_t instance_size(const ProblemInstance& instance);

}  // namespace fgcount
