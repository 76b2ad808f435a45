#include <algorithm>
#include <cmath>
#include <numeric>

#include "fgcount/amplify.hpp"
#include "fgcount/errors.hpp"
#include "fgcount/satcount.hpp"

namespace fgcount {
namespace {

/// ⌊2^x⌋ for x >= 0, exact in the integer part and 52 bits beyond it.
BigInt pow2_floor(double x) {
  const double whole = std::floor(x);
  const auto mantissa = static_cast<std::uint64_t>(std::ldexp(std::exp2(x - whole), 52));
  BigInt r = mantissa;
  r <<= static_cast<unsigned>(whole);
  r >>= 52;
  return r;
}

}  // namespace

SparseXorSystem sample_hash(std::uint32_t s, std::uint32_t m, std::uint32_t n, RngStream& rng) {
  if (s > n) throw ContractViolation("sample_hash: s must not exceed n");
  if (m > n) throw ContractViolation("sample_hash: m must not exceed n");
  SparseXorSystem hash;
  hash.n_vars = n;
  hash.sparsity = s;
  hash.rows.reserve(m);
  std::vector<std::uint32_t> pool(n);
  std::iota(pool.begin(), pool.end(), 1U);
  for (std::uint32_t row = 0; row < m; ++row) {
    // Partial Fisher-Yates: the first s slots become a uniform s-subset.
    for (std::uint32_t i = 0; i < s; ++i) {
      const auto j = i + static_cast<std::uint32_t>(rng.uniform(n - i));
      std::swap(pool[i], pool[j]);
    }
    XorRow r;
    r.support.assign(pool.begin(), pool.begin() + s);
    std::sort(r.support.begin(), r.support.end());
    r.coefficients.resize(s);
    for (auto& c : r.coefficients) c = rng.coin() ? 1 : 0;
    hash.rows.push_back(std::move(r));
  }
  return hash;
}

AugmentedFormula conjoin(const CnfFormula& formula, SparseXorSystem hash, RngStream& rng) {
  if (hash.n_vars != formula.n_vars) throw ContractViolation("conjoin: dimension mismatch");
  auto out = AugmentedFormula::from_cnf(formula);
  for (auto& row : hash.rows) row.rhs = rng.coin();
  out.xors = std::move(hash);
  return out;
}

SatSolveParams make_sat_solve_params(std::uint32_t n_vars, double delta, double eps,
                                     std::optional<std::uint32_t> sparsity) {
  if (!(delta > 0.0 && delta < 1.0 / 3.0)) throw ContractViolation("sat_solve: delta must lie in (0,1/3)");
  if (!(eps > 0.0 && eps < 1.0)) throw ContractViolation("sat_solve: eps must lie in (0,1)");
  SatSolveParams p;
  p.delta = delta;
  p.eps = eps;
  p.t = static_cast<std::uint64_t>(std::ceil(delta * n_vars / 2.0 + 2.0 * std::log2(1.0 / eps)));
  if (sparsity) {
    p.sparsity = *sparsity;
  } else {
    const double lg = std::log2(2.0 / delta);
    p.sparsity = static_cast<std::uint32_t>(std::ceil(40.0 * lg * lg / delta));
  }
  if (p.sparsity == 0) throw ContractViolation("sat_solve: sparsity must be positive");
  return p;
}

SatSolveResult sat_solve(const CnfFormula& formula, const SatSolveParams& params, const PiOracle& oracle,
                         RngStream& rng, const SatSolveOptions& options) {
  if (!(params.delta > 0.0 && params.delta < 1.0 / 3.0)) {
    throw ContractViolation("sat_solve: delta must lie in (0,1/3)");
  }
  if (!(params.eps > 0.0 && params.eps < 1.0)) throw ContractViolation("sat_solve: eps must lie in (0,1)");
  formula.validate();
  const std::uint32_t n = formula.n_vars;
  const double delta = params.delta;

  SatSolveResult result;
  // A1
  const bool tiny = n <= 1 || static_cast<double>(n) / std::log2(static_cast<double>(n)) <= 8.0 / delta;
  if (tiny && !options.disable_brute_force) {
    result.estimate = count_models(formula);
    result.path = SatSolvePath::BruteForce;
    return result;
  }

  // A2
  const auto base = AugmentedFormula::from_cnf(formula);
  const double slack = params.t + delta * n / 2.0;
  auto few = sparse_count(base, pow2_floor(slack), oracle, &result.oracle_calls);
  if (!few.failed()) {
    result.estimate = std::move(few.count);
    result.path = SatSolvePath::SparseOnly;
    return result;
  }

  // A3
  const auto s = std::min<std::uint32_t>(params.sparsity, n);
  if (params.t <= n) {
    const std::uint64_t trials = 1ULL << params.t;
    for (std::uint64_t m = 0; m <= n - params.t; ++m) {
      BigInt budget = pow2_floor(slack + 2.0);
      BigInt sum = 0;
      bool complete = true;
      for (std::uint64_t i = 0; i < trials; ++i) {
        auto hash = sample_hash(s, static_cast<std::uint32_t>(m + params.t), n, rng);
        auto hashed = conjoin(formula, std::move(hash), rng);
        auto z = sparse_count(hashed, budget, oracle, &result.oracle_calls);
        if (z.failed()) {
          complete = false;  // bad hash or m too small
          break;
        }
        budget -= *z.count;
        sum += *z.count;
      }
      if (complete) {
        result.estimate = pow2(m) * sum;
        result.path = SatSolvePath::Hashed;
        result.hash_rows_extra = static_cast<std::uint32_t>(m);
        return result;
      }
    }
  }

  // A4
  result.path = SatSolvePath::NoEstimate;
  return result;
}

SatSolveResult approx_count_cnf(const CnfFormula& formula, double eps, double delta, RngStream& rng,
                                const ApproxCountOptions& options) {
  if (!(eps > 0.0 && eps < 1.0)) throw ContractViolation("approx_count_cnf: eps must lie in (0,1)");
  if (!(delta > 0.0 && delta < 1.0)) throw ContractViolation("approx_count_cnf: delta must lie in (0,1)");
  formula.validate();
  const std::uint32_t n = formula.n_vars;

  if (eps < std::exp2(-static_cast<double>(n))) {
    SatSolveResult exact;
    exact.estimate = count_models(formula);
    exact.path = SatSolvePath::BruteForce;
    return exact;
  }

  const double lg = std::log2(6.0 / delta);
  const auto sparsity = static_cast<std::uint32_t>(std::ceil(120.0 * lg * lg / delta));
  const auto params = make_sat_solve_params(n, delta / 3.0, eps, sparsity);

  const double target = eps * eps /
                        (options.oracle_failure_constant * std::max<double>(n, 1.0) * std::exp2(delta * n / 3.0));
  const auto decider = amplify<AugmentedFormula>(
      [&options](const AugmentedFormula& f, RngStream&) { return decide_pi_ks(f, options.decider); },
      std::min(target, 0.5), DeciderKind::Deterministic);
  auto oracle_rng = derive_stream(rng, "pi-oracle");
  const PiOracle oracle = [&](const AugmentedFormula& f) { return decider(f, oracle_rng); };
  return sat_solve(formula, params, oracle, rng, options.solve);
}

}  // namespace fgcount
