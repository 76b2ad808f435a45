#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "fgcount/errors.hpp"
#include "fgcount/instance.hpp"
#include "json.hpp"

namespace fgcount {

using nlohmann::json;

void BipartiteInstance::validate() const {
  for (const auto& [u, v] : edges) {
    if (u >= left || v >= right) throw ContractViolation("bipartite: edge endpoint out of range");
  }
  auto sorted = edges;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ContractViolation("bipartite: repeated edge");
  }
}

ProblemKind kind_of(const ProblemInstance& instance) {
  return static_cast<ProblemKind>(instance.index());
}

std::string to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::ThreeSum: return "3sum";
    case ProblemKind::Ov: return "ov";
    case ProblemKind::Nwt: return "nwt";
    case ProblemKind::Cnf: return "cnf";
    case ProblemKind::Bipartite: return "bipartite";
  }
  return "?";
}

ProblemKind parse_problem_kind(const std::string& name) {
  for (auto k : {ProblemKind::ThreeSum, ProblemKind::Ov, ProblemKind::Nwt, ProblemKind::Cnf, ProblemKind::Bipartite}) {
    if (to_string(k) == name) return k;
  }
  throw ParseError("unknown problem type '" + name + "'");
}

namespace {

json bits_of(std::span<const std::uint64_t> row, std::size_t dim) {
  json out = json::array();
  for (std::size_t k = 0; k < dim; ++k) out.push_back(static_cast<int>((row[k / 64] >> (k % 64)) & 1U));
  return out;
}

json to_json(const ProblemInstance& instance) {
  json j;
  switch (kind_of(instance)) {
    case ProblemKind::ThreeSum: {
      const auto& g = std::get<ThreeSumInstance>(instance);
      j = {{"type", "3sum"}, {"bound", g.bound}, {"A", g.a}, {"B", g.b}, {"C", g.c}};
      break;
    }
    case ProblemKind::Ov: {
      const auto& g = std::get<OvInstance>(instance);
      json a = json::array();
      json b = json::array();
      for (std::size_t i = 0; i < g.a_count(); ++i) a.push_back(bits_of(g.a_row(i), g.dim()));
      for (std::size_t i = 0; i < g.b_count(); ++i) b.push_back(bits_of(g.b_row(i), g.dim()));
      j = {{"type", "ov"}, {"d", g.dim()}, {"A", std::move(a)}, {"B", std::move(b)}};
      break;
    }
    case ProblemKind::Nwt: {
      const auto& g = std::get<NwtInstance>(instance);
      json edges = json::array();
      for (const auto& e : g.edges) edges.push_back({e.u, e.v, e.w});
      j = {{"type", "nwt"},
           {"n", g.vertex_count},
           {"weight_bound", g.weight_bound},
           {"parts", {{"A", g.part_a}, {"B", g.part_b}, {"C", g.part_c}}},
           {"edges", std::move(edges)}};
      break;
    }
    case ProblemKind::Bipartite: {
      const auto& g = std::get<BipartiteInstance>(instance);
      json edges = json::array();
      for (const auto& [u, v] : g.edges) edges.push_back({u, v});
      j = {{"type", "bipartite"}, {"left", g.left}, {"right", g.right}, {"edges", std::move(edges)}};
      break;
    }
    case ProblemKind::Cnf:
      throw ContractViolation("CNF instances are written as DIMACS");
  }
  return j;
}

std::int64_t max_abs(const std::vector<std::int64_t>& v, std::int64_t floor) {
  for (auto x : v) floor = std::max(floor, x < 0 ? -x : x);
  return floor;
}

ProblemInstance from_json(const json& j) {
  const auto type = parse_problem_kind(j.at("type").get<std::string>());
  switch (type) {
    case ProblemKind::ThreeSum: {
      ThreeSumInstance g;
      g.a = j.at("A").get<std::vector<std::int64_t>>();
      g.b = j.at("B").get<std::vector<std::int64_t>>();
      g.c = j.at("C").get<std::vector<std::int64_t>>();
      g.bound = j.contains("bound") ? j["bound"].get<std::int64_t>() : max_abs(g.c, max_abs(g.b, max_abs(g.a, 1)));
      g.validate();
      return g;
    }
    case ProblemKind::Ov: {
      OvInstance g(j.at("d").get<std::size_t>());
      for (const auto& row : j.at("A")) g.add_a(row.get<std::vector<std::uint8_t>>());
      for (const auto& row : j.at("B")) g.add_b(row.get<std::vector<std::uint8_t>>());
      return g;
    }
    case ProblemKind::Nwt: {
      NwtInstance g;
      const auto& parts = j.at("parts");
      g.part_a = parts.at("A").get<std::vector<std::uint32_t>>();
      g.part_b = parts.at("B").get<std::vector<std::uint32_t>>();
      g.part_c = parts.at("C").get<std::vector<std::uint32_t>>();
      std::size_t max_id = 0;
      for (const auto* p : {&g.part_a, &g.part_b, &g.part_c}) {
        for (auto v : *p) max_id = std::max<std::size_t>(max_id, v + 1);
      }
      std::int64_t wmax = 1;
      for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 3) throw ParseError("nwt: edges are [u, v, w] triples");
        WeightedEdge edge{e[0].get<std::uint32_t>(), e[1].get<std::uint32_t>(), e[2].get<std::int64_t>()};
        wmax = std::max(wmax, edge.w < 0 ? -edge.w : edge.w);
        g.edges.push_back(edge);
      }
      g.vertex_count = j.contains("n") ? j["n"].get<std::size_t>() : max_id;
      g.weight_bound = j.contains("weight_bound") ? j["weight_bound"].get<std::int64_t>() : wmax;
      g.validate();
      return g;
    }
    case ProblemKind::Bipartite: {
      BipartiteInstance g;
      g.left = j.at("left").get<std::size_t>();
      g.right = j.at("right").get<std::size_t>();
      for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw ParseError("bipartite: edges are [u, v] pairs");
        g.edges.emplace_back(e[0].get<std::uint32_t>(), e[1].get<std::uint32_t>());
      }
      g.validate();
      return g;
    }
    case ProblemKind::Cnf:
      break;
  }
  throw ParseError("CNF instances must be given as DIMACS");
}

}  // namespace

void write_instance(std::ostream& out, const ProblemInstance& instance) {
  if (const auto* cnf = std::get_if<CnfFormula>(&instance)) {
    write_dimacs(out, *cnf);
    return;
  }
  out << to_json(instance).dump() << '\n';
}

ProblemInstance read_instance(std::istream& in) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      return from_json(json::parse(text));
    } catch (const json::exception& e) {
      throw ParseError(std::string("instance json: ") + e.what());
    } catch (const ContractViolation& e) {
      throw ParseError(std::string("invalid instance: ") + e.what());
    }
  }
  std::istringstream dimacs(text);
  auto file = parse_dimacs(dimacs);
  if (!file.xors.rows.empty()) throw ParseError("XOR rows are not part of a counting instance");
  try {
    file.cnf.validate();
  } catch (const ContractViolation& e) {
    throw ParseError(std::string("invalid formula: ") + e.what());
  }
  return file.cnf;
}

ProblemInstance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_instance(in);
}

std::size_t instance_size(const ProblemInstance& instance) {
  return std::visit(
      [](const auto& g) -> std::size_t {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, CnfFormula>) {
          return g.n_vars;
        } else if constexpr (std::is_same_v<T, BipartiteInstance>) {
          return g.left + g.right;
        } else {
          return g.n();
        }
      },
      instance);
}

}  // namespace fgcount
