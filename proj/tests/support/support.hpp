#pragma once

// Shared fixtures and independent oracles for the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gips/encode/boolean.hpp"
#include "gips/encode/generator.hpp"
#include "gips/encode/ilp.hpp"
#include "gips/gipsl/parser.hpp"
#include "gips/model/model_io.hpp"
#include "gips/pattern/matcher.hpp"
#include "gips/pipeline.hpp"

namespace gips::testing {

inline std::string data_path(const std::string& name) {
  return std::string(GIPS_DATA_DIR) + "/" + name;
}

inline std::shared_ptr<const Metamodel> mdvne_metamodel() {
  static auto mm = std::make_shared<const Metamodel>(
      load_metamodel(read_file(data_path("mdvne_schema.json"))));
  return mm;
}

inline Graph twolink_graph() {
  return load_graph(read_file(data_path("twolink_model.json")), mdvne_metamodel());
}

inline TypedSpec twolink_spec() {
  return load_spec(read_file(data_path("twolink.gipsl")), mdvne_metamodel());
}

inline TypedSpec mdvne_spec() {
  return load_spec(read_file(data_path("mdvne.gipsl")), mdvne_metamodel());
}

inline int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool coin(std::mt19937_64& rng, double p = 0.5) {
  return std::bernoulli_distribution(p)(rng);
}

// ---------------------------------------------------------------------------
// Matcher oracle: random graphs over a three-type schema, random patterns of
// at most three nodes, and plain enumeration of injective bindings.

inline std::shared_ptr<const Metamodel> abc_metamodel() {
  static auto mm = std::make_shared<const Metamodel>(Metamodel::build(
      {NodeType{"A", {{"w", AttrKind::kInt}}, std::nullopt},
       NodeType{"B", {}, std::string("A")},
       NodeType{"C", {{"w", AttrKind::kInt}}, std::nullopt}},
      {EdgeType{"e", "A", "A"}, EdgeType{"f", "A", "C"}, EdgeType{"g", "C", "A"}}));
  return mm;
}

inline bool abc_conforms(const std::string& type, const std::string& declared) {
  return type == declared || (declared == "A" && type == "B");
}

inline Graph random_abc_graph(std::mt19937_64& rng, int max_nodes = 8) {
  static const std::vector<std::string> types = {"A", "B", "C"};
  static const std::vector<EdgeType> edge_types = {
      {"e", "A", "A"}, {"f", "A", "C"}, {"g", "C", "A"}};
  Graph g(abc_metamodel());
  int n = uniform(rng, 0, max_nodes);
  for (int i = 0; i < n; ++i) {
    Node node{"n" + std::to_string(i), types[uniform(rng, 0, 2)], {}};
    node.attrs["w"] = std::int64_t{uniform(rng, 0, 3)};
    g.add_node(node);
  }
  int edges = n == 0 ? 0 : uniform(rng, 0, 2 * n);
  for (int k = 0; k < edges; ++k) {
    const auto& et = edge_types[uniform(rng, 0, 2)];
    std::string src = "n" + std::to_string(uniform(rng, 0, n - 1));
    std::string tgt = "n" + std::to_string(uniform(rng, 0, n - 1));
    if (!abc_conforms(g.node(src).type, et.source_type) ||
        !abc_conforms(g.node(tgt).type, et.target_type)) {
      continue;
    }
    g.add_edge(Edge{"x" + std::to_string(k), et.name, src, tgt});
  }
  return g;
}

// Pattern plus a direct evaluation of its condition on node weights.
struct PatternCase {
  Pattern pattern;
  std::function<bool(const std::vector<std::int64_t>&)> holds;
};

inline PatternCase random_abc_pattern(std::mt19937_64& rng) {
  static const std::vector<std::string> types = {"A", "B", "C"};
  static const std::vector<EdgeType> edge_types = {
      {"e", "A", "A"}, {"f", "A", "C"}, {"g", "C", "A"}};
  PatternCase pc;
  pc.pattern.name = "p";
  int k = uniform(rng, 1, 3);
  for (int i = 0; i < k; ++i) {
    pc.pattern.nodes.push_back({"p" + std::to_string(i), types[uniform(rng, 0, 2)], {}});
  }
  int edges = uniform(rng, 0, 3);
  for (int e = 0; e < edges; ++e) {
    const auto& et = edge_types[uniform(rng, 0, 2)];
    const auto& src = pc.pattern.nodes[uniform(rng, 0, k - 1)];
    const auto& tgt = pc.pattern.nodes[uniform(rng, 0, k - 1)];
    if (!abc_conforms(src.type, et.source_type) || !abc_conforms(tgt.type, et.target_type)) {
      continue;
    }
    pc.pattern.edges.push_back({et.name, src.name, tgt.name, {}});
  }
  int last = k - 1;
  switch (uniform(rng, 0, 3)) {
    case 0:
      pc.holds = [](const auto&) { return true; };
      break;
    case 1:
      pc.pattern.condition = parse_expression("p0.w <= p" + std::to_string(last) + ".w");
      pc.holds = [last](const auto& w) { return w[0] <= w[last]; };
      break;
    case 2:
      pc.pattern.condition = parse_expression("p0.w > 1");
      pc.holds = [](const auto& w) { return w[0] > 1; };
      break;
    default:
      pc.pattern.condition = parse_expression(
          "p0.w + p" + std::to_string(last) + ".w == 3 | !(p0.w != 0)");
      pc.holds = [last](const auto& w) { return w[0] + w[last] == 3 || w[0] == 0; };
      break;
  }
  return pc;
}

inline std::vector<std::vector<std::string>> oracle_matches(const Graph& g,
                                                            const PatternCase& pc) {
  const Pattern& p = pc.pattern;
  std::vector<std::string> ids;
  for (const auto& [id, node] : g.nodes()) ids.push_back(id);
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> binding;
  std::function<void()> rec = [&] {
    if (binding.size() == p.nodes.size()) {
      for (const auto& pe : p.edges) {
        const std::string& s = binding[p.index_of(pe.src)];
        const std::string& t = binding[p.index_of(pe.tgt)];
        bool found = false;
        for (const auto& [eid, e] : g.edges()) {
          if (e.type == pe.type && e.src == s && e.tgt == t) found = true;
        }
        if (!found) return;
      }
      std::vector<std::int64_t> w;
      for (const auto& id : binding) w.push_back(std::get<std::int64_t>(g.node(id).attrs.at("w")));
      if (pc.holds(w)) out.push_back(binding);
      return;
    }
    const auto& pn = p.nodes[binding.size()];
    for (const auto& id : ids) {
      if (std::find(binding.begin(), binding.end(), id) != binding.end()) continue;
      if (!abc_conforms(g.node(id).type, pn.type)) continue;
      binding.push_back(id);
      rec();
      binding.pop_back();
    }
  };
  rec();
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::vector<std::string>> matcher_result(const Graph& g, const Pattern& p) {
  std::vector<std::vector<std::string>> out;
  for (const auto& m : find_matches(g, p)) out.push_back(m.nodes);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Linearization oracle: random Boolean bodies over `xK.value()` terms, a
// direct evaluator and an exhaustive feasibility check of the rows.

struct BodyNode {
  enum class Kind { kRel, kAnd, kOr, kNot } kind = Kind::kRel;
  std::map<int, int> lhs;  // variable -> coefficient
  int lhs_const = 0;
  std::map<int, int> rhs;
  int rhs_const = 0;
  RelOp op = RelOp::kLe;
  std::vector<BodyNode> children;
};

struct RandomBody {
  BodyNode root;
  int vars = 0;
  std::string text;
};

inline std::string side_text(const std::map<int, int>& coeffs, int constant) {
  std::string s;
  for (const auto& [v, c] : coeffs) {
    if (!s.empty()) s += " + ";
    s += (c < 0 ? "(" + std::to_string(c) + ")" : std::to_string(c)) + " * x" +
         std::to_string(v) + ".value()";
  }
  if (s.empty() || constant != 0) {
    if (!s.empty()) s += constant < 0 ? " - " : " + ";
    s += std::to_string(s.empty() ? constant : std::abs(constant));
  }
  return s;
}

inline std::string body_text(const BodyNode& n) {
  switch (n.kind) {
    case BodyNode::Kind::kRel:
      return "(" + side_text(n.lhs, n.lhs_const) + " " + std::string(to_string(n.op)) + " " +
             side_text(n.rhs, n.rhs_const) + ")";
    case BodyNode::Kind::kNot:
      return "!" + body_text(n.children[0]);
    case BodyNode::Kind::kAnd:
    case BodyNode::Kind::kOr: {
      std::string s = "(";
      for (size_t i = 0; i < n.children.size(); ++i) {
        if (i) s += n.kind == BodyNode::Kind::kAnd ? " & " : " | ";
        s += body_text(n.children[i]);
      }
      return s + ")";
    }
  }
  return "";
}

inline bool eval_body(const BodyNode& n, const std::vector<int>& x) {
  switch (n.kind) {
    case BodyNode::Kind::kRel: {
      long l = n.lhs_const, r = n.rhs_const;
      for (const auto& [v, c] : n.lhs) l += c * x[v];
      for (const auto& [v, c] : n.rhs) r += c * x[v];
      switch (n.op) {
        case RelOp::kLt: return l < r;
        case RelOp::kLe: return l <= r;
        case RelOp::kEq: return l == r;
        case RelOp::kNe: return l != r;
        case RelOp::kGe: return l >= r;
        case RelOp::kGt: return l > r;
      }
      return false;
    }
    case BodyNode::Kind::kNot:
      return !eval_body(n.children[0], x);
    case BodyNode::Kind::kAnd:
      for (const auto& c : n.children) {
        if (!eval_body(c, x)) return false;
      }
      return true;
    case BodyNode::Kind::kOr:
      for (const auto& c : n.children) {
        if (eval_body(c, x)) return true;
      }
      return false;
  }
  return false;
}

inline RandomBody random_body(std::mt19937_64& rng) {
  static const RelOp ops[] = {RelOp::kLt, RelOp::kLe, RelOp::kEq,
                              RelOp::kNe, RelOp::kGe, RelOp::kGt};
  RandomBody b;
  b.vars = uniform(rng, 1, 6);
  int atoms = uniform(rng, 1, 6);
  auto side = [&](std::map<int, int>& coeffs, int& constant, int max_terms) {
    int terms = uniform(rng, 0, max_terms);
    for (int t = 0; t < terms; ++t) coeffs[uniform(rng, 0, b.vars - 1)] = uniform(rng, -10, 10);
    constant = uniform(rng, -10, 10);
  };
  std::vector<BodyNode> leaves;
  for (int a = 0; a < atoms; ++a) {
    if (!leaves.empty() && coin(rng, 0.15)) {
      leaves.push_back(leaves[uniform(rng, 0, static_cast<int>(leaves.size()) - 1)]);
      continue;
    }
    BodyNode leaf;
    side(leaf.lhs, leaf.lhs_const, 3);
    side(leaf.rhs, leaf.rhs_const, 1);
    leaf.op = ops[uniform(rng, 0, 5)];
    leaves.push_back(leaf);
  }
  // Combine random pairs until one tree remains.
  while (leaves.size() > 1) {
    int i = uniform(rng, 0, static_cast<int>(leaves.size()) - 2);
    BodyNode n;
    n.kind = coin(rng) ? BodyNode::Kind::kAnd : BodyNode::Kind::kOr;
    n.children = {leaves[i], leaves[i + 1]};
    if (coin(rng, 0.25)) {
      BodyNode neg;
      neg.kind = BodyNode::Kind::kNot;
      neg.children = {n};
      n = neg;
    }
    leaves.erase(leaves.begin() + i, leaves.begin() + i + 2);
    leaves.insert(leaves.begin() + i, n);
  }
  b.root = leaves[0];
  if (coin(rng, 0.2)) {
    BodyNode neg;
    neg.kind = BodyNode::Kind::kNot;
    neg.children = {b.root};
    b.root = neg;
  }
  b.text = body_text(b.root);
  return b;
}

// Problem with `vars` mapping variables followed by the linearized rows.
struct LinearizedBody {
  IlpProblem problem;
  int mapping_vars = 0;
};

inline LinearizedBody linearize_body(const RandomBody& body, size_t max_clauses = 256) {
  static const Graph empty(abc_metamodel());
  LinearizedBody out;
  out.mapping_vars = body.vars;
  MatchSet set;
  set.name = "x";
  Scope scope;
  for (int v = 0; v < body.vars; ++v) {
    set.variables.push_back(out.problem.add_variable("m_x_" + std::to_string(v), VarKind::kBinary));
    set.matches.push_back(Match{"x", {}});
  }
  for (int v = 0; v < body.vars; ++v) scope.bind("x" + std::to_string(v), MatchRef{&set, size_t(v)});
  Instantiation inst;
  std::vector<Atom> atoms;
  Formula f = lower_bool(parse_expression(body.text), empty, scope, inst, out.problem, atoms);
  Cnf cnf = to_cnf(f, static_cast<int>(atoms.size()), max_clauses);
  linearize(cnf, atoms, out.problem, "body");
  return out;
}

// Exhaustive search over the variables from `first` on, pruning rows whose
// remaining range cannot reach the right-hand side. All variables binary.
inline bool completion_exists(const IlpProblem& p, std::vector<double>& x, int first) {
  const int n = static_cast<int>(p.variables.size());
  for (const auto& row : p.rows) {
    double lo = 0, hi = 0;
    for (const auto& [v, c] : row.coeffs) {
      if (v < first) {
        lo += c * x[v];
        hi += c * x[v];
      } else {
        lo += std::min(0.0, c);
        hi += std::max(0.0, c);
      }
    }
    double tol = 1e-9 * std::max(1.0, std::abs(row.rhs));
    if (row.rel != Relation::kGe && lo > row.rhs + tol) return false;
    if (row.rel != Relation::kLe && hi < row.rhs - tol) return false;
  }
  if (first == n) return true;
  for (double v : {0.0, 1.0}) {
    x[first] = v;
    if (completion_exists(p, x, first + 1)) return true;
  }
  return false;
}

// Number of assignments where feasibility of the rows and truth of the body
// disagree.
inline int linearization_mismatches(const RandomBody& body, const LinearizedBody& lin) {
  int bad = 0;
  int n = lin.mapping_vars;
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> xi(n);
    std::vector<double> x(lin.problem.variables.size(), 0);
    for (int v = 0; v < n; ++v) {
      xi[v] = (mask >> v) & 1;
      x[v] = xi[v];
    }
    if (completion_exists(lin.problem, x, n) != eval_body(body.root, xi)) ++bad;
  }
  return bad;
}

// ---------------------------------------------------------------------------
// Random 0/1 problems for the solver oracle.

inline IlpProblem random_binary_problem(std::mt19937_64& rng, int max_vars = 15,
                                        int max_rows = 20, bool fractional = false) {
  IlpProblem p;
  int n = uniform(rng, 1, max_vars);
  int m = uniform(rng, 0, max_rows);
  for (int i = 0; i < n; ++i) p.add_variable("m_r_" + std::to_string(i), VarKind::kBinary);
  auto coeff = [&] {
    double c = uniform(rng, -10, 10);
    if (fractional) c += uniform(rng, 0, 9) / 10.0;
    return c;
  };
  for (int r = 0; r < m; ++r) {
    std::vector<double> x0(n);
    for (auto& v : x0) v = coin(rng) ? 1 : 0;
    LinearTerm t;
    for (int i = 0; i < n; ++i) {
      if (coin(rng, 0.4)) {
        double c = coeff();
        if (c != 0) t.coeffs[i] = c;
      }
    }
    double act = 0;
    for (const auto& [v, c] : t.coeffs) act += c * x0[v];
    t.constant = -(act + uniform(rng, -3, 3));
    static const Relation rels[] = {Relation::kLe, Relation::kLe, Relation::kGe,
                                    Relation::kGe, Relation::kEq};
    p.add_row(t, rels[uniform(rng, 0, 4)], "r" + std::to_string(r));
  }
  p.objective.sense = coin(rng) ? Sense::kMin : Sense::kMax;
  for (int i = 0; i < n; ++i) {
    double c = coeff();
    if (c != 0) p.objective.coeffs[i] = c;
  }
  p.objective.constant = uniform(rng, -5, 5);
  return p;
}

inline bool close(double a, double b, double tol = 1e-9) {
  return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

// ---------------------------------------------------------------------------
// Random item-to-bin instances generated from a specification, for the
// weight scaling checks.

inline std::shared_ptr<const Metamodel> bin_metamodel() {
  static auto mm = std::make_shared<const Metamodel>(Metamodel::build(
      {NodeType{"Item", {{"size", AttrKind::kInt}, {"value", AttrKind::kInt}}, std::nullopt},
       NodeType{"Bin", {{"cap", AttrKind::kInt}, {"cost", AttrKind::kInt}}, std::nullopt}},
      {EdgeType{"in", "Item", "Bin"}}));
  return mm;
}

inline std::string bin_spec_text(const std::string& sense, double w_gain, double w_fee) {
  auto num = [](double v) {
    std::string s = std::to_string(static_cast<long long>(v));
    return s;
  };
  return R"(
rule put {
  node i : Item;
  node b : Bin;
  condition b.cap >= i.size;
  create edge i -in-> b;
  set b.cap := b.cap - i.size;
}
mapping put with put;
constraint -> class::Bin {
  mappings.put->filter(m | m.nodes().b == self)->sum(m | m.nodes().i.size) <= self.cap
}
constraint -> class::Item {
  mappings.put->filter(m | m.nodes().i == self)->sum(m | 1) <= 1
}
objective gain -> mapping::put { self.nodes().i.value }
objective fee -> mapping::put { self.nodes().b.cost }
global objective : )" +
         sense + " { " + num(w_gain) + " * gain - " + num(w_fee) + " * fee }\n";
}

inline Graph random_bin_graph(std::mt19937_64& rng) {
  Graph g(bin_metamodel());
  int items = uniform(rng, 2, 4);
  int bins = uniform(rng, 2, 3);
  for (int i = 0; i < items; ++i) {
    g.add_node(Node{"item" + std::to_string(i), "Item",
                    {{"size", std::int64_t{uniform(rng, 1, 6)}},
                     {"value", std::int64_t{uniform(rng, 0, 9)}}}});
  }
  for (int b = 0; b < bins; ++b) {
    g.add_node(Node{"bin" + std::to_string(b), "Bin",
                    {{"cap", std::int64_t{uniform(rng, 2, 9)}},
                     {"cost", std::int64_t{uniform(rng, 0, 5)}}}});
  }
  return g;
}

// Every optimal assignment of an all-binary problem, by enumeration.
inline std::set<std::vector<int>> optimal_assignments(const IlpProblem& p, double* best_out) {
  int n = static_cast<int>(p.variables.size());
  double best = 0;
  bool any = false;
  std::vector<std::pair<double, std::vector<int>>> feasible;
  for (long mask = 0; mask < (1L << n); ++mask) {
    std::vector<double> x(n);
    std::vector<int> xi(n);
    for (int v = 0; v < n; ++v) x[v] = xi[v] = (mask >> v) & 1;
    if (!p.feasible(x)) continue;
    double obj = p.objective_value(x);
    feasible.emplace_back(obj, xi);
    bool better = p.objective.sense == Sense::kMin ? obj < best : obj > best;
    if (!any || better) best = obj;
    any = true;
  }
  std::set<std::vector<int>> out;
  for (const auto& [obj, xi] : feasible) {
    if (close(obj, best)) out.insert(xi);
  }
  if (best_out) *best_out = best;
  return out;
}

}  // namespace gips::testing
