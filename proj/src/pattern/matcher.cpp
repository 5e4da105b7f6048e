#include "gips/pattern/matcher.hpp"

#include <algorithm>
#include <set>

#include "gips/gipsl/eval.hpp"

namespace gips {

namespace {

void collect_roots(const ExprPtr& e, std::set<std::string>& roots) {
  if (!e) return;
  std::visit(Overloaded{
                 [&](const RefExpr& x) { roots.insert(x.root); },
                 [&](const ArithExpr& x) {
                   collect_roots(x.lhs, roots);
                   collect_roots(x.rhs, roots);
                 },
                 [&](const RelExpr& x) {
                   collect_roots(x.lhs, roots);
                   collect_roots(x.rhs, roots);
                 },
                 [&](const LogicExpr& x) {
                   collect_roots(x.lhs, roots);
                   collect_roots(x.rhs, roots);
                 },
                 [&](const NegExpr& x) { collect_roots(x.operand, roots); },
                 [&](const NotExpr& x) { collect_roots(x.operand, roots); },
                 [&](const FuncExpr& x) { collect_roots(x.operand, roots); },
                 [](const auto&) {},
             },
             e->node);
}

void split_conjuncts(const ExprPtr& e, std::vector<ExprPtr>& out) {
  if (const auto* l = std::get_if<LogicExpr>(&e->node); l && l->op == BoolOp::kAnd) {
    split_conjuncts(l->lhs, out);
    split_conjuncts(l->rhs, out);
  } else {
    out.push_back(e);
  }
}

bool truth(const Value& v, const std::string& pattern) {
  const bool* b = std::get_if<bool>(&v);
  if (!b) throw GenerationError("condition of '" + pattern + "' is not Boolean");
  return *b;
}

// Backtracking search with a static most-constrained-first node order.
class Matcher {
 public:
  Matcher(const Graph& graph, const Pattern& pattern)
      : graph_(graph), pattern_(pattern) {
    const size_t n = pattern.nodes.size();
    candidates_.resize(n);
    for (size_t i = 0; i < n; ++i) {
      candidates_[i] = graph.nodes_of_type(pattern.nodes[i].type);
    }
    plan_order();
    plan_conditions();
    binding_.assign(n, "");
  }

  std::vector<Match> run() {
    if (std::any_of(candidates_.begin(), candidates_.end(),
                    [](const auto& c) { return c.empty(); })) {
      return {};
    }
    search(0);
    std::sort(results_.begin(), results_.end());
    results_.erase(std::unique(results_.begin(), results_.end()), results_.end());
    return std::move(results_);
  }

 private:
  void plan_order() {
    const size_t n = pattern_.nodes.size();
    std::vector<bool> placed(n, false);
    position_.assign(n, 0);
    for (size_t step = 0; step < n; ++step) {
      int best = -1;
      std::tuple<int, size_t, size_t> best_key{};
      for (size_t i = 0; i < n; ++i) {
        if (placed[i]) continue;
        int links = 0;
        for (const PatternEdge& e : pattern_.edges) {
          int s = pattern_.index_of(e.src), t = pattern_.index_of(e.tgt);
          if ((s == static_cast<int>(i) && placed[t]) ||
              (t == static_cast<int>(i) && placed[s])) {
            ++links;
          }
        }
        // more links to placed nodes, then fewer candidates, then declaration
        auto key = std::make_tuple(-links, candidates_[i].size(), i);
        if (best < 0 || key < best_key) {
          best = static_cast<int>(i);
          best_key = key;
        }
      }
      placed[best] = true;
      position_[best] = step;
      order_.push_back(static_cast<size_t>(best));
    }
  }

  void plan_conditions() {
    checks_.resize(order_.size());
    if (!pattern_.condition) return;
    std::vector<ExprPtr> conjuncts;
    split_conjuncts(pattern_.condition, conjuncts);
    for (const ExprPtr& c : conjuncts) {
      std::set<std::string> roots;
      collect_roots(c, roots);
      size_t at = 0;
      for (const std::string& r : roots) {
        int i = pattern_.index_of(r);
        if (i >= 0) at = std::max(at, position_[i]);
      }
      checks_[at].push_back(c);
    }
  }

  std::vector<std::string> candidates_for(size_t node) const {
    // Prefer generating candidates from an edge to an already bound node.
    for (const PatternEdge& e : pattern_.edges) {
      int s = pattern_.index_of(e.src), t = pattern_.index_of(e.tgt);
      if (s == static_cast<int>(node) && t != s && !binding_[t].empty()) {
        std::vector<std::string> out;
        for (const std::string& id : graph_.in_edges(binding_[t])) {
          const Edge& edge = *graph_.find_edge(id);
          if (edge.type == e.type) out.push_back(edge.src);
        }
        return out;
      }
      if (t == static_cast<int>(node) && t != s && !binding_[s].empty()) {
        return graph_.targets(binding_[s], e.type);
      }
    }
    return candidates_[node];
  }

  bool consistent(size_t node, const std::string& id) const {
    const Node* n = graph_.find_node(id);
    if (!n || !graph_.metamodel().is_subtype(n->type, pattern_.nodes[node].type)) {
      return false;
    }
    for (size_t i = 0; i < binding_.size(); ++i) {
      if (i != node && binding_[i] == id) return false;
    }
    for (const PatternEdge& e : pattern_.edges) {
      size_t s = pattern_.index_of(e.src), t = pattern_.index_of(e.tgt);
      if (s != node && t != node) continue;
      const std::string& src = s == node ? id : binding_[s];
      const std::string& tgt = t == node ? id : binding_[t];
      if (src.empty() || tgt.empty()) continue;
      if (!graph_.has_edge(e.type, src, tgt)) return false;
    }
    return true;
  }

  bool conditions_hold(size_t depth) {
    if (checks_[depth].empty()) return true;
    Scope scope;
    for (size_t i = 0; i < binding_.size(); ++i) {
      if (!binding_[i].empty()) scope.bind(pattern_.nodes[i].name, NodeRef{binding_[i]});
    }
    for (const ExprPtr& c : checks_[depth]) {
      if (!truth(eval_constant(c, graph_, scope), pattern_.name)) return false;
    }
    return true;
  }

  void search(size_t depth) {
    if (depth == order_.size()) {
      results_.push_back(Match{pattern_.name, binding_});
      return;
    }
    const size_t node = order_[depth];
    std::vector<std::string> cands = candidates_for(node);
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    for (const std::string& id : cands) {
      if (!consistent(node, id)) continue;
      binding_[node] = id;
      if (conditions_hold(depth)) search(depth + 1);
      binding_[node].clear();
    }
  }

  const Graph& graph_;
  const Pattern& pattern_;
  std::vector<std::vector<std::string>> candidates_;
  std::vector<size_t> order_;
  std::vector<size_t> position_;
  std::vector<std::vector<ExprPtr>> checks_;
  std::vector<std::string> binding_;
  std::vector<Match> results_;
};

AttrValue to_attr(const Value& v, AttrKind kind, const std::string& where) {
  switch (kind) {
    case AttrKind::kInt:
      if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
      break;
    case AttrKind::kReal:
      if (is_numeric(v)) return as_double(v);
      break;
    case AttrKind::kBool:
      if (const auto* b = std::get_if<bool>(&v)) return *b;
      break;
    case AttrKind::kString:
      if (const auto* s = std::get_if<std::string>(&v)) return *s;
      break;
  }
  throw GenerationError(where + ": value " + describe(v) + " is not " +
                        std::string(to_string(kind)));
}

std::string fresh_id(const std::string& base, const std::set<std::string>& taken,
                     const Graph& graph, bool node) {
  auto used = [&](const std::string& id) {
    return taken.count(id) || (node ? graph.find_node(id) != nullptr
                                    : graph.find_edge(id) != nullptr);
  };
  if (!used(base)) return base;
  for (int k = 1;; ++k) {
    std::string id = base + "#" + std::to_string(k);
    if (!used(id)) return id;
  }
}

}  // namespace

std::vector<Match> find_matches(const Graph& graph, const Pattern& pattern) {
  if (pattern.nodes.empty()) return {Match{pattern.name, {}}};
  return Matcher(graph, pattern).run();
}

bool revalidate(const Graph& graph, const Pattern& pattern, const Match& match) {
  if (match.nodes.size() != pattern.nodes.size()) return false;
  for (size_t i = 0; i < pattern.nodes.size(); ++i) {
    const Node* n = graph.find_node(match.nodes[i]);
    if (!n || !graph.metamodel().is_subtype(n->type, pattern.nodes[i].type)) {
      return false;
    }
    for (size_t j = 0; j < i; ++j) {
      if (match.nodes[i] == match.nodes[j]) return false;
    }
  }
  for (const PatternEdge& e : pattern.edges) {
    if (!graph.has_edge(e.type, match.nodes[pattern.index_of(e.src)],
                        match.nodes[pattern.index_of(e.tgt)])) {
      return false;
    }
  }
  try {
    return eval_condition(pattern, graph, match.nodes);
  } catch (const GenerationError&) {
    return false;
  }
}

GraphDelta apply_rule(const Graph& graph, const Rule& rule, const Match& match) {
  if (!revalidate(graph, rule.lhs, match)) {
    throw StaleMatchError("match of rule '" + rule.name + "' is no longer valid");
  }
  const Metamodel& mm = graph.metamodel();
  Scope scope;
  std::map<std::string, std::string> ids;
  for (size_t i = 0; i < rule.lhs.nodes.size(); ++i) {
    scope.bind(rule.lhs.nodes[i].name, NodeRef{match.nodes[i]});
    ids[rule.lhs.nodes[i].name] = match.nodes[i];
  }
  auto id_of = [&](const std::string& name) -> const std::string& {
    auto it = ids.find(name);
    if (it == ids.end()) {
      throw GenerationError("rule '" + rule.name + "' references unknown node '" +
                            name + "'");
    }
    return it->second;
  };
  auto type_of = [&](const std::string& id, const GraphDelta& d) -> std::string {
    if (const Node* n = graph.find_node(id)) return n->type;
    for (const Node& n : d.created_nodes) {
      if (n.id == id) return n.type;
    }
    return "";
  };

  GraphDelta delta;
  std::set<std::string> new_nodes, new_edges;
  for (const RuleAction& action : rule.actions) {
    std::visit(
        Overloaded{
            [&](const CreateNodeAction& a) {
              Node n;
              n.id = fresh_id(a.name, new_nodes, graph, true);
              n.type = a.type;
              for (const AttributeDecl& decl : mm.attributes(a.type)) {
                n.attrs[decl.name] = default_value(decl.kind);
              }
              for (const auto& [attr, expr] : a.init) {
                const AttributeDecl* decl = mm.find_attribute(a.type, attr);
                if (!decl) {
                  throw GenerationError("type '" + a.type + "' has no attribute '" +
                                        attr + "'");
                }
                n.attrs[attr] = to_attr(eval_constant(expr, graph, scope), decl->kind,
                                        rule.name + ": " + a.name + "." + attr);
              }
              new_nodes.insert(n.id);
              ids[a.name] = n.id;
              delta.created_nodes.push_back(std::move(n));
            },
            [&](const CreateEdgeAction& a) {
              Edge e;
              e.src = id_of(a.src);
              e.tgt = id_of(a.tgt);
              e.type = a.type;
              e.id = fresh_id(e.src + "-" + a.type + "->" + e.tgt, new_edges, graph,
                              false);
              new_edges.insert(e.id);
              delta.created_edges.push_back(std::move(e));
            },
            [&](const DeleteEdgeAction& a) {
              const std::string& src = id_of(a.src);
              const std::string& tgt = id_of(a.tgt);
              for (const std::string& eid : graph.out_edges(src)) {
                const Edge& e = *graph.find_edge(eid);
                if (e.type == a.type && e.tgt == tgt &&
                    std::find(delta.deleted_edges.begin(), delta.deleted_edges.end(),
                              eid) == delta.deleted_edges.end()) {
                  delta.deleted_edges.push_back(eid);
                }
              }
            },
            [&](const DeleteNodeAction& a) {
              delta.deleted_nodes.push_back(id_of(a.name));
            },
            [&](const SetAttrAction& a) {
              const std::string& id = id_of(a.node);
              std::string type = type_of(id, delta);
              const AttributeDecl* decl = mm.find_attribute(type, a.attribute);
              if (!decl) {
                throw GenerationError("node '" + id + "' has no attribute '" +
                                      a.attribute + "'");
              }
              delta.attr_updates.push_back(AttrUpdate{
                  id, a.attribute,
                  to_attr(eval_constant(a.value, graph, scope), decl->kind,
                          rule.name + ": " + a.node + "." + a.attribute)});
            },
        },
        action);
  }
  return delta;
}

}  // namespace gips
