#include "gips/gipsl/typecheck.hpp"

#include <map>
#include <set>

namespace gips {

namespace {

enum class Tag { kInt, kReal, kBool, kString, kNode, kMatch, kObjective, kError };

struct Type {
  Tag tag = Tag::kError;
  std::string name;       // node type, pattern name or objective name
  bool variable = false;  // depends on mapping variables
  bool mapping = false;   // kMatch: the match carries an ILP variable

  bool numeric() const { return tag == Tag::kInt || tag == Tag::kReal; }
  bool error() const { return tag == Tag::kError; }
};

Type simple(Tag tag, bool variable = false) {
  Type t;
  t.tag = tag;
  t.variable = variable;
  return t;
}

std::string describe(const Type& t) {
  switch (t.tag) {
    case Tag::kInt:
      return "int";
    case Tag::kReal:
      return "real";
    case Tag::kBool:
      return "bool";
    case Tag::kString:
      return "string";
    case Tag::kNode:
      return "element of " + t.name;
    case Tag::kMatch:
      return "match of " + t.name;
    case Tag::kObjective:
      return "objective " + t.name;
    case Tag::kError:
      return "<error>";
  }
  return "?";
}

Type from_kind(AttrKind kind) {
  switch (kind) {
    case AttrKind::kInt:
      return simple(Tag::kInt);
    case AttrKind::kReal:
      return simple(Tag::kReal);
    case AttrKind::kBool:
      return simple(Tag::kBool);
    case AttrKind::kString:
      return simple(Tag::kString);
  }
  return simple(Tag::kError);
}

const std::set<std::string> kReserved = {"self", "mappings", "true", "false",
                                         "True", "False"};

class Checker {
 public:
  Checker(const Spec& spec, const Metamodel& mm) : spec_(spec), mm_(mm) {}

  std::vector<Diagnostic> errors;
  std::vector<Diagnostic> warnings;

  // Nodes built in code carry no position; report those at the document start.
  static SourceLoc located(SourceLoc loc) { return loc.valid() ? loc : SourceLoc{1, 1}; }

  void error(SourceLoc loc, std::string msg) {
    loc = located(loc);
    errors.push_back({Diagnostic::Severity::kError, loc, std::move(msg)});
  }
  void warn(SourceLoc loc, std::string msg) {
    loc = located(loc);
    warnings.push_back({Diagnostic::Severity::kWarning, loc, std::move(msg)});
  }

  void check_all(TypedSpec& out) {
    check_names();
    for (const Rule& r : spec_.rules) check_rule(r);
    for (const Pattern& p : spec_.patterns) check_pattern(p);
    for (const MappingDecl& m : spec_.mappings) {
      if (!spec_.find_rule(m.rule)) {
        error(m.loc, "mapping '" + m.name + "' references unknown rule '" + m.rule + "'");
      }
    }
    for (const ConstraintDecl& c : spec_.constraints) {
      if (!bind_context(c.context)) continue;
      Type t = check(c.body);
      if (!t.error() && t.tag != Tag::kBool) {
        error(c.body->loc, "constraint body must be Boolean, got " + describe(t));
      }
      env_.clear();
    }
    for (const ObjectiveDecl& o : spec_.objectives) {
      if (!bind_context(o.context)) continue;
      Type t = check(o.body);
      env_.clear();
      if (t.error()) continue;
      if (!t.numeric()) {
        error(o.body->loc, "objective '" + o.name + "' must be numeric, got " + describe(t));
      } else if (o.context.kind == ContextKind::kMapping && t.variable) {
        error(o.body->loc, "nonlinear variable term: objective '" + o.name +
                               "' is multiplied by its mapping variable and must "
                               "be constant per match");
      } else if (o.context.kind != ContextKind::kMapping && !t.variable) {
        warn(o.loc, "objective '" + o.name + "' has a " +
                        std::string(to_string(o.context.kind)) +
                        " context and contributes only a constant");
      }
    }
    check_global(out);
  }

 private:
  void check_names() {
    std::set<std::string> rule_names, mapping_names, objective_names;
    for (const Rule& r : spec_.rules) {
      if (!rule_names.insert(r.name).second) error(r.loc, "duplicate rule or pattern '" + r.name + "'");
    }
    for (const Pattern& p : spec_.patterns) {
      if (!rule_names.insert(p.name).second) error(p.loc, "duplicate rule or pattern '" + p.name + "'");
    }
    for (const MappingDecl& m : spec_.mappings) {
      if (!mapping_names.insert(m.name).second) error(m.loc, "duplicate mapping '" + m.name + "'");
    }
    for (const ObjectiveDecl& o : spec_.objectives) {
      if (!objective_names.insert(o.name).second) error(o.loc, "duplicate objective '" + o.name + "'");
    }
  }

  void bind_pattern_nodes(const Pattern& p) {
    for (const PatternNode& n : p.nodes) {
      Type t;
      t.tag = Tag::kNode;
      t.name = n.type;
      env_[n.name] = t;
    }
  }

  void check_pattern(const Pattern& p) {
    if (p.nodes.empty()) error(p.loc, "pattern '" + p.name + "' declares no nodes");
    std::set<std::string> names;
    for (const PatternNode& n : p.nodes) {
      if (!names.insert(n.name).second) error(n.loc, "duplicate pattern node '" + n.name + "'");
      if (kReserved.count(n.name)) error(n.loc, "'" + n.name + "' is a reserved name");
      if (!mm_.find_node_type(n.type)) error(n.loc, "unknown type '" + n.type + "'");
    }
    for (const PatternEdge& e : p.edges) {
      const EdgeType* et = mm_.find_edge_type(e.type);
      if (!et) {
        error(e.loc, "unknown edge type '" + e.type + "'");
        continue;
      }
      int s = p.index_of(e.src), t = p.index_of(e.tgt);
      if (s < 0 || t < 0) {
        error(e.loc, "edge references undeclared node '" + (s < 0 ? e.src : e.tgt) + "'");
        continue;
      }
      auto overlaps = [&](const std::string& node_type, const std::string& end) {
        return mm_.is_subtype(node_type, end) || mm_.is_subtype(end, node_type);
      };
      if (!overlaps(p.nodes[s].type, et->source_type) ||
          !overlaps(p.nodes[t].type, et->target_type)) {
        error(e.loc, "edge '" + e.name() + "' can never match: " + e.type + " connects " +
                         et->source_type + " to " + et->target_type);
      }
    }
    if (p.condition) {
      bind_pattern_nodes(p);
      Type t = check(p.condition);
      if (!t.error() && t.tag != Tag::kBool) {
        error(p.condition->loc, "condition must be Boolean, got " + describe(t));
      } else if (t.variable) {
        error(p.condition->loc, "condition must not depend on mapping variables");
      }
      env_.clear();
    }
  }

  void check_value(const ExprPtr& e, const AttributeDecl& decl, const std::string& what) {
    Type t = check(e);
    if (t.error()) return;
    if (t.variable) {
      error(e->loc, what + " must not depend on mapping variables");
      return;
    }
    bool ok = (decl.kind == AttrKind::kInt && t.tag == Tag::kInt) ||
              (decl.kind == AttrKind::kReal && t.numeric()) ||
              (decl.kind == AttrKind::kBool && t.tag == Tag::kBool) ||
              (decl.kind == AttrKind::kString && t.tag == Tag::kString);
    if (!ok) {
      error(e->loc, what + " has kind " + std::string(to_string(decl.kind)) +
                        " but the value is " + describe(t));
    }
  }

  void check_rule(const Rule& r) {
    check_pattern(r.lhs);
    std::map<std::string, std::string> known;  // name -> node type
    for (const PatternNode& n : r.lhs.nodes) known[n.name] = n.type;
    bind_pattern_nodes(r.lhs);
    auto node_type = [&](const std::string& name, SourceLoc loc) -> const std::string* {
      auto it = known.find(name);
      if (it == known.end()) {
        error(loc, "rule '" + r.name + "' action references unknown node '" + name + "'");
        return nullptr;
      }
      return &it->second;
    };
    auto check_edge_action = [&](const std::string& type, const std::string& src,
                                 const std::string& tgt, SourceLoc loc) {
      const EdgeType* et = mm_.find_edge_type(type);
      const std::string* st = node_type(src, loc);
      const std::string* tt = node_type(tgt, loc);
      if (!et) {
        error(loc, "unknown edge type '" + type + "'");
        return;
      }
      if (st && !mm_.is_subtype(*st, et->source_type)) {
        error(loc, "'" + src + "' (" + *st + ") cannot be the source of " + type);
      }
      if (tt && !mm_.is_subtype(*tt, et->target_type)) {
        error(loc, "'" + tgt + "' (" + *tt + ") cannot be the target of " + type);
      }
    };
    for (const RuleAction& action : r.actions) {
      std::visit(
          Overloaded{
              [&](const CreateNodeAction& a) {
                if (known.count(a.name) || kReserved.count(a.name)) {
                  error(a.loc, "created node '" + a.name + "' clashes with an existing name");
                }
                if (!mm_.find_node_type(a.type)) {
                  error(a.loc, "unknown type '" + a.type + "'");
                  return;
                }
                for (const auto& [attr, expr] : a.init) {
                  const AttributeDecl* decl = mm_.find_attribute(a.type, attr);
                  if (!decl) {
                    error(expr->loc, "type '" + a.type + "' has no attribute '" + attr + "'");
                  } else {
                    check_value(expr, *decl, a.name + "." + attr);
                  }
                }
                known[a.name] = a.type;
              },
              [&](const CreateEdgeAction& a) { check_edge_action(a.type, a.src, a.tgt, a.loc); },
              [&](const DeleteEdgeAction& a) {
                if (!mm_.find_edge_type(a.type)) error(a.loc, "unknown edge type '" + a.type + "'");
                for (const std::string* n : {&a.src, &a.tgt}) {
                  if (r.lhs.index_of(*n) < 0) error(a.loc, "deleted edge endpoint '" + *n + "' is not an LHS node");
                }
              },
              [&](const DeleteNodeAction& a) {
                if (r.lhs.index_of(a.name) < 0) error(a.loc, "deleted node '" + a.name + "' is not an LHS node");
              },
              [&](const SetAttrAction& a) {
                const std::string* t = node_type(a.node, a.loc);
                if (!t) return;
                const AttributeDecl* decl = mm_.find_attribute(*t, a.attribute);
                if (!decl) {
                  error(a.loc, "type '" + *t + "' has no attribute '" + a.attribute + "'");
                  return;
                }
                check_value(a.value, *decl, a.node + "." + a.attribute);
              },
          },
          action);
    }
    env_.clear();
  }

  // Binds `self` for the context; false if the context is invalid.
  bool bind_context(const Context& ctx) {
    env_.clear();
    Type self;
    switch (ctx.kind) {
      case ContextKind::kClass:
        if (!mm_.find_node_type(ctx.target)) {
          error(ctx.loc, "unknown type '" + ctx.target + "'");
          return false;
        }
        self.tag = Tag::kNode;
        self.name = ctx.target;
        break;
      case ContextKind::kMapping: {
        const MappingDecl* m = spec_.find_mapping(ctx.target);
        if (!m) {
          error(ctx.loc, "unknown mapping '" + ctx.target + "'");
          return false;
        }
        if (!spec_.find_rule(m->rule)) return false;
        self.tag = Tag::kMatch;
        self.name = m->rule;
        self.mapping = true;
        break;
      }
      case ContextKind::kPattern:
        if (!spec_.find_pattern(ctx.target) && !spec_.find_rule(ctx.target)) {
          error(ctx.loc, "unknown pattern '" + ctx.target + "'");
          return false;
        }
        self.tag = Tag::kMatch;
        self.name = ctx.target;
        break;
    }
    env_["self"] = self;
    return true;
  }

  const Pattern* pattern_named(const std::string& name) const {
    if (const Rule* r = spec_.find_rule(name)) return &r->lhs;
    return spec_.find_pattern(name);
  }

  Type check_ref(const RefExpr& r, SourceLoc loc) {
    auto it = env_.find(r.root);
    if (it == env_.end()) {
      error(loc, "unknown name '" + r.root + "'");
      return simple(Tag::kError);
    }
    Type cur = it->second;
    if (r.node) {
      if (cur.tag == Tag::kNode) {
        error(loc, "'" + r.root + "' is a model element; .nodes() applies only to matches "
                   "(pattern or mapping contexts)");
        return simple(Tag::kError);
      }
      if (cur.tag != Tag::kMatch) {
        error(loc, ".nodes() applied to " + describe(cur));
        return simple(Tag::kError);
      }
      const Pattern* p = pattern_named(cur.name);
      int i = p ? p->index_of(*r.node) : -1;
      if (i < 0) {
        error(loc, "pattern '" + cur.name + "' has no node '" + *r.node + "'");
        return simple(Tag::kError);
      }
      Type n;
      n.tag = Tag::kNode;
      n.name = p->nodes[i].type;
      cur = n;
    }
    if (r.value_call) {
      if (cur.tag != Tag::kMatch || r.node) {
        error(loc, ".value() applies only to mapping matches");
        return simple(Tag::kError);
      }
      if (!cur.mapping) {
        error(loc, "pattern matches carry no ILP variable; .value() needs a mapping");
        return simple(Tag::kError);
      }
      return simple(Tag::kInt, true);
    }
    if (r.attr) {
      if (cur.tag != Tag::kNode) {
        error(loc, "attribute '" + *r.attr + "' accessed on " + describe(cur) +
                       (cur.tag == Tag::kMatch ? "; use .nodes().NAME" : ""));
        return simple(Tag::kError);
      }
      const AttributeDecl* decl = mm_.find_attribute(cur.name, *r.attr);
      if (!decl) {
        error(loc, "unknown attribute '" + *r.attr + "' on type '" + cur.name + "'");
        return simple(Tag::kError);
      }
      return from_kind(decl->kind);
    }
    return cur;
  }

  Type check(const ExprPtr& e) {
    const SourceLoc loc = e->loc;
    return std::visit(
        Overloaded{
            [&](const NumberLit& x) { return simple(x.integral ? Tag::kInt : Tag::kReal); },
            [&](const BoolLit&) { return simple(Tag::kBool); },
            [&](const StringLit&) { return simple(Tag::kString); },
            [&](const RefExpr& x) { return check_ref(x, loc); },
            [&](const ArithExpr& x) {
              Type l = check(x.lhs), r = check(x.rhs);
              if (l.error() || r.error()) return simple(Tag::kError);
              if (!l.numeric() || !r.numeric()) {
                error(loc, "operator " + std::string(to_string(x.op)) + " needs numbers, got " +
                               describe(l) + " and " + describe(r));
                return simple(Tag::kError);
              }
              if (x.op == ArithOp::kMul && l.variable && r.variable) {
                error(loc, "nonlinear variable term: product of two variable-bearing terms");
                return simple(Tag::kError);
              }
              if (x.op == ArithOp::kDiv && r.variable) {
                error(loc, "nonlinear variable term: division by a variable-bearing term");
                return simple(Tag::kError);
              }
              bool integral = l.tag == Tag::kInt && r.tag == Tag::kInt && x.op != ArithOp::kDiv;
              return simple(integral ? Tag::kInt : Tag::kReal, l.variable || r.variable);
            },
            [&](const NegExpr& x) {
              Type t = check(x.operand);
              if (!t.error() && !t.numeric()) {
                error(loc, "unary '-' needs a number, got " + describe(t));
                return simple(Tag::kError);
              }
              return t;
            },
            [&](const FuncExpr& x) {
              Type t = check(x.operand);
              if (t.error()) return t;
              if (!t.numeric()) {
                error(loc, std::string(to_string(x.func)) + " needs a number, got " + describe(t));
                return simple(Tag::kError);
              }
              if (t.variable) {
                error(loc, std::string(to_string(x.func)) +
                               " is only allowed on constant subexpressions");
                return simple(Tag::kError);
              }
              return simple(Tag::kReal);
            },
            [&](const RelExpr& x) {
              Type l = check(x.lhs), r = check(x.rhs);
              if (l.error() || r.error()) return simple(Tag::kError);
              bool variable = l.variable || r.variable;
              if (l.numeric() && r.numeric()) return simple(Tag::kBool, variable);
              bool same = l.tag == r.tag &&
                          (l.tag == Tag::kBool || l.tag == Tag::kString ||
                           l.tag == Tag::kNode || l.tag == Tag::kMatch);
              if (!same) {
                error(loc, "cannot compare " + describe(l) + " with " + describe(r));
                return simple(Tag::kError);
              }
              if (x.op != RelOp::kEq && x.op != RelOp::kNe) {
                error(loc, "only == and != apply to " + describe(l));
                return simple(Tag::kError);
              }
              return simple(Tag::kBool, variable);
            },
            [&](const LogicExpr& x) {
              Type l = check(x.lhs), r = check(x.rhs);
              if (l.error() || r.error()) return simple(Tag::kError);
              if (l.tag != Tag::kBool || r.tag != Tag::kBool) {
                error(loc, "operator " + std::string(to_string(x.op)) + " needs Booleans, got " +
                               describe(l) + " and " + describe(r));
                return simple(Tag::kError);
              }
              return simple(Tag::kBool, l.variable || r.variable);
            },
            [&](const NotExpr& x) {
              Type t = check(x.operand);
              if (!t.error() && t.tag != Tag::kBool) {
                error(loc, "'!' needs a Boolean, got " + describe(t));
                return simple(Tag::kError);
              }
              return t;
            },
            [&](const SumExpr& x) { return check_sum(x, loc); },
        },
        e->node);
  }

  Type check_sum(const SumExpr& s, SourceLoc loc) {
    const MappingDecl* m = spec_.find_mapping(s.mapping);
    if (!m) {
      error(loc, "unknown mapping '" + s.mapping + "'");
      return simple(Tag::kError);
    }
    if (!spec_.find_rule(m->rule)) return simple(Tag::kError);
    Type match;
    match.tag = Tag::kMatch;
    match.name = m->rule;
    match.mapping = true;
    auto with_var = [&](const std::string& var, const ExprPtr& body) {
      if (kReserved.count(var)) {
        error(body->loc, "'" + var + "' cannot be used as a variable name");
      }
      auto saved = env_.find(var) != env_.end() ? std::optional<Type>(env_[var]) : std::nullopt;
      env_[var] = match;
      Type t = check(body);
      if (saved) {
        env_[var] = *saved;
      } else {
        env_.erase(var);
      }
      return t;
    };
    if (s.filter) {
      Type f = with_var(s.filter_var, s.filter);
      if (!f.error() && f.tag != Tag::kBool) {
        error(s.filter->loc, "filter predicate must be Boolean, got " + describe(f));
      } else if (f.variable) {
        error(s.filter->loc, "filter predicate must not reference mapping variables");
      }
    }
    Type body = with_var(s.sum_var, s.body);
    if (body.error()) return body;
    if (!body.numeric()) {
      error(s.body->loc, "sum body must be numeric, got " + describe(body));
      return simple(Tag::kError);
    }
    if (body.variable) {
      error(s.body->loc, "sum body must be constant per match");
      return simple(Tag::kError);
    }
    return simple(body.tag, true);
  }

  // Weighted sum of objectives: returns false on a non-constant weight.
  bool weights(const ExprPtr& e, double scale, std::map<std::string, double>& w,
               double& offset) {
    return std::visit(
        Overloaded{
            [&](const NumberLit& x) {
              offset += scale * x.value;
              return true;
            },
            [&](const RefExpr& x) {
              if (x.node || x.attr || x.value_call || !spec_.find_objective(x.root)) {
                error(e->loc, "unknown objective '" + x.root + "'");
                return false;
              }
              w[x.root] += scale;
              return true;
            },
            [&](const NegExpr& x) { return weights(x.operand, -scale, w, offset); },
            [&](const ArithExpr& x) {
              if (x.op == ArithOp::kAdd || x.op == ArithOp::kSub) {
                return weights(x.lhs, scale, w, offset) &&
                       weights(x.rhs, x.op == ArithOp::kAdd ? scale : -scale, w, offset);
              }
              auto constant = [&](const ExprPtr& c, double& v) {
                std::map<std::string, double> cw;
                double co = 0;
                if (!weights(c, 1.0, cw, co)) return false;
                for (const auto& [name, weight] : cw) {
                  if (weight != 0) {
                    error(c->loc, "weight not constant: objective '" + name +
                                      "' appears in a product");
                    return false;
                  }
                }
                v = co;
                return true;
              };
              double v = 0;
              if (x.op == ArithOp::kDiv) {
                if (!constant(x.rhs, v)) return false;
                if (v == 0) {
                  error(x.rhs->loc, "division by zero in global objective");
                  return false;
                }
                return weights(x.lhs, scale / v, w, offset);
              }
              std::map<std::string, double> lw;
              double lo = 0;
              bool lhs_constant = true;
              if (!weights(x.lhs, 1.0, lw, lo)) return false;
              for (const auto& [name, weight] : lw) lhs_constant &= weight == 0;
              if (lhs_constant) return weights(x.rhs, scale * lo, w, offset);
              if (!constant(x.rhs, v)) return false;
              return weights(x.lhs, scale * v, w, offset);
            },
            [&](const auto&) {
              error(e->loc, "global objective must be a weighted sum of objectives");
              return false;
            },
        },
        e->node);
  }

  void check_global(TypedSpec& out) {
    const auto& g = spec_.global_objective;
    if (!g) {
      error(SourceLoc{1, 1}, "missing global objective");
      return;
    }
    std::map<std::string, double> w;
    double offset = 0;
    if (!weights(g->expr, 1.0, w, offset)) return;
    for (const ObjectiveDecl& o : spec_.objectives) {
      auto it = w.find(o.name);
      if (it != w.end()) out.objective_weights.emplace_back(o.name, it->second);
    }
    out.objective_offset = offset;
  }

  const Spec& spec_;
  const Metamodel& mm_;
  std::map<std::string, Type> env_;
};

}  // namespace

const Pattern& TypedSpec::context_pattern(const Context& context) const {
  if (context.kind == ContextKind::kMapping) return mapping_rule(context.target).lhs;
  if (const Pattern* p = spec.find_pattern(context.target)) return *p;
  if (const Rule* r = spec.find_rule(context.target)) return r->lhs;
  throw Error("unknown pattern '" + context.target + "'");
}

const Rule& TypedSpec::mapping_rule(std::string_view mapping) const {
  const MappingDecl* m = spec.find_mapping(mapping);
  const Rule* r = m ? spec.find_rule(m->rule) : nullptr;
  if (!r) throw Error("unknown mapping '" + std::string(mapping) + "'");
  return *r;
}

TypedSpec typecheck(Spec spec, std::shared_ptr<const Metamodel> metamodel) {
  TypedSpec out;
  out.metamodel = std::move(metamodel);
  out.spec = std::move(spec);
  Checker checker(out.spec, *out.metamodel);
  checker.check_all(out);
  if (!checker.errors.empty()) throw SpecError(std::move(checker.errors));
  out.warnings = std::move(checker.warnings);
  return out;
}

}  // namespace gips
