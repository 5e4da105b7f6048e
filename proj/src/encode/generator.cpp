#include "gips/encode/generator.hpp"

#include <cmath>

#include "gips/pattern/matcher.hpp"

namespace gips {

namespace {

bool mentions_variables(const ExprPtr& e) {
  if (!e) return false;
  return std::visit(
      Overloaded{
          [](const RefExpr& x) { return x.value_call; },
          [](const SumExpr&) { return true; },
          [](const ArithExpr& x) { return mentions_variables(x.lhs) || mentions_variables(x.rhs); },
          [](const RelExpr& x) { return mentions_variables(x.lhs) || mentions_variables(x.rhs); },
          [](const LogicExpr& x) { return mentions_variables(x.lhs) || mentions_variables(x.rhs); },
          [](const NegExpr& x) { return mentions_variables(x.operand); },
          [](const FuncExpr& x) { return mentions_variables(x.operand); },
          [](const NotExpr& x) { return mentions_variables(x.operand); },
          [](const auto&) { return false; },
      },
      e->node);
}

[[noreturn]] void fail(SourceLoc loc, const std::string& msg) {
  throw GenerationError(loc.valid() ? loc.str() + ": " + msg : msg);
}

bool integral_term(const LinearTerm& t, const IlpProblem& p) {
  if (!t.integral()) return false;
  for (const auto& [var, c] : t.coeffs) {
    if (!p.variables[var].integral()) return false;
  }
  return true;
}

std::string describe_self(const Value& self) {
  if (const auto* m = std::get_if<MatchRef>(&self)) {
    const Pattern& p = *m->set->pattern;
    std::string s = m->set->name + "(";
    for (size_t i = 0; i < p.nodes.size(); ++i) {
      if (i) s += ", ";
      s += p.nodes[i].name + "=" + m->match().nodes[i];
    }
    return s + ")";
  }
  return describe(self);
}

bool compare_constant(RelOp op, double t) {
  switch (op) {
    case RelOp::kLt:
      return t < 0;
    case RelOp::kLe:
      return t <= 0;
    case RelOp::kEq:
      return t == 0;
    case RelOp::kNe:
      return t != 0;
    case RelOp::kGe:
      return t >= 0;
    case RelOp::kGt:
      return t > 0;
  }
  return false;
}

int intern(std::vector<Atom>& atoms, Atom atom) {
  for (size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i] == atom) return static_cast<int>(i);
  }
  atoms.push_back(std::move(atom));
  return static_cast<int>(atoms.size() - 1);
}

}  // namespace

Instantiation instantiate_mappings(const TypedSpec& spec,
                                   const std::map<std::string, std::vector<Match>>& matches,
                                   IlpProblem& problem, MappingTable& table) {
  Instantiation inst;
  for (const MappingDecl& m : spec.spec.mappings) {
    const Rule& rule = spec.mapping_rule(m.name);
    MatchSet& set = inst.mappings[m.name];
    set.name = m.name;
    set.pattern = &rule.lhs;
    auto it = matches.find(m.name);
    if (it == matches.end()) continue;
    set.matches = it->second;
    for (size_t k = 0; k < set.matches.size(); ++k) {
      int var = problem.add_variable("m_" + m.name + "_" + std::to_string(k), VarKind::kBinary);
      set.variables.push_back(var);
      table.add(var, m.name, set.matches[k]);
    }
  }
  return inst;
}

std::vector<Value> expand_contexts(const TypedSpec& spec, const Context& context,
                                   const Graph& graph, Instantiation& inst) {
  std::vector<Value> out;
  const MatchSet* set = nullptr;
  switch (context.kind) {
    case ContextKind::kClass:
      for (std::string& id : graph.nodes_of_type(context.target)) out.push_back(NodeRef{std::move(id)});
      return out;
    case ContextKind::kMapping:
      set = &inst.mappings.at(context.target);
      break;
    case ContextKind::kPattern: {
      auto it = inst.patterns.find(context.target);
      if (it == inst.patterns.end()) {
        const Pattern& p = spec.context_pattern(context);
        MatchSet s;
        s.name = context.target;
        s.pattern = &p;
        s.matches = find_matches(graph, p);
        it = inst.patterns.emplace(context.target, std::move(s)).first;
      }
      set = &it->second;
      break;
    }
  }
  for (size_t i = 0; i < set->matches.size(); ++i) out.push_back(MatchRef{set, i});
  return out;
}

LinearTerm lower_sets(const ExprPtr& e, const Graph& graph, Scope& scope,
                      const Instantiation& inst, const IlpProblem& problem) {
  if (!mentions_variables(e)) {
    Value v = eval_constant(e, graph, scope);
    if (!is_numeric(v)) fail(e->loc, "expected a number, got " + describe(v));
    return LinearTerm::of_constant(as_double(v));
  }
  auto rec = [&](const ExprPtr& sub) { return lower_sets(sub, graph, scope, inst, problem); };
  return std::visit(
      Overloaded{
          [&](const ArithExpr& x) {
            LinearTerm l = rec(x.lhs);
            LinearTerm r = rec(x.rhs);
            switch (x.op) {
              case ArithOp::kAdd:
                l.add(r);
                return l;
              case ArithOp::kSub:
                l.add(r, -1);
                return l;
              case ArithOp::kMul:
                if (l.is_constant()) {
                  r.scale(l.constant);
                  return r;
                }
                if (!r.is_constant()) fail(e->loc, "nonlinear variable term");
                l.scale(r.constant);
                return l;
              case ArithOp::kDiv:
                if (!r.is_constant()) fail(e->loc, "division by a variable-bearing term");
                if (r.constant == 0) fail(e->loc, "division by zero");
                l.scale(1 / r.constant);
                return l;
            }
            return l;
          },
          [&](const NegExpr& x) {
            LinearTerm t = rec(x.operand);
            t.scale(-1);
            return t;
          },
          [&](const RefExpr& x) {
            Value target = resolve_ref_target(x, graph, scope, e->loc);
            const auto* m = std::get_if<MatchRef>(&target);
            if (!m || m->set->variables.empty()) {
              fail(e->loc, ".value() needs a mapping match, got " + describe(target));
            }
            return LinearTerm::of_variable(m->set->variables[m->index]);
          },
          [&](const SumExpr& x) {
            auto it = inst.mappings.find(x.mapping);
            if (it == inst.mappings.end()) fail(e->loc, "unknown mapping '" + x.mapping + "'");
            const MatchSet& set = it->second;
            LinearTerm t;
            for (size_t i = 0; i < set.matches.size(); ++i) {
              MatchRef ref{&set, i};
              if (x.filter) {
                scope.bind(x.filter_var, ref);
                Value keep = eval_constant(x.filter, graph, scope);
                scope.pop();
                const bool* b = std::get_if<bool>(&keep);
                if (!b) fail(x.filter->loc, "filter predicate is not Boolean");
                if (!*b) continue;
              }
              scope.bind(x.sum_var, ref);
              Value c = eval_constant(x.body, graph, scope);
              scope.pop();
              if (!is_numeric(c)) fail(x.body->loc, "sum body is not numeric");
              double coeff = as_double(c);
              if (!std::isfinite(coeff)) fail(x.body->loc, "non-finite coefficient");
              t.add(LinearTerm::of_variable(set.variables[i], coeff));
            }
            return t;
          },
          [&](const auto&) -> LinearTerm { fail(e->loc, "expression is not linear arithmetic"); },
      },
      e->node);
}

Formula lower_bool(const ExprPtr& e, const Graph& graph, Scope& scope,
                   const Instantiation& inst, const IlpProblem& problem,
                   std::vector<Atom>& atoms) {
  if (!mentions_variables(e)) {
    Value v = eval_constant(e, graph, scope);
    const bool* b = std::get_if<bool>(&v);
    if (!b) fail(e->loc, "expected a Boolean, got " + describe(v));
    return Formula::constant(*b);
  }
  auto rec = [&](const ExprPtr& sub) {
    return lower_bool(sub, graph, scope, inst, problem, atoms);
  };
  return std::visit(
      Overloaded{
          [&](const LogicExpr& x) {
            std::vector<Formula> parts;
            parts.push_back(rec(x.lhs));
            parts.push_back(rec(x.rhs));
            return x.op == BoolOp::kAnd ? Formula::conj(std::move(parts))
                                        : Formula::disj(std::move(parts));
          },
          [&](const NotExpr& x) { return Formula::negate(rec(x.operand)); },
          [&](const RelExpr& x) {
            LinearTerm t = lower_sets(x.lhs, graph, scope, inst, problem);
            t.add(lower_sets(x.rhs, graph, scope, inst, problem), -1);
            if (t.is_constant()) return Formula::constant(compare_constant(x.op, t.constant));
            const double eps = integral_term(t, problem) ? 1.0 : 1e-6;
            Atom atom{t, Relation::kLe};
            switch (x.op) {
              case RelOp::kLt:
                atom.term.constant += eps;
                break;
              case RelOp::kLe:
                break;
              case RelOp::kEq:
              case RelOp::kNe:
                atom.rel = Relation::kEq;
                break;
              case RelOp::kGe:
                atom.rel = Relation::kGe;
                break;
              case RelOp::kGt:
                atom.rel = Relation::kGe;
                atom.term.constant -= eps;
                break;
            }
            Formula f = Formula::of_atom(intern(atoms, std::move(atom)));
            return x.op == RelOp::kNe ? Formula::negate(std::move(f)) : f;
          },
          [&](const auto&) -> Formula { fail(e->loc, "expression is not Boolean"); },
      },
      e->node);
}

void build_objective(const TypedSpec& spec, const Graph& graph, Instantiation& inst,
                     IlpProblem& problem) {
  IlpObjective& obj = problem.objective;
  obj.sense = spec.spec.global_objective ? spec.spec.global_objective->sense : Sense::kMin;
  for (const auto& [name, weight] : spec.objective_weights) {
    const ObjectiveDecl& o = *spec.spec.find_objective(name);
    for (const Value& self : expand_contexts(spec, o.context, graph, inst)) {
      Scope scope;
      scope.bind("self", self);
      try {
        LinearTerm t;
        if (o.context.kind == ContextKind::kMapping) {
          Value c = eval_constant(o.body, graph, scope);
          if (!is_numeric(c)) fail(o.body->loc, "objective value is not numeric");
          const MatchRef& m = std::get<MatchRef>(self);
          t = LinearTerm::of_variable(m.set->variables[m.index], as_double(c));
        } else {
          t = lower_sets(o.body, graph, scope, inst, problem);
        }
        for (const auto& [var, c] : t.coeffs) {
          if (!std::isfinite(c)) fail(o.body->loc, "non-finite objective coefficient");
        }
        obj.constant += weight * t.constant;
        for (const auto& [var, c] : t.coeffs) {
          double& slot = obj.coeffs[var];
          slot += weight * c;
          if (slot == 0) obj.coeffs.erase(var);
        }
      } catch (const GenerationError& err) {
        throw GenerationError("objective " + name + " for " + describe_self(self) + ": " +
                              err.what());
      }
    }
  }
  obj.constant += spec.objective_offset;
  if (!std::isfinite(obj.constant)) throw GenerationError("non-finite objective constant");
}

GeneratedProblem generate(const TypedSpec& spec, const Graph& graph) {
  GeneratedProblem out;
  out.warnings = spec.warnings;
  std::map<std::string, std::vector<Match>> by_rule;
  std::map<std::string, std::vector<Match>> by_mapping;
  for (const MappingDecl& m : spec.spec.mappings) {
    auto it = by_rule.find(m.rule);
    if (it == by_rule.end()) {
      it = by_rule.emplace(m.rule, find_matches(graph, spec.mapping_rule(m.name).lhs)).first;
    }
    by_mapping[m.name] = it->second;
  }
  Instantiation inst = instantiate_mappings(spec, by_mapping, out.problem, out.table);

  for (const ConstraintDecl& c : spec.spec.constraints) {
    for (const Value& self : expand_contexts(spec, c.context, graph, inst)) {
      const std::string origin = c.label() + " for " + describe_self(self);
      try {
        Scope scope;
        scope.bind("self", self);
        std::vector<Atom> atoms;
        Formula f = lower_bool(c.body, graph, scope, inst, out.problem, atoms);
        Cnf cnf = to_cnf(f, static_cast<int>(atoms.size()));
        linearize(cnf, atoms, out.problem, origin);
      } catch (const GenerationError& err) {
        throw GenerationError(origin + ": " + err.what());
      }
    }
  }
  build_objective(spec, graph, inst, out.problem);
  return out;
}

}  // namespace gips
