#include "gips/gipsl/eval.hpp"

#include <cmath>

namespace gips {

namespace {

[[noreturn]] void fail(SourceLoc loc, const std::string& message) {
  throw GenerationError((loc.valid() ? loc.str() + ": " : std::string()) + message);
}

Value from_attr(const AttrValue& v) {
  return std::visit([](const auto& x) -> Value { return x; }, v);
}

Value checked_real(double v, SourceLoc loc) {
  if (!std::isfinite(v)) fail(loc, "non-finite value in expression");
  return v;
}

}  // namespace

std::string describe(const Value& v) {
  return std::visit(
      Overloaded{
          [](std::int64_t x) { return std::to_string(x); },
          [](double x) { return to_string(AttrValue(x)); },
          [](bool x) { return std::string(x ? "true" : "false"); },
          [](const std::string& x) { return "\"" + x + "\""; },
          [](const NodeRef& x) { return x.id; },
          [](const MatchRef& x) {
            return x.set->name + "#" + std::to_string(x.index);
          },
      },
      v);
}

bool is_numeric(const Value& v) {
  return std::holds_alternative<std::int64_t>(v) || std::holds_alternative<double>(v);
}

double as_double(const Value& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  if (const auto* d = std::get_if<double>(&v)) return *d;
  throw GenerationError("expected a number, got " + describe(v));
}

const Value* Scope::find(std::string_view name) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    if (it->first == name) return &it->second;
  }
  return nullptr;
}

Value resolve_ref_target(const RefExpr& ref, const Graph& graph,
                         const Scope& scope, SourceLoc loc) {
  const Value* root = scope.find(ref.root);
  if (!root) fail(loc, "unbound name '" + ref.root + "'");
  if (!ref.node) return *root;
  const auto* m = std::get_if<MatchRef>(root);
  if (!m) fail(loc, "'" + ref.root + "' is not a match");
  const Pattern& p = *m->set->pattern;
  int i = p.index_of(*ref.node);
  if (i < 0) fail(loc, "pattern '" + p.name + "' has no node '" + *ref.node + "'");
  (void)graph;
  return NodeRef{m->match().nodes[i]};
}

Value apply_arith(ArithOp op, const Value& lhs, const Value& rhs, SourceLoc loc) {
  if (!is_numeric(lhs) || !is_numeric(rhs)) {
    fail(loc, "arithmetic on non-numeric values " + describe(lhs) + " and " +
                  describe(rhs));
  }
  const auto* li = std::get_if<std::int64_t>(&lhs);
  const auto* ri = std::get_if<std::int64_t>(&rhs);
  if (li && ri && op != ArithOp::kDiv) {
    switch (op) {
      case ArithOp::kAdd:
        return *li + *ri;
      case ArithOp::kSub:
        return *li - *ri;
      default:
        return *li * *ri;
    }
  }
  double a = as_double(lhs), b = as_double(rhs);
  switch (op) {
    case ArithOp::kAdd:
      return checked_real(a + b, loc);
    case ArithOp::kSub:
      return checked_real(a - b, loc);
    case ArithOp::kMul:
      return checked_real(a * b, loc);
    case ArithOp::kDiv:
      if (b == 0) fail(loc, "division by zero");
      return checked_real(a / b, loc);
  }
  return 0.0;
}

bool compare_values(RelOp op, const Value& lhs, const Value& rhs, SourceLoc loc) {
  if (is_numeric(lhs) && is_numeric(rhs)) {
    const auto* li = std::get_if<std::int64_t>(&lhs);
    const auto* ri = std::get_if<std::int64_t>(&rhs);
    auto cmp = [op](auto a, auto b) {
      switch (op) {
        case RelOp::kLt:
          return a < b;
        case RelOp::kLe:
          return a <= b;
        case RelOp::kEq:
          return a == b;
        case RelOp::kNe:
          return a != b;
        case RelOp::kGe:
          return a >= b;
        case RelOp::kGt:
          return a > b;
      }
      return false;
    };
    if (li && ri) return cmp(*li, *ri);
    return cmp(as_double(lhs), as_double(rhs));
  }
  if (lhs.index() != rhs.index()) {
    fail(loc, "cannot compare " + describe(lhs) + " with " + describe(rhs));
  }
  if (op != RelOp::kEq && op != RelOp::kNe) {
    fail(loc, "only == and != apply to " + describe(lhs));
  }
  return (lhs == rhs) == (op == RelOp::kEq);
}

Value eval_constant(const ExprPtr& expr, const Graph& graph, const Scope& scope) {
  const SourceLoc loc = expr->loc;
  return std::visit(
      Overloaded{
          [&](const NumberLit& x) -> Value {
            if (x.integral && std::abs(x.value) < 9.2e18) {
              return static_cast<std::int64_t>(x.value);
            }
            return x.value;
          },
          [&](const BoolLit& x) -> Value { return x.value; },
          [&](const StringLit& x) -> Value { return x.value; },
          [&](const RefExpr& x) -> Value {
            if (x.value_call) fail(loc, "mapping variable in a constant expression");
            Value target = resolve_ref_target(x, graph, scope, loc);
            if (!x.attr) return target;
            const auto* n = std::get_if<NodeRef>(&target);
            if (!n) fail(loc, "attribute access on non-node " + describe(target));
            const Node* node = graph.find_node(n->id);
            if (!node) fail(loc, "missing node '" + n->id + "'");
            auto it = node->attrs.find(*x.attr);
            if (it == node->attrs.end()) {
              fail(loc, "node '" + n->id + "' has no attribute '" + *x.attr + "'");
            }
            return from_attr(it->second);
          },
          [&](const ArithExpr& x) -> Value {
            return apply_arith(x.op, eval_constant(x.lhs, graph, scope),
                               eval_constant(x.rhs, graph, scope), loc);
          },
          [&](const NegExpr& x) -> Value {
            Value v = eval_constant(x.operand, graph, scope);
            if (const auto* i = std::get_if<std::int64_t>(&v)) return -*i;
            return -as_double(v);
          },
          [&](const FuncExpr& x) -> Value {
            double v = as_double(eval_constant(x.operand, graph, scope));
            switch (x.func) {
              case Func::kSin:
                return checked_real(std::sin(v), loc);
              case Func::kCos:
                return checked_real(std::cos(v), loc);
              case Func::kSqrt:
                return checked_real(std::sqrt(v), loc);
            }
            return 0.0;
          },
          [&](const RelExpr& x) -> Value {
            return compare_values(x.op, eval_constant(x.lhs, graph, scope),
                                  eval_constant(x.rhs, graph, scope), loc);
          },
          [&](const LogicExpr& x) -> Value {
            auto truth = [&](const ExprPtr& e) {
              Value v = eval_constant(e, graph, scope);
              const bool* b = std::get_if<bool>(&v);
              if (!b) fail(e->loc, "expected a Boolean, got " + describe(v));
              return *b;
            };
            bool lhs = truth(x.lhs);
            if (x.op == BoolOp::kAnd && !lhs) return false;
            if (x.op == BoolOp::kOr && lhs) return true;
            return truth(x.rhs);
          },
          [&](const NotExpr& x) -> Value {
            Value v = eval_constant(x.operand, graph, scope);
            const bool* b = std::get_if<bool>(&v);
            if (!b) fail(loc, "expected a Boolean, got " + describe(v));
            return !*b;
          },
          [&](const SumExpr&) -> Value {
            fail(loc, "mapping sum in a constant expression");
          },
      },
      expr->node);
}

bool eval_condition(const Pattern& pattern, const Graph& graph,
                    const std::vector<std::string>& binding) {
  if (!pattern.condition) return true;
  Scope scope;
  for (size_t i = 0; i < pattern.nodes.size(); ++i) {
    scope.bind(pattern.nodes[i].name, NodeRef{binding[i]});
  }
  Value v = eval_constant(pattern.condition, graph, scope);
  const bool* b = std::get_if<bool>(&v);
  if (!b) throw GenerationError("condition of '" + pattern.name + "' is not Boolean");
  return *b;
}

}  // namespace gips
