#include "gips/gipsl/expr.hpp"

namespace gips {

std::string_view to_string(ArithOp op) {
  switch (op) {
    case ArithOp::kAdd:
      return "+";
    case ArithOp::kSub:
      return "-";
    case ArithOp::kMul:
      return "*";
    case ArithOp::kDiv:
      return "/";
  }
  return "?";
}

std::string_view to_string(RelOp op) {
  switch (op) {
    case RelOp::kLt:
      return "<";
    case RelOp::kLe:
      return "<=";
    case RelOp::kEq:
      return "==";
    case RelOp::kNe:
      return "!=";
    case RelOp::kGe:
      return ">=";
    case RelOp::kGt:
      return ">";
  }
  return "?";
}

std::string_view to_string(BoolOp op) { return op == BoolOp::kAnd ? "&" : "|"; }

std::string_view to_string(Func f) {
  switch (f) {
    case Func::kSin:
      return "sin";
    case Func::kCos:
      return "cos";
    case Func::kSqrt:
      return "sqrt";
  }
  return "?";
}

bool same_expr(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  if (a == b) return true;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      Overloaded{
          [&](const NumberLit& x) {
            const auto& y = std::get<NumberLit>(b->node);
            return x.value == y.value && x.integral == y.integral;
          },
          [&](const BoolLit& x) { return x.value == std::get<BoolLit>(b->node).value; },
          [&](const StringLit& x) {
            return x.value == std::get<StringLit>(b->node).value;
          },
          [&](const RefExpr& x) {
            const auto& y = std::get<RefExpr>(b->node);
            return x.root == y.root && x.node == y.node && x.attr == y.attr &&
                   x.value_call == y.value_call;
          },
          [&](const ArithExpr& x) {
            const auto& y = std::get<ArithExpr>(b->node);
            return x.op == y.op && same_expr(x.lhs, y.lhs) && same_expr(x.rhs, y.rhs);
          },
          [&](const NegExpr& x) {
            return same_expr(x.operand, std::get<NegExpr>(b->node).operand);
          },
          [&](const FuncExpr& x) {
            const auto& y = std::get<FuncExpr>(b->node);
            return x.func == y.func && same_expr(x.operand, y.operand);
          },
          [&](const RelExpr& x) {
            const auto& y = std::get<RelExpr>(b->node);
            return x.op == y.op && same_expr(x.lhs, y.lhs) && same_expr(x.rhs, y.rhs);
          },
          [&](const LogicExpr& x) {
            const auto& y = std::get<LogicExpr>(b->node);
            return x.op == y.op && same_expr(x.lhs, y.lhs) && same_expr(x.rhs, y.rhs);
          },
          [&](const NotExpr& x) {
            return same_expr(x.operand, std::get<NotExpr>(b->node).operand);
          },
          [&](const SumExpr& x) {
            const auto& y = std::get<SumExpr>(b->node);
            return x.mapping == y.mapping && x.filter_var == y.filter_var &&
                   same_expr(x.filter, y.filter) && x.sum_var == y.sum_var &&
                   same_expr(x.body, y.body);
          },
      },
      a->node);
}

}  // namespace gips
