#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "gips/error.hpp"

namespace gips {

enum class ArithOp { kAdd, kSub, kMul, kDiv };
enum class RelOp { kLt, kLe, kEq, kNe, kGe, kGt };
enum class BoolOp { kAnd, kOr };
enum class Func { kSin, kCos, kSqrt };

std::string_view to_string(ArithOp op);
std::string_view to_string(RelOp op);
std::string_view to_string(BoolOp op);
std::string_view to_string(Func f);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct NumberLit {
  double value = 0;
  bool integral = true;  // written without fraction or exponent
};

struct BoolLit {
  bool value = false;
};

struct StringLit {
  std::string value;
};

// Navigation from a root name: `self`, a pattern node, a lambda variable or
// (in the global objective) an objective name. Optional `.nodes().NODE`
// step, then optionally `.ATTR` or `.value()`.
struct RefExpr {
  std::string root;
  std::optional<std::string> node;
  std::optional<std::string> attr;
  bool value_call = false;
};

struct ArithExpr {
  ArithOp op;
  ExprPtr lhs, rhs;
};

struct NegExpr {
  ExprPtr operand;
};

struct FuncExpr {
  Func func;
  ExprPtr operand;
};

struct RelExpr {
  RelOp op;
  ExprPtr lhs, rhs;
};

struct LogicExpr {
  BoolOp op;
  ExprPtr lhs, rhs;
};

struct NotExpr {
  ExprPtr operand;
};

// mappings.NAME [->filter(v | pred)] ->sum(w | body)
struct SumExpr {
  std::string mapping;
  std::string filter_var;
  ExprPtr filter;  // null when absent
  std::string sum_var;
  ExprPtr body;
};

struct Expr {
  using Node = std::variant<NumberLit, BoolLit, StringLit, RefExpr, ArithExpr,
                            NegExpr, FuncExpr, RelExpr, LogicExpr, NotExpr,
                            SumExpr>;
  Node node;
  SourceLoc loc;
};

template <typename T>
ExprPtr make_expr(T node, SourceLoc loc = {}) {
  return std::make_shared<const Expr>(Expr{Expr::Node(std::move(node)), loc});
}

// Structural equality, ignoring source locations. Null equals null.
bool same_expr(const ExprPtr& a, const ExprPtr& b);

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace gips
