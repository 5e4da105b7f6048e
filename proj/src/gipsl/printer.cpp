#include <charconv>
#include <cmath>

#include "gips/gipsl/parser.hpp"

namespace gips {

namespace {

enum Prec { kOr = 1, kAnd, kRel, kAdd, kMul, kUnary, kPrimary };

int precedence(const Expr& e) {
  return std::visit(
      Overloaded{
          [](const LogicExpr& x) -> int { return x.op == BoolOp::kOr ? kOr : kAnd; },
          [](const RelExpr&) -> int { return kRel; },
          [](const ArithExpr& x) -> int {
            return x.op == ArithOp::kAdd || x.op == ArithOp::kSub ? kAdd : kMul;
          },
          [](const NegExpr&) -> int { return kUnary; },
          [](const NotExpr&) -> int { return kUnary; },
          [](const FuncExpr&) -> int { return kUnary; },
          [](const auto&) -> int { return kPrimary; },
      },
      e.node);
}

std::string format_number(const NumberLit& n) {
  char buf[64];
  if (n.integral && std::abs(n.value) < 1e300) {
    auto res = std::to_chars(buf, buf + sizeof buf, n.value, std::chars_format::fixed, 0);
    return std::string(buf, res.ptr);
  }
  auto res = std::to_chars(buf, buf + sizeof buf, n.value);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

void print(std::string& out, const ExprPtr& e, int min_prec);

void print_operand(std::string& out, const ExprPtr& e, int min_prec) {
  if (precedence(*e) < min_prec) {
    out += "(";
    print(out, e, 0);
    out += ")";
  } else {
    print(out, e, min_prec);
  }
}

void print_binary(std::string& out, int prec, std::string_view op,
                  const ExprPtr& lhs, const ExprPtr& rhs) {
  print_operand(out, lhs, prec);
  out += " ";
  out += op;
  out += " ";
  print_operand(out, rhs, prec + 1);
}

void print(std::string& out, const ExprPtr& e, int) {
  std::visit(
      Overloaded{
          [&](const NumberLit& x) { out += format_number(x); },
          [&](const BoolLit& x) { out += x.value ? "true" : "false"; },
          [&](const StringLit& x) { out += "\"" + x.value + "\""; },
          [&](const RefExpr& x) {
            out += x.root;
            if (x.node) out += ".nodes()." + *x.node;
            if (x.attr) out += "." + *x.attr;
            if (x.value_call) out += ".value()";
          },
          [&](const ArithExpr& x) {
            print_binary(out, precedence(*e), to_string(x.op), x.lhs, x.rhs);
          },
          [&](const RelExpr& x) {
            print_binary(out, kRel, to_string(x.op), x.lhs, x.rhs);
          },
          [&](const LogicExpr& x) {
            print_binary(out, precedence(*e), to_string(x.op), x.lhs, x.rhs);
          },
          [&](const NegExpr& x) {
            out += "-";
            print_operand(out, x.operand, kUnary);
          },
          [&](const NotExpr& x) {
            out += "!";
            print_operand(out, x.operand, kUnary);
          },
          [&](const FuncExpr& x) {
            out += to_string(x.func);
            out += "(";
            print(out, x.operand, 0);
            out += ")";
          },
          [&](const SumExpr& x) {
            out += "mappings." + x.mapping;
            if (x.filter) {
              out += "->filter(" + x.filter_var + " | ";
              print(out, x.filter, 0);
              out += ")";
            }
            out += "->sum(" + x.sum_var + " | ";
            print(out, x.body, 0);
            out += ")";
          },
      },
      e->node);
}

void print_pattern_body(std::string& out, const Pattern& p) {
  for (const PatternNode& n : p.nodes) {
    out += "  node " + n.name + " : " + n.type + ";\n";
  }
  for (const PatternEdge& e : p.edges) {
    out += "  edge " + e.src + " -" + e.type + "-> " + e.tgt + ";\n";
  }
  if (p.condition) out += "  condition " + print_expr(p.condition) + ";\n";
}

std::string context_str(const Context& c) {
  return "-> " + std::string(to_string(c.kind)) + "::" + c.target;
}

}  // namespace

std::string print_expr(const ExprPtr& expr) {
  std::string out;
  if (expr) print(out, expr, 0);
  return out;
}

std::string print_spec(const Spec& spec) {
  std::string out;
  for (const Rule& r : spec.rules) {
    out += "rule " + r.name + " {\n";
    print_pattern_body(out, r.lhs);
    for (const RuleAction& action : r.actions) {
      std::visit(
          Overloaded{
              [&](const CreateNodeAction& a) {
                out += "  create node " + a.name + " : " + a.type;
                if (!a.init.empty()) {
                  out += " {";
                  for (size_t i = 0; i < a.init.size(); ++i) {
                    out += i ? ", " : " ";
                    out += a.init[i].first + " := " + print_expr(a.init[i].second);
                  }
                  out += " }";
                }
                out += ";\n";
              },
              [&](const CreateEdgeAction& a) {
                out += "  create edge " + a.src + " -" + a.type + "-> " + a.tgt + ";\n";
              },
              [&](const DeleteEdgeAction& a) {
                out += "  delete edge " + a.src + " -" + a.type + "-> " + a.tgt + ";\n";
              },
              [&](const DeleteNodeAction& a) { out += "  delete node " + a.name + ";\n"; },
              [&](const SetAttrAction& a) {
                out += "  set " + a.node + "." + a.attribute +
                       " := " + print_expr(a.value) + ";\n";
              },
          },
          action);
    }
    out += "}\n\n";
  }
  for (const Pattern& p : spec.patterns) {
    out += "pattern " + p.name + " {\n";
    print_pattern_body(out, p);
    out += "}\n\n";
  }
  for (const MappingDecl& m : spec.mappings) {
    out += "mapping " + m.name + " with " + m.rule + ";\n";
  }
  if (!spec.mappings.empty()) out += "\n";
  for (const ConstraintDecl& c : spec.constraints) {
    out += "constraint " + context_str(c.context) + " {\n  " +
           print_expr(c.body) + "\n}\n\n";
  }
  for (const ObjectiveDecl& o : spec.objectives) {
    out += "objective " + o.name + " " + context_str(o.context) + " {\n  " +
           print_expr(o.body) + "\n}\n\n";
  }
  if (spec.global_objective) {
    out += "global objective : " +
           std::string(to_string(spec.global_objective->sense)) + " {\n  " +
           print_expr(spec.global_objective->expr) + "\n}\n";
  }
  return out;
}

}  // namespace gips
