#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gips/gipsl/expr.hpp"
#include "gips/model/graph.hpp"
#include "gips/pattern/pattern.hpp"

namespace gips {

// Matches of one mapping (with their ILP variable indices) or one pattern.
struct MatchSet {
  std::string name;
  const Pattern* pattern = nullptr;
  std::vector<Match> matches;
  std::vector<int> variables;  // empty for plain patterns
};

struct NodeRef {
  std::string id;
  bool operator==(const NodeRef&) const = default;
};

struct MatchRef {
  const MatchSet* set = nullptr;
  size_t index = 0;
  bool operator==(const MatchRef&) const = default;

  const Match& match() const { return set->matches[index]; }
};

// Generation-time values: attribute values plus references to graph nodes
// and matches.
using Value = std::variant<std::int64_t, double, bool, std::string, NodeRef,
                           MatchRef>;

std::string describe(const Value& v);
bool is_numeric(const Value& v);
double as_double(const Value& v);

// Name bindings for `self`, pattern nodes and lambda variables. Later
// bindings shadow earlier ones.
class Scope {
 public:
  void bind(std::string name, Value value) {
    entries_.emplace_back(std::move(name), std::move(value));
  }
  void pop() { entries_.pop_back(); }
  const Value* find(std::string_view name) const;

 private:
  std::vector<std::pair<std::string, Value>> entries_;
};

// Evaluates a variable-free expression. Throws GenerationError when the
// expression refers to mapping variables or fails (division by zero,
// non-finite results, unbound names).
Value eval_constant(const ExprPtr& expr, const Graph& graph, const Scope& scope);

// Resolves `root[.nodes().N]` without the trailing attribute / value() step.
Value resolve_ref_target(const RefExpr& ref, const Graph& graph,
                         const Scope& scope, SourceLoc loc);

Value apply_arith(ArithOp op, const Value& lhs, const Value& rhs, SourceLoc loc);
bool compare_values(RelOp op, const Value& lhs, const Value& rhs, SourceLoc loc);

// Attribute condition of `pattern` under a full binding.
bool eval_condition(const Pattern& pattern, const Graph& graph,
                    const std::vector<std::string>& binding);

}  // namespace gips
