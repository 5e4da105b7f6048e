#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gips/error.hpp"
#include "gips/gipsl/expr.hpp"

namespace gips {

struct PatternNode {
  std::string name;
  std::string type;
  SourceLoc loc;
};

struct PatternEdge {
  std::string type;
  std::string src;
  std::string tgt;
  SourceLoc loc;

  std::string name() const { return src + "-" + type + "->" + tgt; }
};

// Graph pattern: typed nodes, typed edges between them and an optional
// variable-free attribute condition over the nodes.
struct Pattern {
  std::string name;
  std::vector<PatternNode> nodes;
  std::vector<PatternEdge> edges;
  ExprPtr condition;  // null means `true`
  SourceLoc loc;

  // -1 when absent.
  int index_of(std::string_view node) const;
};

struct CreateNodeAction {
  std::string name;
  std::string type;
  std::vector<std::pair<std::string, ExprPtr>> init;
  SourceLoc loc;
};

struct CreateEdgeAction {
  std::string type;
  std::string src;
  std::string tgt;
  SourceLoc loc;
};

struct DeleteEdgeAction {
  std::string type;
  std::string src;
  std::string tgt;
  SourceLoc loc;
};

struct DeleteNodeAction {
  std::string name;
  SourceLoc loc;
};

struct SetAttrAction {
  std::string node;
  std::string attribute;
  ExprPtr value;
  SourceLoc loc;
};

using RuleAction = std::variant<CreateNodeAction, CreateEdgeAction,
                                DeleteEdgeAction, DeleteNodeAction,
                                SetAttrAction>;

// GT rule: the LHS is the precondition, the actions realize the RHS.
struct Rule {
  std::string name;
  Pattern lhs;
  std::vector<RuleAction> actions;
  SourceLoc loc;
};

// Binding of pattern nodes (by position in Pattern::nodes) to graph node ids.
struct Match {
  std::string pattern;
  std::vector<std::string> nodes;

  const std::string& at(const Pattern& p, std::string_view node) const;

  bool operator==(const Match&) const = default;
  auto operator<=>(const Match&) const = default;
};

}  // namespace gips
