#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gips/error.hpp"
#include "gips/gipsl/expr.hpp"
#include "gips/pattern/pattern.hpp"

namespace gips {

enum class ContextKind { kClass, kPattern, kMapping };
enum class Sense { kMin, kMax };

std::string_view to_string(ContextKind kind);
std::string_view to_string(Sense sense);

struct Context {
  ContextKind kind = ContextKind::kClass;
  std::string target;
  SourceLoc loc;
};

struct MappingDecl {
  std::string name;
  std::string rule;
  SourceLoc loc;
};

struct ConstraintDecl {
  Context context;
  ExprPtr body;
  SourceLoc loc;

  std::string label() const;
};

struct ObjectiveDecl {
  std::string name;
  Context context;
  ExprPtr body;
  SourceLoc loc;
};

struct GlobalObjectiveDecl {
  Sense sense = Sense::kMin;
  ExprPtr expr;
  SourceLoc loc;
};

struct Spec {
  std::vector<Rule> rules;
  std::vector<Pattern> patterns;
  std::vector<MappingDecl> mappings;
  std::vector<ConstraintDecl> constraints;
  std::vector<ObjectiveDecl> objectives;
  std::optional<GlobalObjectiveDecl> global_objective;

  const Rule* find_rule(std::string_view name) const;
  const Pattern* find_pattern(std::string_view name) const;
  const MappingDecl* find_mapping(std::string_view name) const;
  const ObjectiveDecl* find_objective(std::string_view name) const;
};

// Structural equality ignoring source locations.
bool same_spec(const Spec& a, const Spec& b);

}  // namespace gips
