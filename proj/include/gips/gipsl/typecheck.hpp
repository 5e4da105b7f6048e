#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gips/gipsl/ast.hpp"
#include "gips/model/metamodel.hpp"

namespace gips {

// A specification whose names, types and linearity have been checked
// against a metamodel.
struct TypedSpec {
  Spec spec;
  std::shared_ptr<const Metamodel> metamodel;
  std::vector<Diagnostic> warnings;
  // Global objective as a weighted sum of objective names plus a constant.
  std::vector<std::pair<std::string, double>> objective_weights;
  double objective_offset = 0;

  // Pattern whose matches instantiate a pattern or mapping context.
  const Pattern& context_pattern(const Context& context) const;
  // Rule referenced by a mapping.
  const Rule& mapping_rule(std::string_view mapping) const;
};

// Throws SpecError listing every problem found, each with a location.
TypedSpec typecheck(Spec spec, std::shared_ptr<const Metamodel> metamodel);

}  // namespace gips
