#pragma once

#include <map>
#include <string>
#include <vector>

#include "gips/encode/boolean.hpp"
#include "gips/encode/ilp.hpp"
#include "gips/gipsl/eval.hpp"
#include "gips/gipsl/typecheck.hpp"
#include "gips/model/graph.hpp"

namespace gips {

// Matches of every mapping (with their variables) and of every pattern used
// as a context. MatchRef values point into this structure.
struct Instantiation {
  std::map<std::string, MatchSet> mappings;
  std::map<std::string, MatchSet> patterns;
};

// One binary variable `m_<mapping>_<k>` per match, k following match order.
Instantiation instantiate_mappings(const TypedSpec& spec,
                                   const std::map<std::string, std::vector<Match>>& matches,
                                   IlpProblem& problem, MappingTable& table);

// `self` values of a context: model elements (subtypes included) or matches.
std::vector<Value> expand_contexts(const TypedSpec& spec, const Context& context,
                                   const Graph& graph, Instantiation& inst);

// Linear arithmetic expression with each set expression replaced by the sum
// of its per-match coefficients times the match variables.
LinearTerm lower_sets(const ExprPtr& expr, const Graph& graph, Scope& scope,
                      const Instantiation& inst, const IlpProblem& problem);

// Boolean body as a formula over relational atoms appended to `atoms`.
// Variable-free subexpressions are folded to constants.
Formula lower_bool(const ExprPtr& expr, const Graph& graph, Scope& scope,
                   const Instantiation& inst, const IlpProblem& problem,
                   std::vector<Atom>& atoms);

void build_objective(const TypedSpec& spec, const Graph& graph, Instantiation& inst,
                     IlpProblem& problem);

struct GeneratedProblem {
  IlpProblem problem;
  MappingTable table;
  std::vector<Diagnostic> warnings;
};

// Matching, variable instantiation, constraint expansion and linearization
// and objective assembly. Errors carry the offending constraint or objective
// and the context element.
GeneratedProblem generate(const TypedSpec& spec, const Graph& graph);

}  // namespace gips
