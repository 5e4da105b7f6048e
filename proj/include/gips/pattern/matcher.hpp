#pragma once

#include <vector>

#include "gips/model/graph.hpp"
#include "gips/pattern/pattern.hpp"

namespace gips {

// All injective, type-conforming bindings of `pattern` that realize its edges
// and satisfy its condition, sorted by bound ids in pattern-node order.
std::vector<Match> find_matches(const Graph& graph, const Pattern& pattern);

// True iff `match` still satisfies structure and condition on `graph`.
bool revalidate(const Graph& graph, const Pattern& pattern, const Match& match);

// Delta realizing the rule's actions on `match`, with attribute expressions
// evaluated against the current graph. Throws StaleMatchError if the match
// no longer holds.
GraphDelta apply_rule(const Graph& graph, const Rule& rule, const Match& match);

}  // namespace gips
