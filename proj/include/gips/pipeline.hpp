#pragma once

#include <memory>
#include <string_view>
#include <vector>

#include "gips/encode/generator.hpp"
#include "gips/gipsl/typecheck.hpp"
#include "gips/model/graph.hpp"
#include "gips/solve/solver.hpp"

namespace gips {

// Parses and typechecks a `.gipsl` document.
TypedSpec load_spec(std::string_view text, std::shared_ptr<const Metamodel> metamodel);

struct PipelineResult {
  GeneratedProblem generated;
  Solution solution;
  std::vector<int> selected;  // mapping variables at 1, ascending
  double generate_ms = 0;
  double solve_ms = 0;
};

// Matching, ILP generation and solving. The graph is not modified.
PipelineResult run_pipeline(const TypedSpec& spec, const Graph& graph,
                            const SolveLimits& limits = {});

// Applies the rules of the selected matches in variable order. Each match is
// revalidated against the graph produced so far; a stale one raises
// StaleMatchError.
Graph apply_solution(const TypedSpec& spec, Graph graph, const MappingTable& table,
                     const std::vector<int>& selected);

}  // namespace gips
