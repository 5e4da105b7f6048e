#include "gips/pipeline.hpp"

#include <chrono>
#include <cmath>

#include "gips/gipsl/parser.hpp"
#include "gips/pattern/matcher.hpp"

namespace gips {

namespace {

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

TypedSpec load_spec(std::string_view text, std::shared_ptr<const Metamodel> metamodel) {
  return typecheck(parse_spec(text), std::move(metamodel));
}

PipelineResult run_pipeline(const TypedSpec& spec, const Graph& graph,
                            const SolveLimits& limits) {
  PipelineResult r;
  auto t0 = std::chrono::steady_clock::now();
  r.generated = generate(spec, graph);
  r.generate_ms = ms_since(t0);
  auto t1 = std::chrono::steady_clock::now();
  r.solution = solve(r.generated.problem, limits);
  r.solve_ms = ms_since(t1);
  if (r.solution.has_incumbent) {
    for (const auto& [var, entry] : r.generated.table.entries()) {
      if (std::lround(r.solution.values[var]) == 1) r.selected.push_back(var);
    }
  }
  return r;
}

Graph apply_solution(const TypedSpec& spec, Graph graph, const MappingTable& table,
                     const std::vector<int>& selected) {
  for (int var : selected) {
    const MappingEntry* entry = table.entry(var);
    if (!entry) throw Error("variable " + std::to_string(var) + " is not a mapping variable");
    const Rule& rule = spec.mapping_rule(entry->mapping);
    GraphDelta delta = apply_rule(graph, rule, entry->match);
    graph = apply_delta(std::move(graph), delta);
  }
  return graph;
}

}  // namespace gips
