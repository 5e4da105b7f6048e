#include <chrono>
#include <cmath>

#include "gips/error.hpp"
#include "gips/pipeline.hpp"
#include "gips/vne/vne.hpp"

namespace gips {

namespace {

const char* const kResiduals[] = {"resCpu", "resMem", "resStorage", "resBw"};

int host_count(const Graph& g, const std::string& id) {
  int n = 0;
  for (const std::string& e : g.out_edges(id)) n += g.find_edge(e)->type == "host";
  return n;
}

}  // namespace

int EmbeddingReport::embedded_count() const {
  int n = 0;
  for (const VnrRecord& r : vnrs) n += r.embedded;
  return n;
}

EmbeddingReport embed_incremental(Graph& working, const std::vector<Vnr>& vnrs,
                                  const TypedSpec& spec, const SolveLimits& limits) {
  const auto start = std::chrono::steady_clock::now();
  EmbeddingReport report;
  for (const Vnr& vnr : vnrs) {
    VnrRecord rec;
    rec.id = vnr.id;
    for (const auto& [id, node] : vnr.graph.nodes()) rec.elements.push_back(id);

    Graph merged = working;
    merged.merge(vnr.graph);
    PipelineResult run = run_pipeline(spec, merged, limits);
    rec.variables = static_cast<int>(run.generated.problem.variables.size());
    rec.rows = static_cast<int>(run.generated.problem.rows.size());
    rec.bb_nodes = run.solution.stats.nodes;
    rec.generate_ms = run.generate_ms;
    rec.solve_ms = run.solve_ms;
    rec.status = std::string(to_string(run.solution.status));

    if (run.solution.status == SolveStatus::kOptimal) {
      rec.objective = run.solution.objective;
      try {
        Graph applied = apply_solution(spec, merged, run.generated.table, run.selected);
        bool complete = true;
        for (const std::string& id : rec.elements) {
          const Node& n = applied.node(id);
          if (applied.metamodel().is_subtype(n.type, "VirtualElement") &&
              host_count(applied, id) != 1) {
            complete = false;
          }
        }
        if (complete) {
          rec.embedded = true;
          working = std::move(applied);
        } else {
          rec.status = "incomplete";
        }
      } catch (const StaleMatchError& e) {
        rec.status = std::string("stale match: ") + e.what();
      }
    }
    if (rec.embedded) report.total_objective += rec.objective;
    report.vnrs.push_back(std::move(rec));
  }
  for (const auto& [id, node] : working.nodes()) {
    for (const char* attr : kResiduals) {
      auto it = node.attrs.find(attr);
      if (it != node.attrs.end()) {
        if (const auto* v = std::get_if<std::int64_t>(&it->second)) report.residuals[id][attr] = *v;
      }
    }
  }
  report.total_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
  return report;
}

}  // namespace gips
