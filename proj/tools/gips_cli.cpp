// Pipeline driver: check, generate, solve, apply, export-lp and vne.

#include <cmath>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "gips/error.hpp"
#include "gips/model/model_io.hpp"
#include "gips/pipeline.hpp"
#include "gips/solve/solver.hpp"
#include "gips/vne/vne.hpp"
#include "json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitTimeout = 3;

#ifndef GIPS_DATA_DIR
#define GIPS_DATA_DIR "data"
#endif

struct Options {
  std::string model;
  std::string spec;
  std::string out;
  std::string export_lp;
  std::string report;
  std::string config;
  double time_limit = 60;
  std::optional<std::uint64_t> seed;
};

struct Loaded {
  std::shared_ptr<const gips::Metamodel> metamodel;
  std::unique_ptr<gips::Graph> graph;
  std::unique_ptr<gips::TypedSpec> spec;
};

Loaded load(const Options& o) {
  Loaded l;
  const std::string text = gips::read_file(o.model);
  l.metamodel = std::make_shared<const gips::Metamodel>(gips::load_metamodel(text));
  l.graph = std::make_unique<gips::Graph>(gips::load_graph(text, l.metamodel));
  l.spec = std::make_unique<gips::TypedSpec>(gips::load_spec(gips::read_file(o.spec), l.metamodel));
  for (const gips::Diagnostic& d : l.spec->warnings) std::cerr << o.spec << ":" << d.str() << "\n";
  return l;
}

gips::SolveLimits limits(const Options& o) {
  gips::SolveLimits lim;
  lim.time_limit_s = o.time_limit;
  return lim;
}

nlohmann::ordered_json solve_report(const gips::TypedSpec& spec, const gips::PipelineResult& r) {
  nlohmann::ordered_json j;
  j["version"] = 1;
  j["status"] = std::string(gips::to_string(r.solution.status));
  j["objective"] = r.solution.has_incumbent ? nlohmann::ordered_json(r.solution.objective)
                                            : nlohmann::ordered_json(nullptr);
  j["variables"] = r.generated.problem.variables.size();
  j["rows"] = r.generated.problem.rows.size();
  j["bb_nodes"] = r.solution.stats.nodes;
  j["generate_ms"] = r.generate_ms;
  j["solve_ms"] = r.solve_ms;
  j["selected"] = nlohmann::ordered_json::array();
  for (int var : r.selected) {
    const gips::MappingEntry& e = *r.generated.table.entry(var);
    const gips::Pattern& p = spec.mapping_rule(e.mapping).lhs;
    nlohmann::ordered_json m;
    m["variable"] = r.generated.problem.variables[var].id;
    m["mapping"] = e.mapping;
    nlohmann::ordered_json binding = nlohmann::ordered_json::object();
    for (size_t i = 0; i < p.nodes.size(); ++i) binding[p.nodes[i].name] = e.match.nodes[i];
    m["match"] = binding;
    j["selected"].push_back(m);
  }
  return j;
}

int status_code(gips::SolveStatus s) {
  switch (s) {
    case gips::SolveStatus::kOptimal:
      return kExitOk;
    case gips::SolveStatus::kInfeasible:
      return kExitInfeasible;
    case gips::SolveStatus::kTimeout:
      return kExitTimeout;
  }
  return kExitError;
}

int cmd_check(const Options& o) {
  Loaded l = load(o);
  l.graph->validate();
  std::cout << "ok: " << l.spec->spec.rules.size() << " rules, " << l.spec->spec.mappings.size()
            << " mappings, " << l.spec->spec.constraints.size() << " constraints, "
            << l.spec->spec.objectives.size() << " objectives\n";
  return kExitOk;
}

int cmd_generate(const Options& o) {
  Loaded l = load(o);
  gips::GeneratedProblem g = gips::generate(*l.spec, *l.graph);
  const std::string dump = gips::debug_dump(g.problem);
  if (o.out.empty()) {
    std::cout << dump;
  } else {
    gips::write_file(o.out, dump);
  }
  return kExitOk;
}

int cmd_export(const Options& o, const std::string& path) {
  Loaded l = load(o);
  gips::GeneratedProblem g = gips::generate(*l.spec, *l.graph);
  const std::string lp = gips::export_lp(g.problem, g.table);
  if (path.empty() || path == "-") {
    std::cout << lp;
  } else {
    gips::write_file(path, lp);
  }
  return kExitOk;
}

int cmd_solve(const Options& o, bool apply) {
  if (!o.export_lp.empty()) return cmd_export(o, o.export_lp);
  Loaded l = load(o);
  gips::PipelineResult r = gips::run_pipeline(*l.spec, *l.graph, limits(o));
  auto report = solve_report(*l.spec, r);
  std::cout << "status " << report["status"].get<std::string>() << ", "
            << r.generated.problem.variables.size() << " variables, "
            << r.generated.problem.rows.size() << " rows, " << r.selected.size()
            << " selected matches";
  if (r.solution.has_incumbent) std::cout << ", objective " << r.solution.objective;
  std::cout << "\n";
  if (!o.report.empty()) gips::write_file(o.report, report.dump(2) + "\n");
  const int code = status_code(r.solution.status);
  if (code != kExitOk || !apply) return code;
  gips::Graph result = gips::apply_solution(*l.spec, *l.graph, r.generated.table, r.selected);
  gips::write_file(o.out.empty() ? o.model : o.out, gips::serialize(result));
  return kExitOk;
}

int cmd_vne(const Options& o) {
  gips::ScenarioConfig cfg = gips::parse_scenario_config(gips::read_file(o.config));
  if (o.seed) cfg.seed = *o.seed;
  const std::string model = o.model.empty() ? GIPS_DATA_DIR "/mdvne_schema.json" : o.model;
  const std::string spec_path = o.spec.empty() ? GIPS_DATA_DIR "/mdvne.gipsl" : o.spec;
  auto mm = std::make_shared<const gips::Metamodel>(gips::load_metamodel(gips::read_file(model)));
  gips::TypedSpec spec = gips::load_spec(gips::read_file(spec_path), mm);
  gips::Scenario sc = gips::generate_scenario(cfg, mm);
  gips::Graph working = sc.substrate;
  gips::EmbeddingReport report = gips::embed_incremental(working, sc.vnrs, spec, limits(o));
  auto violations = gips::verify_embedding(report, sc.substrate, working);
  for (const gips::VnrRecord& r : report.vnrs) {
    std::cout << r.id << ": " << (r.embedded ? "embedded" : "rejected") << " (" << r.status
              << "), " << r.variables << " vars, " << r.rows << " rows, " << r.solve_ms
              << " ms\n";
  }
  std::cout << report.embedded_count() << "/" << report.vnrs.size() << " embedded, "
            << violations.size() << " violations\n";
  for (const gips::Violation& v : violations) std::cerr << v.element << ": " << v.message << "\n";
  if (!o.report.empty()) gips::write_file(o.report, gips::report_json(report));
  if (!o.out.empty()) gips::write_file(o.out, gips::serialize(working));
  return violations.empty() ? kExitOk : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph-transformation ILP pipeline"};
  app.require_subcommand(1);
  Options o;

  auto model_spec = [&](CLI::App* sub) {
    sub->add_option("--model", o.model, "Model file (metamodel and instance)")->required()->check(CLI::ExistingFile);
    sub->add_option("--spec", o.spec, "Specification (.gipsl)")->required()->check(CLI::ExistingFile);
  };
  auto* check = app.add_subcommand("check", "Parse and typecheck a specification");
  model_spec(check);
  auto* gen = app.add_subcommand("generate", "Write the generated ILP in row form");
  model_spec(gen);
  gen->add_option("--out", o.out, "Output file (default: standard output)");
  auto* solve = app.add_subcommand("solve", "Generate and solve; the model is left untouched");
  auto* apply = app.add_subcommand("apply", "Generate, solve and apply the selected matches");
  for (auto* sub : {solve, apply}) {
    model_spec(sub);
    sub->add_option("--report", o.report, "JSON report path");
    sub->add_option("--export-lp", o.export_lp, "Only write the LP file and stop");
    sub->add_option("--time-limit", o.time_limit, "Solver time limit in seconds")->check(CLI::PositiveNumber);
  }
  apply->add_option("--out", o.out, "Modified model path (default: overwrite --model)");
  auto* exp = app.add_subcommand("export-lp", "Write the generated ILP as a CPLEX LP file");
  model_spec(exp);
  exp->add_option("--out", o.out, "LP file path (default: standard output)");
  auto* vne = app.add_subcommand("vne", "Run the virtual network embedding scenario");
  vne->add_option("--config", o.config, "Scenario configuration")->required()->check(CLI::ExistingFile);
  vne->add_option("--model", o.model, "Schema file")->check(CLI::ExistingFile);
  vne->add_option("--spec", o.spec, "Specification (.gipsl)")->check(CLI::ExistingFile);
  vne->add_option("--seed", o.seed, "Overrides the configured seed");
  vne->add_option("--report", o.report, "JSON report path");
  vne->add_option("--out", o.out, "Final substrate model path");
  vne->add_option("--time-limit", o.time_limit, "Solver time limit per request in seconds")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  try {
    if (*check) return cmd_check(o);
    if (*gen) return cmd_generate(o);
    if (*solve) return cmd_solve(o, false);
    if (*apply) return cmd_solve(o, true);
    if (*exp) return cmd_export(o, o.out);
    if (*vne) return cmd_vne(o);
  } catch (const gips::SpecError& e) {
    for (const gips::Diagnostic& d : e.diagnostics()) std::cerr << o.spec << ":" << d.str() << "\n";
    return kExitError;
  } catch (const gips::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
