#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "gips/gipsl/typecheck.hpp"
#include "gips/model/graph.hpp"
#include "gips/solve/solver.hpp"

namespace gips {

struct IntRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  bool operator==(const IntRange&) const = default;
};

// Two-tier substrate (core switches, rack switches, servers) and star-shaped
// virtual network requests.
struct ScenarioConfig {
  int racks = 2;
  int servers_per_rack = 4;
  int core_switches = 2;
  std::int64_t server_cpu = 32;
  std::int64_t server_mem = 512;
  std::int64_t server_storage = 1024;
  std::int64_t core_link_bw = 10000;
  std::int64_t server_link_bw = 1000;
  int vnr_count = 10;
  IntRange vnr_servers{2, 4};
  IntRange vnr_cpu{1, 16};
  IntRange vnr_mem{1, 128};
  IntRange vnr_storage{50, 300};
  IntRange vnr_bw{100, 500};
  std::uint64_t seed = 1;

  // Throws ModelError naming the offending field.
  void validate() const;
  bool operator==(const ScenarioConfig&) const = default;
};

// `key = value` lines, `#` comments, ranges written `lo..hi`.
ScenarioConfig parse_scenario_config(std::string_view text);
std::string to_text(const ScenarioConfig& config);

struct Vnr {
  std::string id;
  Graph graph;
};

struct Scenario {
  Graph substrate;
  std::vector<Vnr> vnrs;
};

// Deterministic for equal configurations (including the seed).
Scenario generate_scenario(const ScenarioConfig& config,
                           std::shared_ptr<const Metamodel> metamodel);

struct VnrRecord {
  std::string id;
  bool embedded = false;
  std::string status;  // solver status, or the reason for rejection
  double objective = 0;
  int variables = 0;
  int rows = 0;
  long bb_nodes = 0;
  double generate_ms = 0;
  double solve_ms = 0;
  std::vector<std::string> elements;  // virtual element ids of the request
};

struct EmbeddingReport {
  std::vector<VnrRecord> vnrs;
  // Substrate element -> residual attribute -> value after the run.
  std::map<std::string, std::map<std::string, std::int64_t>> residuals;
  double total_objective = 0;
  double total_ms = 0;

  int embedded_count() const;
};

// Embeds the requests one after another into `working`. A request is kept
// only if every one of its virtual elements gets hosted; otherwise the
// working model is restored to its state before the request.
EmbeddingReport embed_incremental(Graph& working, const std::vector<Vnr>& vnrs,
                                  const TypedSpec& spec, const SolveLimits& limits = {});

struct Violation {
  std::string element;
  std::string message;
};

// Independent recomputation of hosting, residual resources and link
// endpoint contiguity.
std::vector<Violation> verify_embedding(const EmbeddingReport& report,
                                        const Graph& substrate_before,
                                        const Graph& substrate_after);

// Machine-readable report: one record per request plus residuals.
std::string report_json(const EmbeddingReport& report);

}  // namespace gips
