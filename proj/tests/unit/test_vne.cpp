#include "doctest.h"
#include "gips/error.hpp"
#include "gips/vne/vne.hpp"
#include "support.hpp"

using namespace gips;
using namespace gips::testing;

namespace {

size_t count_type(const Graph& g, const std::string& type) {
  size_t n = 0;
  for (const auto& [id, node] : g.nodes()) n += node.type == type;
  return n;
}

size_t count_edges(const Graph& g, const std::string& type) {
  size_t n = 0;
  for (const auto& [id, e] : g.edges()) n += e.type == type;
  return n;
}

// Substrate links attached to a server (server tier) or to a core switch.
size_t server_links(const Graph& g) {
  size_t n = 0;
  for (const auto& [id, e] : g.edges()) {
    if (e.type == "source" && g.node(e.src).type == "SubstrateLink" &&
        g.node(e.tgt).type == "SubstrateServer") {
      ++n;
    }
  }
  return n;
}

size_t core_links(const Graph& g) {
  size_t n = 0;
  for (const auto& [id, e] : g.edges()) {
    if (e.type == "target" && g.node(e.src).type == "SubstrateLink" &&
        g.node(e.tgt).id.rfind("core", 0) == 0) {
      ++n;
    }
  }
  return n;
}

ScenarioConfig tiny(int vnr_servers, std::int64_t cpu) {
  ScenarioConfig cfg;
  cfg.racks = 1;
  cfg.servers_per_rack = 1;
  cfg.core_switches = 1;
  cfg.vnr_count = 1;
  cfg.vnr_servers = {vnr_servers, vnr_servers};
  cfg.vnr_cpu = {cpu, cpu};
  cfg.vnr_bw = {100, 100};
  return cfg;
}

struct Run {
  Graph before;
  Graph after;
  EmbeddingReport report;
};

Run run(const ScenarioConfig& cfg) {
  Scenario sc = generate_scenario(cfg, mdvne_metamodel());
  Graph working = sc.substrate;
  EmbeddingReport report = embed_incremental(working, sc.vnrs, mdvne_spec());
  return {sc.substrate, working, report};
}

std::int64_t int_attr(const Graph& g, const std::string& id, const char* attr) {
  return std::get<std::int64_t>(g.attr(id, attr));
}

}  // namespace

TEST_CASE("evaluation-scale substrate") {
  ScenarioConfig cfg = parse_scenario_config(read_file(data_path("eval.cfg")));
  CHECK(cfg.racks == 8);
  CHECK(cfg.servers_per_rack == 10);
  CHECK(cfg.vnr_count == 40);
  Scenario sc = generate_scenario(cfg, mdvne_metamodel());
  const Graph& g = sc.substrate;
  CHECK(count_type(g, "SubstrateServer") == 80);
  CHECK(count_type(g, "SubstrateSwitch") == 10);
  CHECK(g.nodes_of_type("SubstrateSwitch").size() == 10);
  CHECK(server_links(g) == 80);
  CHECK(core_links(g) == 16);
  CHECK(count_type(g, "SubstrateLink") == 96);
  for (const std::string& s : g.nodes_of_type("SubstrateServer")) {
    CHECK(int_attr(g, s, "cpu") == 32);
    CHECK(int_attr(g, s, "mem") == 512);
    CHECK(int_attr(g, s, "storage") == 1024);
  }
  CHECK(sc.vnrs.size() == 40);
}

TEST_CASE("minimal topology") {
  ScenarioConfig cfg = tiny(1, 4);
  cfg.core_switches = 3;
  Scenario sc = generate_scenario(cfg, mdvne_metamodel());
  CHECK(count_type(sc.substrate, "SubstrateServer") == 1);
  CHECK(count_type(sc.substrate, "SubstrateSwitch") == 4);
  CHECK(core_links(sc.substrate) == 3);
  CHECK(server_links(sc.substrate) == 1);
}

TEST_CASE("desk scenario structure") {
  ScenarioConfig cfg = parse_scenario_config(read_file(data_path("desk.cfg")));
  Scenario sc = generate_scenario(cfg, mdvne_metamodel());
  const Graph& g = sc.substrate;
  const size_t servers = 8, racks = 2, cores = 2;
  CHECK(count_type(g, "SubstrateServer") == servers);
  CHECK(count_type(g, "SubstrateSwitch") == racks + cores);
  CHECK(count_type(g, "SubstrateLink") == servers + racks * cores);
  CHECK(count_type(g, "SubstratePath") == servers * cores);
  // Every link and path has one source and one target; paths two hops.
  CHECK(count_edges(g, "source") == servers + racks * cores + servers * cores);
  CHECK(count_edges(g, "target") == servers + racks * cores + servers * cores);
  CHECK(count_edges(g, "hop1") == servers * cores);
  CHECK(count_edges(g, "hop2") == servers * cores);
  CHECK(g.edges().size() == 2 * (servers + racks * cores) + 4 * servers * cores);
  for (const std::string& p : g.nodes_of_type("SubstratePath")) {
    std::string h1 = g.targets(p, "hop1")[0];
    std::string h2 = g.targets(p, "hop2")[0];
    // Consecutive hops share the rack switch.
    CHECK(g.targets(h1, "target") == g.targets(h2, "source"));
    CHECK(g.targets(p, "source") == g.targets(h1, "source"));
    CHECK(g.targets(p, "target") == g.targets(h2, "target"));
  }

  REQUIRE(sc.vnrs.size() == 10);
  for (const Vnr& v : sc.vnrs) {
    size_t n = count_type(v.graph, "VirtualServer");
    CHECK(n >= 2);
    CHECK(n <= 4);
    CHECK(count_type(v.graph, "VirtualSwitch") == 1);
    CHECK(count_type(v.graph, "VirtualLink") == n);
    CHECK(v.graph.edges().size() == 2 * n);
    for (const std::string& s : v.graph.nodes_of_type("VirtualServer")) {
      CHECK(int_attr(v.graph, s, "cpu") >= cfg.vnr_cpu.lo);
      CHECK(int_attr(v.graph, s, "cpu") <= cfg.vnr_cpu.hi);
    }
    for (const std::string& l : v.graph.nodes_of_type("VirtualLink")) {
      CHECK(int_attr(v.graph, l, "bw") >= cfg.vnr_bw.lo);
      CHECK(int_attr(v.graph, l, "bw") <= cfg.vnr_bw.hi);
    }
  }
}

TEST_CASE("seed determinism") {
  ScenarioConfig cfg;
  Scenario a = generate_scenario(cfg, mdvne_metamodel());
  Scenario b = generate_scenario(cfg, mdvne_metamodel());
  CHECK(serialize(a.substrate) == serialize(b.substrate));
  REQUIRE(a.vnrs.size() == b.vnrs.size());
  for (size_t i = 0; i < a.vnrs.size(); ++i) CHECK(serialize(a.vnrs[i].graph) == serialize(b.vnrs[i].graph));
  cfg.seed = 2;
  Scenario c = generate_scenario(cfg, mdvne_metamodel());
  bool differs = false;
  for (size_t i = 0; i < a.vnrs.size(); ++i) differs |= serialize(a.vnrs[i].graph) != serialize(c.vnrs[i].graph);
  CHECK(differs);
}

TEST_CASE("scenario configuration text") {
  ScenarioConfig cfg = parse_scenario_config("# comment\nracks = 3\nvnr_cpu = 2..5  # trailing\n");
  CHECK(cfg.racks == 3);
  CHECK(cfg.vnr_cpu == IntRange{2, 5});
  CHECK(cfg.servers_per_rack == ScenarioConfig{}.servers_per_rack);
  CHECK(parse_scenario_config(to_text(cfg)) == cfg);
  CHECK_THROWS_AS(parse_scenario_config("racks = 0\n"), ModelError);
  CHECK_THROWS_AS(parse_scenario_config("vnr_cpu = 5..2\n"), ModelError);
  CHECK_THROWS_AS(parse_scenario_config("vnr_cpu = 1..64\n"), ModelError);
  CHECK_THROWS_AS(parse_scenario_config("colour = blue\n"), Error);
  CHECK_THROWS_AS(parse_scenario_config("racks = many\n"), Error);
}

TEST_CASE("single virtual server consumes its cpu") {
  Run r = run(tiny(1, 4));
  REQUIRE(r.report.vnrs.size() == 1);
  CHECK(r.report.vnrs[0].embedded);
  CHECK(int_attr(r.before, "srv0_0", "resCpu") == 32);
  CHECK(int_attr(r.after, "srv0_0", "resCpu") == 28);
  CHECK(r.report.residuals.at("srv0_0").at("resCpu") == 28);
  // The server-side link carries the 100 Mbit/s virtual link either directly
  // or as the first hop of a path.
  CHECK(int_attr(r.after, "sl_srv0_0", "resBw") == 900);
  CHECK(verify_embedding(r.report, r.before, r.after).empty());
}

TEST_CASE("request exceeding the substrate is rejected") {
  Run r = run(tiny(2, 20));
  REQUIRE(r.report.vnrs.size() == 1);
  CHECK_FALSE(r.report.vnrs[0].embedded);
  CHECK(r.report.embedded_count() == 0);
  CHECK(serialize(r.after) == serialize(r.before));
  CHECK(verify_embedding(r.report, r.before, r.after).empty());
}

TEST_CASE("desk run embeds whole requests only") {
  // Shared across subcases, which re-enter the test case.
  static const Run r = [] {
    ScenarioConfig cfg = parse_scenario_config(read_file(data_path("desk.cfg")));
    cfg.vnr_count = 6;
    return run(cfg);
  }();
  CHECK(r.report.vnrs.size() == 6);
  CHECK(r.report.embedded_count() > 0);
  CHECK(verify_embedding(r.report, r.before, r.after).empty());
  for (const VnrRecord& rec : r.report.vnrs) {
    for (const std::string& id : rec.elements) {
      const Node* n = r.after.find_node(id);
      if (!rec.embedded) {
        CHECK(n == nullptr);
        continue;
      }
      REQUIRE(n != nullptr);
      CHECK(r.after.targets(id, "host").size() == 1);
    }
  }
  std::string json = report_json(r.report);
  CHECK(json.find("\"version\": 1") != std::string::npos);

  SUBCASE("corrupted residual") {
    Graph bad = r.after;
    bad.set_attr("srv0_0", "resCpu", int_attr(bad, "srv0_0", "resCpu") + 1);
    auto v = verify_embedding(r.report, r.before, bad);
    REQUIRE(v.size() == 1);
    CHECK(v[0].element == "srv0_0");
  }
  SUBCASE("missing host edge") {
    Graph bad = r.after;
    std::string edge, element;
    for (const auto& [id, e] : bad.edges()) {
      if (e.type == "host" && bad.node(e.src).type == "VirtualSwitch") {
        edge = id;
        element = e.src;
        break;
      }
    }
    REQUIRE(!edge.empty());
    bad.remove_edge(edge);
    auto v = verify_embedding(r.report, r.before, bad);
    REQUIRE(!v.empty());
    CHECK(v[0].element == element);
    CHECK(v[0].message.find("exactly once") != std::string::npos);
  }
  SUBCASE("link endpoint moved") {
    Graph bad = r.after;
    std::string server, host;
    for (const auto& [id, e] : bad.edges()) {
      if (e.type == "host" && bad.node(e.src).type == "VirtualServer") {
        server = e.src;
        host = e.tgt;
        bad.remove_edge(id);
        break;
      }
    }
    REQUIRE(!server.empty());
    std::string other;
    for (const std::string& s : bad.nodes_of_type("SubstrateServer")) {
      if (s != host) other = s;
    }
    bad.add_edge({server + "-host->" + other, "host", server, other});
    auto v = verify_embedding(r.report, r.before, bad);
    bool contiguity = false;
    for (const auto& x : v) contiguity |= x.message.find("is not hosted on") != std::string::npos;
    CHECK(contiguity);
  }
}

TEST_CASE("all-or-nothing under forced infeasibility") {
  // The second request needs more cpu than remains after the first.
  ScenarioConfig cfg = tiny(1, 20);
  cfg.vnr_count = 3;
  Run r = run(cfg);
  REQUIRE(r.report.vnrs.size() == 3);
  CHECK(r.report.vnrs[0].embedded);
  CHECK_FALSE(r.report.vnrs[1].embedded);
  CHECK_FALSE(r.report.vnrs[2].embedded);
  CHECK(int_attr(r.after, "srv0_0", "resCpu") == 12);
  for (size_t i = 1; i < 3; ++i) {
    for (const std::string& id : r.report.vnrs[i].elements) CHECK(r.after.find_node(id) == nullptr);
  }
  CHECK(verify_embedding(r.report, r.before, r.after).empty());
}
