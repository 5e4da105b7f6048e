#include <random>

#include "doctest.h"
#include "gips/error.hpp"
#include "gips/pattern/matcher.hpp"
#include "support.hpp"

using namespace gips;
using namespace gips::testing;

namespace {

Node substrate_server(const std::string& id, std::int64_t res_cpu) {
  return Node{id, "SubstrateServer",
              {{"cpu", std::int64_t{32}}, {"resCpu", res_cpu},
               {"mem", std::int64_t{512}}, {"resMem", std::int64_t{512}},
               {"storage", std::int64_t{1024}}, {"resStorage", std::int64_t{1024}}}};
}

Node virtual_server(const std::string& id, std::int64_t cpu) {
  return Node{id, "VirtualServer",
              {{"embedded", false}, {"cpu", cpu},
               {"mem", std::int64_t{16}}, {"storage", std::int64_t{100}}}};
}

const Rule& rule(const TypedSpec& spec, const char* name) {
  const Rule* r = spec.spec.find_rule(name);
  REQUIRE(r != nullptr);
  return *r;
}

}  // namespace

TEST_CASE("link2link finds both candidate links for v11") {
  TypedSpec spec = twolink_spec();
  Graph g = twolink_graph();
  auto matches = find_matches(g, rule(spec, "link2link").lhs);
  REQUIRE(matches.size() == 2);
  CHECK(matches[0].nodes == std::vector<std::string>{"v11", "s11"});
  CHECK(matches[1].nodes == std::vector<std::string>{"v11", "s12"});
}

TEST_CASE("empty graph has no matches") {
  TypedSpec spec = mdvne_spec();
  Graph g(mdvne_metamodel());
  for (const auto& r : spec.spec.rules) CHECK(find_matches(g, r.lhs).empty());
}

TEST_CASE("server2server on three substrate and two virtual servers") {
  TypedSpec spec = mdvne_spec();
  Graph g(mdvne_metamodel());
  std::vector<std::int64_t> res_cpu = {32, 32, 6};
  std::vector<std::int64_t> cpu = {4, 8};
  for (int s = 0; s < 3; ++s) g.add_node(substrate_server("s" + std::to_string(s), res_cpu[s]));
  for (int v = 0; v < 2; ++v) g.add_node(virtual_server("v" + std::to_string(v), cpu[v]));

  std::vector<std::vector<std::string>> expected;
  for (int v = 0; v < 2; ++v) {
    for (int s = 0; s < 3; ++s) {
      if (res_cpu[s] >= cpu[v]) expected.push_back({"v" + std::to_string(v), "s" + std::to_string(s)});
    }
  }
  REQUIRE(expected.size() == 5);
  CHECK(matcher_result(g, rule(spec, "server2server").lhs) == expected);
}

TEST_CASE("apply_rule evaluates the right-hand side") {
  TypedSpec spec = mdvne_spec();
  Graph g(mdvne_metamodel());
  g.add_node(substrate_server("ssrv", 32));
  g.add_node(virtual_server("vsrv", 4));
  const Rule& r = rule(spec, "server2server");
  auto matches = find_matches(g, r.lhs);
  REQUIRE(matches.size() == 1);
  GraphDelta d = apply_rule(g, r, matches[0]);
  REQUIRE(d.created_edges.size() == 1);
  CHECK(d.created_edges[0].type == "host");
  CHECK(d.created_edges[0].src == "vsrv");
  CHECK(d.created_edges[0].tgt == "ssrv");
  Graph after = apply_delta(g, d);
  CHECK(std::get<std::int64_t>(after.attr("ssrv", "resCpu")) == 28);
  CHECK(std::get<bool>(after.attr("vsrv", "embedded")));
}

TEST_CASE("link2link reduces the residual bandwidth") {
  TypedSpec spec = twolink_spec();
  Graph g = twolink_graph();
  const Rule& r = rule(spec, "link2link");
  Match m{"link2link", {"v11", "s11"}};
  Graph after = apply_delta(g, apply_rule(g, r, m));
  CHECK(after.has_edge("host", "v11", "s11"));
  CHECK(std::get<std::int64_t>(after.attr("s11", "resBw")) == 900);
}

TEST_CASE("rule without actions yields an empty delta") {
  Rule r;
  r.name = "noop";
  r.lhs.name = "noop";
  r.lhs.nodes.push_back({"v", "VirtualLink", {}});
  Graph g = twolink_graph();
  auto matches = find_matches(g, r.lhs);
  REQUIRE(matches.size() == 1);
  CHECK(apply_rule(g, r, matches[0]).empty());
}

TEST_CASE("create and delete actions") {
  Spec spec = parse_spec(R"(
rule rewire {
  node a : A;
  node b : A;
  edge a -e-> b;
  delete edge a -e-> b;
  create node c : B { w := a.w + b.w };
  create edge c -e-> a;
  delete node b;
}
global objective : min { 0 }
)");
  const Rule& r = spec.rules[0];
  Graph g(abc_metamodel());
  g.add_node({"n0", "A", {{"w", std::int64_t{2}}}});
  g.add_node({"n1", "A", {{"w", std::int64_t{3}}}});
  g.add_node({"n2", "C", {{"w", std::int64_t{0}}}});
  g.add_edge({"x0", "e", "n0", "n1"});
  g.add_edge({"x1", "g", "n2", "n1"});
  auto matches = find_matches(g, r.lhs);
  REQUIRE(matches.size() == 1);
  Graph after = apply_delta(g, apply_rule(g, r, matches[0]));
  after.validate();
  CHECK(after.find_node("n1") == nullptr);
  CHECK(after.find_edge("x0") == nullptr);
  CHECK(after.find_edge("x1") == nullptr);
  CHECK(after.nodes().size() == 3);
  std::string created;
  for (const auto& [id, n] : after.nodes()) {
    if (n.type == "B") created = id;
  }
  REQUIRE(!created.empty());
  CHECK(std::get<std::int64_t>(after.attr(created, "w")) == 5);
  CHECK(after.has_edge("e", created, "n0"));
}

TEST_CASE("revalidate") {
  TypedSpec spec = mdvne_spec();
  const Rule& r = rule(spec, "server2server");
  Graph g(mdvne_metamodel());
  g.add_node(substrate_server("s0", 10));
  g.add_node(virtual_server("v0", 6));
  g.add_node(virtual_server("v1", 6));
  g.add_node(virtual_server("v2", 1));
  auto matches = find_matches(g, r.lhs);
  REQUIRE(matches.size() == 3);

  SUBCASE("unrelated delta keeps the match") {
    GraphDelta d;
    d.attr_updates.push_back({"v2", "mem", std::int64_t{1}});
    CHECK(revalidate(apply_delta(g, d), r.lhs, matches[0]));
  }
  SUBCASE("deleting a bound node invalidates it") {
    GraphDelta d;
    d.deleted_nodes.push_back("v0");
    Graph after = apply_delta(g, d);
    CHECK_FALSE(revalidate(after, r.lhs, matches[0]));
    CHECK_THROWS_AS(apply_rule(after, r, matches[0]), StaleMatchError);
  }
  SUBCASE("another application consumes the capacity") {
    Graph after = apply_delta(g, apply_rule(g, r, matches[0]));
    CHECK(std::get<std::int64_t>(after.attr("s0", "resCpu")) == 4);
    CHECK_FALSE(revalidate(after, r.lhs, matches[1]));
    CHECK(revalidate(after, r.lhs, matches[2]));
  }
}

TEST_CASE("property: matcher equals brute-force enumeration") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 300; ++round) {
    Graph g = random_abc_graph(rng);
    PatternCase pc = random_abc_pattern(rng);
    auto found = matcher_result(g, pc.pattern);
    CHECK(found == oracle_matches(g, pc));
  }
}

TEST_CASE("property: soundness and determinism") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 200; ++round) {
    Graph g = random_abc_graph(rng);
    PatternCase pc = random_abc_pattern(rng);
    auto first = find_matches(g, pc.pattern);
    Graph copy = load_graph(serialize(g), abc_metamodel());
    CHECK(find_matches(copy, pc.pattern) == first);
    CHECK(std::is_sorted(first.begin(), first.end()));
    for (const auto& m : first) CHECK(revalidate(g, pc.pattern, m));
  }
}

TEST_CASE("property: tightening the condition never adds matches") {
  std::mt19937_64 rng(9);
  for (int round = 0; round < 200; ++round) {
    Graph g = random_abc_graph(rng);
    PatternCase pc = random_abc_pattern(rng);
    auto loose = find_matches(g, pc.pattern);
    Pattern tight = pc.pattern;
    std::string extra = "p0.w != " + std::to_string(uniform(rng, 0, 3));
    tight.condition = tight.condition
                          ? parse_expression("(" + print_expr(tight.condition) + ") & " + extra)
                          : parse_expression(extra);
    auto strict = find_matches(g, tight);
    CHECK(strict.size() <= loose.size());
    for (const auto& m : strict) {
      CHECK(std::find(loose.begin(), loose.end(), m) != loose.end());
    }
  }
}
