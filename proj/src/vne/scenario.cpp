#include <charconv>
#include <functional>
#include <random>

#include "gips/error.hpp"
#include "gips/vne/vne.hpp"

namespace gips {

namespace {

std::string trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string range_text(const IntRange& r) {
  return std::to_string(r.lo) + ".." + std::to_string(r.hi);
}

void add_edge(Graph& g, const std::string& type, const std::string& src, const std::string& tgt) {
  g.add_edge({src + "-" + type + "->" + tgt, type, src, tgt});
}

}  // namespace

void ScenarioConfig::validate() const {
  auto positive = [](std::int64_t v, const char* name) {
    if (v < 1) throw ModelError(std::string(name) + " must be at least 1");
  };
  auto range = [](const IntRange& r, const char* name, std::int64_t min, std::int64_t cap) {
    if (r.lo > r.hi) throw ModelError(std::string(name) + " is an empty range");
    if (r.lo < min) throw ModelError(std::string(name) + " must not go below " + std::to_string(min));
    if (r.hi > cap) {
      throw ModelError(std::string(name) + " exceeds the substrate capacity " + std::to_string(cap));
    }
  };
  positive(racks, "racks");
  positive(servers_per_rack, "servers_per_rack");
  positive(core_switches, "core_switches");
  positive(server_cpu, "server_cpu");
  positive(server_mem, "server_mem");
  positive(server_storage, "server_storage");
  positive(core_link_bw, "core_link_bw");
  positive(server_link_bw, "server_link_bw");
  if (vnr_count < 0) throw ModelError("vnr_count must not be negative");
  range(vnr_servers, "vnr_servers", 1, 1'000'000);
  range(vnr_cpu, "vnr_cpu", 0, server_cpu);
  range(vnr_mem, "vnr_mem", 0, server_mem);
  range(vnr_storage, "vnr_storage", 0, server_storage);
  range(vnr_bw, "vnr_bw", 0, server_link_bw);
}

ScenarioConfig parse_scenario_config(std::string_view text) {
  ScenarioConfig cfg;
  std::map<std::string, std::function<void(const std::string&, SourceLoc)>> setters;
  auto integer = [](const std::string& v, SourceLoc loc) {
    std::int64_t out = 0;
    auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
      throw ParseError(loc, "expected an integer, got '" + v + "'");
    }
    return out;
  };
  auto int_field = [&](auto& field) {
    return [&, ptr = &field](const std::string& v, SourceLoc loc) {
      *ptr = static_cast<std::remove_reference_t<decltype(field)>>(integer(v, loc));
    };
  };
  auto range_field = [&](IntRange& field) {
    return [&, ptr = &field](const std::string& v, SourceLoc loc) {
      size_t dots = v.find("..");
      if (dots == std::string::npos) {
        ptr->lo = ptr->hi = integer(v, loc);
      } else {
        ptr->lo = integer(trim(v.substr(0, dots)), loc);
        ptr->hi = integer(trim(v.substr(dots + 2)), loc);
      }
    };
  };
  setters["racks"] = int_field(cfg.racks);
  setters["servers_per_rack"] = int_field(cfg.servers_per_rack);
  setters["core_switches"] = int_field(cfg.core_switches);
  setters["server_cpu"] = int_field(cfg.server_cpu);
  setters["server_mem"] = int_field(cfg.server_mem);
  setters["server_storage"] = int_field(cfg.server_storage);
  setters["core_link_bw"] = int_field(cfg.core_link_bw);
  setters["server_link_bw"] = int_field(cfg.server_link_bw);
  setters["vnr_count"] = int_field(cfg.vnr_count);
  setters["vnr_servers"] = range_field(cfg.vnr_servers);
  setters["vnr_cpu"] = range_field(cfg.vnr_cpu);
  setters["vnr_mem"] = range_field(cfg.vnr_mem);
  setters["vnr_storage"] = range_field(cfg.vnr_storage);
  setters["vnr_bw"] = range_field(cfg.vnr_bw);
  setters["seed"] = [&](const std::string& v, SourceLoc loc) {
    std::uint64_t out = 0;
    auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
      throw ParseError(loc, "expected an unsigned integer, got '" + v + "'");
    }
    cfg.seed = out;
  };

  int lineno = 0;
  size_t start = 0;
  while (start < text.size()) {
    size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string line(text.substr(start, nl - start));
    start = nl + 1;
    ++lineno;
    if (size_t hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    size_t eq = line.find('=');
    SourceLoc loc{lineno, 1};
    if (eq == std::string::npos) throw ParseError(loc, "expected 'key = value'", {"="});
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    auto it = setters.find(key);
    if (it == setters.end()) throw ParseError(loc, "unknown key '" + key + "'");
    it->second(value, SourceLoc{lineno, static_cast<int>(eq) + 2});
  }
  cfg.validate();
  return cfg;
}

std::string to_text(const ScenarioConfig& c) {
  std::string out;
  auto line = [&](const char* key, const std::string& value) {
    out += std::string(key) + " = " + value + "\n";
  };
  line("racks", std::to_string(c.racks));
  line("servers_per_rack", std::to_string(c.servers_per_rack));
  line("core_switches", std::to_string(c.core_switches));
  line("server_cpu", std::to_string(c.server_cpu));
  line("server_mem", std::to_string(c.server_mem));
  line("server_storage", std::to_string(c.server_storage));
  line("core_link_bw", std::to_string(c.core_link_bw));
  line("server_link_bw", std::to_string(c.server_link_bw));
  line("vnr_count", std::to_string(c.vnr_count));
  line("vnr_servers", range_text(c.vnr_servers));
  line("vnr_cpu", range_text(c.vnr_cpu));
  line("vnr_mem", range_text(c.vnr_mem));
  line("vnr_storage", range_text(c.vnr_storage));
  line("vnr_bw", range_text(c.vnr_bw));
  line("seed", std::to_string(c.seed));
  return out;
}

Scenario generate_scenario(const ScenarioConfig& cfg, std::shared_ptr<const Metamodel> mm) {
  cfg.validate();
  Scenario sc{Graph(mm), {}};
  Graph& g = sc.substrate;
  for (int c = 0; c < cfg.core_switches; ++c) {
    g.add_node({"core" + std::to_string(c), "SubstrateSwitch", {}});
  }
  for (int r = 0; r < cfg.racks; ++r) {
    const std::string rack = "rack" + std::to_string(r);
    g.add_node({rack, "SubstrateSwitch", {}});
    for (int c = 0; c < cfg.core_switches; ++c) {
      const std::string core = "core" + std::to_string(c);
      const std::string link = "cl_" + rack + "_" + core;
      g.add_node({link, "SubstrateLink", {{"bw", cfg.core_link_bw}, {"resBw", cfg.core_link_bw}}});
      add_edge(g, "source", link, rack);
      add_edge(g, "target", link, core);
    }
    for (int s = 0; s < cfg.servers_per_rack; ++s) {
      const std::string srv = "srv" + std::to_string(r) + "_" + std::to_string(s);
      g.add_node({srv,
                  "SubstrateServer",
                  {{"cpu", cfg.server_cpu},
                   {"resCpu", cfg.server_cpu},
                   {"mem", cfg.server_mem},
                   {"resMem", cfg.server_mem},
                   {"storage", cfg.server_storage},
                   {"resStorage", cfg.server_storage}}});
      const std::string link = "sl_" + srv;
      g.add_node(
          {link, "SubstrateLink", {{"bw", cfg.server_link_bw}, {"resBw", cfg.server_link_bw}}});
      add_edge(g, "source", link, srv);
      add_edge(g, "target", link, rack);
      for (int c = 0; c < cfg.core_switches; ++c) {
        const std::string core = "core" + std::to_string(c);
        const std::string path = "sp_" + srv + "_" + core;
        g.add_node({path, "SubstratePath", {}});
        add_edge(g, "source", path, srv);
        add_edge(g, "target", path, core);
        add_edge(g, "hop1", path, link);
        add_edge(g, "hop2", path, "cl_" + rack + "_" + core);
      }
    }
  }

  std::mt19937_64 rng(cfg.seed);
  auto sample = [&](const IntRange& r) {
    return std::uniform_int_distribution<std::int64_t>(r.lo, r.hi)(rng);
  };
  for (int k = 0; k < cfg.vnr_count; ++k) {
    Vnr vnr{"vnr" + std::to_string(k), Graph(mm)};
    Graph& v = vnr.graph;
    const std::string sw = vnr.id + "_sw";
    v.add_node({sw, "VirtualSwitch", {{"embedded", false}}});
    const std::int64_t n = sample(cfg.vnr_servers);
    for (std::int64_t i = 0; i < n; ++i) {
      const std::string srv = vnr.id + "_srv" + std::to_string(i);
      const std::string link = vnr.id + "_link" + std::to_string(i);
      const std::int64_t cpu = sample(cfg.vnr_cpu);
      const std::int64_t mem = sample(cfg.vnr_mem);
      const std::int64_t storage = sample(cfg.vnr_storage);
      const std::int64_t bw = sample(cfg.vnr_bw);
      v.add_node({srv,
                  "VirtualServer",
                  {{"embedded", false}, {"cpu", cpu}, {"mem", mem}, {"storage", storage}}});
      v.add_node({link, "VirtualLink", {{"embedded", false}, {"bw", bw}}});
      add_edge(v, "vsource", link, srv);
      add_edge(v, "vtarget", link, sw);
    }
    sc.vnrs.push_back(std::move(vnr));
  }
  return sc;
}

}  // namespace gips
