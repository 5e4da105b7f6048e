#include <set>

#include "json.hpp"

#include "gips/vne/vne.hpp"

namespace gips {

namespace {

// Residual attribute -> demand attribute on the hosted virtual element.
const std::pair<const char*, const char*> kServerResources[] = {
    {"resCpu", "cpu"}, {"resMem", "mem"}, {"resStorage", "storage"}};

std::vector<std::string> targets_of(const Graph& g, const std::string& id, const char* type) {
  return g.find_node(id) ? g.targets(id, type) : std::vector<std::string>{};
}

std::int64_t int_attr(const Graph& g, const std::string& id, const char* attr) {
  return std::get<std::int64_t>(g.attr(id, attr));
}

}  // namespace

std::vector<Violation> verify_embedding(const EmbeddingReport& report, const Graph& before,
                                        const Graph& after) {
  std::vector<Violation> out;
  auto violation = [&](const std::string& element, std::string message) {
    out.push_back({element, std::move(message)});
  };
  const Metamodel& mm = after.metamodel();

  // (i) every element of an embedded request hosted exactly once; rejected
  // requests leave no trace.
  std::set<std::string> embedded;
  for (const VnrRecord& r : report.vnrs) {
    for (const std::string& id : r.elements) {
      const Node* n = after.find_node(id);
      if (!r.embedded) {
        if (n) violation(id, "element of rejected request " + r.id + " is still present");
        continue;
      }
      if (!n) {
        violation(id, "element of embedded request " + r.id + " is missing");
        continue;
      }
      if (!mm.is_subtype(n->type, "VirtualElement")) continue;
      auto hosts = after.targets(id, "host");
      if (hosts.size() != 1) {
        violation(id, "hosted " + std::to_string(hosts.size()) + " times instead of exactly once");
        continue;
      }
      embedded.insert(id);
      const Node& h = after.node(hosts[0]);
      const bool ok = (n->type == "VirtualServer" && h.type == "SubstrateServer") ||
                      (n->type == "VirtualSwitch" && mm.is_subtype(h.type, "SubstrateSwitch")) ||
                      (n->type == "VirtualLink" &&
                       (h.type == "SubstrateLink" || h.type == "SubstratePath"));
      if (!ok) violation(id, n->type + " hosted on " + h.type + " " + h.id);
    }
  }

  // Demands recomputed from host edges in the final model.
  std::map<std::string, std::map<std::string, std::int64_t>> demand;
  for (const auto& [id, node] : after.nodes()) {
    if (!mm.is_subtype(node.type, "VirtualElement")) continue;
    for (const std::string& host : after.targets(id, "host")) {
      const Node& h = after.node(host);
      if (node.type == "VirtualServer") {
        for (const auto& [res, dem] : kServerResources) demand[host][res] += int_attr(after, id, dem);
      } else if (node.type == "VirtualLink") {
        const std::int64_t bw = int_attr(after, id, "bw");
        if (h.type == "SubstrateLink") {
          demand[host]["resBw"] += bw;
        } else if (h.type == "SubstratePath") {
          for (const char* hop : {"hop1", "hop2"}) {
            for (const std::string& link : after.targets(host, hop)) demand[link]["resBw"] += bw;
          }
        }
      }
    }
  }

  // (ii) residual before minus hosted demand equals residual after.
  for (const auto& [id, node] : before.nodes()) {
    const Node* now = after.find_node(id);
    if (!now) {
      violation(id, "substrate element disappeared");
      continue;
    }
    for (const auto& [attr, value] : node.attrs) {
      if (attr.rfind("res", 0) != 0) continue;
      const std::int64_t was = std::get<std::int64_t>(value);
      const std::int64_t is = std::get<std::int64_t>(now->attrs.at(attr));
      const std::int64_t used = demand.count(id) ? demand[id][attr] : 0;
      if (was - used != is) {
        violation(id, attr + " is " + std::to_string(is) + " but " + std::to_string(was) +
                          " minus hosted demand " + std::to_string(used) + " gives " +
                          std::to_string(was - used));
      }
      if (is < 0) violation(id, attr + " is oversubscribed (" + std::to_string(is) + ")");
    }
  }

  // (iii) virtual link endpoints hosted on the substrate link's endpoints.
  for (const std::string& id : embedded) {
    const Node& n = after.node(id);
    if (n.type != "VirtualLink") continue;
    const std::string host = after.targets(id, "host")[0];
    for (const auto& [vside, sside] : {std::pair{"vsource", "source"}, std::pair{"vtarget", "target"}}) {
      auto vend = after.targets(id, vside);
      auto send = targets_of(after, host, sside);
      if (vend.size() != 1 || send.size() != 1) {
        violation(id, std::string("malformed ") + vside + "/" + sside + " endpoints");
        continue;
      }
      auto vhost = after.targets(vend[0], "host");
      if (vhost.size() != 1 || vhost[0] != send[0]) {
        violation(id, std::string(vside) + " endpoint " + vend[0] + " is not hosted on " +
                          send[0] + ", the " + sside + " of " + host);
      }
    }
  }
  return out;
}

std::string report_json(const EmbeddingReport& report) {
  nlohmann::ordered_json j;
  j["version"] = 1;
  j["embedded"] = report.embedded_count();
  j["rejected"] = static_cast<int>(report.vnrs.size()) - report.embedded_count();
  j["total_objective"] = report.total_objective;
  j["total_ms"] = report.total_ms;
  j["vnrs"] = nlohmann::ordered_json::array();
  for (const VnrRecord& r : report.vnrs) {
    nlohmann::ordered_json rec;
    rec["id"] = r.id;
    rec["status"] = r.embedded ? "embedded" : "rejected";
    rec["solver"] = r.status;
    rec["objective"] = r.objective;
    rec["vars"] = r.variables;
    rec["rows"] = r.rows;
    rec["bb_nodes"] = r.bb_nodes;
    rec["generate_ms"] = r.generate_ms;
    rec["solve_ms"] = r.solve_ms;
    j["vnrs"].push_back(rec);
  }
  nlohmann::ordered_json res = nlohmann::ordered_json::object();
  for (const auto& [id, attrs] : report.residuals) {
    for (const auto& [attr, v] : attrs) res[id][attr] = v;
  }
  j["residuals"] = res;
  return j.dump(2) + "\n";
}

}  // namespace gips
