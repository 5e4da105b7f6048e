#include "gips/model/model_io.hpp"

#include <fstream>
#include <sstream>

#include "gips/error.hpp"
#include "json.hpp"

namespace gips {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

SourceLoc loc_of_byte(std::string_view text, size_t byte) {
  SourceLoc loc{1, 1};
  size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++loc.line;
      loc.column = 1;
    } else {
      ++loc.column;
    }
  }
  return loc;
}

json parse_document(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::string what = e.what();
    auto pos = what.find("syntax error");
    throw ParseError(loc_of_byte(text, e.byte),
                     pos == std::string::npos ? what : what.substr(pos));
  }
  if (!doc.is_object()) {
    throw ParseError(SourceLoc{1, 1}, "model document must be an object");
  }
  return doc;
}

const json& section(const json& doc, const char* key) {
  static const json kEmpty = json::array();
  auto it = doc.find(key);
  if (it == doc.end() || it->is_null()) return kEmpty;
  if (!it->is_array()) {
    throw ModelError(std::string("section '") + key + "' must be a list");
  }
  return *it;
}

std::string string_field(const json& record, const char* key,
                         const std::string& where) {
  auto it = record.find(key);
  if (it == record.end() || !it->is_string()) {
    throw ModelError(where + ": missing string field '" + key + "'");
  }
  return it->get<std::string>();
}

AttrValue to_attr_value(const json& v, AttrKind kind, const std::string& where) {
  switch (kind) {
    case AttrKind::kInt:
      if (v.is_number_integer()) return v.get<std::int64_t>();
      break;
    case AttrKind::kReal:
      if (v.is_number()) return v.get<double>();
      break;
    case AttrKind::kBool:
      if (v.is_boolean()) return v.get<bool>();
      break;
    case AttrKind::kString:
      if (v.is_string()) return v.get<std::string>();
      break;
  }
  throw ModelError(where + " must be " + std::string(to_string(kind)));
}

ordered_json to_json(const AttrValue& value) {
  return std::visit([](const auto& v) { return ordered_json(v); }, value);
}

ordered_json metamodel_sections(const Metamodel& mm) {
  ordered_json nodetypes = ordered_json::array();
  for (const NodeType& nt : mm.node_types()) {
    ordered_json rec;
    rec["name"] = nt.name;
    if (nt.supertype) rec["supertype"] = *nt.supertype;
    ordered_json attrs = ordered_json::array();
    for (const AttributeDecl& a : nt.attributes) {
      attrs.push_back({{"name", a.name}, {"kind", std::string(to_string(a.kind))}});
    }
    rec["attributes"] = std::move(attrs);
    nodetypes.push_back(std::move(rec));
  }
  ordered_json edgetypes = ordered_json::array();
  for (const EdgeType& et : mm.edge_types()) {
    edgetypes.push_back(
        {{"name", et.name}, {"source", et.source_type}, {"target", et.target_type}});
  }
  ordered_json doc;
  doc["nodetypes"] = std::move(nodetypes);
  doc["edgetypes"] = std::move(edgetypes);
  return doc;
}

}  // namespace

Metamodel load_metamodel(std::string_view text) {
  json doc = parse_document(text);
  std::vector<NodeType> node_types;
  for (const json& rec : section(doc, "nodetypes")) {
    std::string where = "nodetypes[" + std::to_string(node_types.size()) + "]";
    if (!rec.is_object()) throw ModelError(where + " must be an object");
    NodeType nt;
    nt.name = string_field(rec, "name", where);
    if (auto it = rec.find("supertype"); it != rec.end() && !it->is_null()) {
      nt.supertype = string_field(rec, "supertype", where);
    }
    if (auto it = rec.find("attributes"); it != rec.end()) {
      if (!it->is_array()) throw ModelError(where + ".attributes must be a list");
      for (const json& a : *it) {
        std::string aw = where + " attribute";
        AttributeDecl decl;
        decl.name = string_field(a, "name", aw);
        std::string kind = string_field(a, "kind", aw);
        auto parsed = parse_attr_kind(kind);
        if (!parsed) {
          throw ModelError(aw + " '" + decl.name + "': unknown kind '" + kind + "'");
        }
        decl.kind = *parsed;
        nt.attributes.push_back(std::move(decl));
      }
    }
    node_types.push_back(std::move(nt));
  }
  std::vector<EdgeType> edge_types;
  for (const json& rec : section(doc, "edgetypes")) {
    std::string where = "edgetypes[" + std::to_string(edge_types.size()) + "]";
    if (!rec.is_object()) throw ModelError(where + " must be an object");
    edge_types.push_back(EdgeType{string_field(rec, "name", where),
                                  string_field(rec, "source", where),
                                  string_field(rec, "target", where)});
  }
  return Metamodel::build(std::move(node_types), std::move(edge_types));
}

Graph load_graph(std::string_view text,
                 std::shared_ptr<const Metamodel> metamodel) {
  json doc = parse_document(text);
  Graph graph(std::move(metamodel));
  const Metamodel& mm = graph.metamodel();
  for (const json& rec : section(doc, "nodes")) {
    if (!rec.is_object()) throw ModelError("node record must be an object");
    Node node;
    node.id = string_field(rec, "id", "node");
    node.type = string_field(rec, "type", "node '" + node.id + "'");
    if (!mm.find_node_type(node.type)) {
      throw ModelError("node '" + node.id + "' has unknown type '" + node.type + "'");
    }
    auto attrs = rec.find("attrs");
    if (attrs != rec.end() && !attrs->is_object()) {
      throw ModelError("node '" + node.id + "': attrs must be an object");
    }
    if (attrs != rec.end()) {
      for (const auto& [name, value] : attrs->items()) {
        const AttributeDecl* decl = mm.find_attribute(node.type, name);
        if (!decl) {
          throw ModelError("node '" + node.id + "' has undeclared attribute '" +
                           name + "'");
        }
        node.attrs[name] = to_attr_value(
            value, decl->kind, "node '" + node.id + "' attribute '" + name + "'");
      }
    }
    graph.add_node(std::move(node));
  }
  for (const json& rec : section(doc, "edges")) {
    if (!rec.is_object()) throw ModelError("edge record must be an object");
    Edge edge;
    edge.id = string_field(rec, "id", "edge");
    std::string where = "edge '" + edge.id + "'";
    edge.type = string_field(rec, "type", where);
    edge.src = string_field(rec, "src", where);
    edge.tgt = string_field(rec, "tgt", where);
    graph.add_edge(std::move(edge));
  }
  return graph;
}

std::string serialize_metamodel(const Metamodel& metamodel) {
  ordered_json doc = metamodel_sections(metamodel);
  doc["nodes"] = ordered_json::array();
  doc["edges"] = ordered_json::array();
  return doc.dump(2) + "\n";
}

std::string serialize(const Graph& graph) {
  const Metamodel& mm = graph.metamodel();
  ordered_json doc = metamodel_sections(mm);
  ordered_json nodes = ordered_json::array();
  for (const auto& [id, node] : graph.nodes()) {
    ordered_json attrs = ordered_json::object();
    for (const AttributeDecl& decl : mm.attributes(node.type)) {
      attrs[decl.name] = to_json(node.attrs.at(decl.name));
    }
    ordered_json rec;
    rec["id"] = node.id;
    rec["type"] = node.type;
    rec["attrs"] = std::move(attrs);
    nodes.push_back(std::move(rec));
  }
  ordered_json edges = ordered_json::array();
  for (const auto& [id, edge] : graph.edges()) {
    ordered_json rec;
    rec["id"] = edge.id;
    rec["type"] = edge.type;
    rec["src"] = edge.src;
    rec["tgt"] = edge.tgt;
    edges.push_back(std::move(rec));
  }
  doc["nodes"] = std::move(nodes);
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
}

}  // namespace gips
