#include "gips/model/graph.hpp"

#include <algorithm>

#include "gips/error.hpp"

namespace gips {

namespace {

const std::vector<std::string> kNoEdges;

void erase_id(std::vector<std::string>& ids, std::string_view id) {
  ids.erase(std::remove(ids.begin(), ids.end(), id), ids.end());
}

}  // namespace

Graph::Graph(std::shared_ptr<const Metamodel> metamodel)
    : metamodel_(std::move(metamodel)) {
  if (!metamodel_) metamodel_ = std::make_shared<const Metamodel>();
}

void Graph::check_node(const Node& node) const {
  if (node.id.empty()) throw ModelError("node without an id");
  if (!metamodel_->find_node_type(node.type)) {
    throw ModelError("node '" + node.id + "' has unknown type '" + node.type +
                     "'");
  }
  const auto& decls = metamodel_->attributes(node.type);
  for (const AttributeDecl& decl : decls) {
    auto it = node.attrs.find(decl.name);
    if (it == node.attrs.end()) {
      throw ModelError("node '" + node.id + "' is missing attribute '" +
                       decl.name + "'");
    }
    if (!value_conforms(it->second, decl.kind)) {
      throw ModelError("node '" + node.id + "' attribute '" + decl.name +
                       "' must be " + std::string(to_string(decl.kind)));
    }
  }
  if (node.attrs.size() != decls.size()) {
    for (const auto& [name, value] : node.attrs) {
      if (!metamodel_->find_attribute(node.type, name)) {
        throw ModelError("node '" + node.id + "' has undeclared attribute '" +
                         name + "'");
      }
    }
  }
}

void Graph::check_edge(const Edge& edge) const {
  if (edge.id.empty()) throw ModelError("edge without an id");
  const EdgeType* et = metamodel_->find_edge_type(edge.type);
  if (!et) {
    throw ModelError("edge '" + edge.id + "' has unknown type '" + edge.type +
                     "'");
  }
  const Node* src = find_node(edge.src);
  const Node* tgt = find_node(edge.tgt);
  if (!src || !tgt) {
    throw ModelError("edge '" + edge.id + "' references missing node '" +
                     (src ? edge.tgt : edge.src) + "'");
  }
  if (!metamodel_->is_subtype(src->type, et->source_type) ||
      !metamodel_->is_subtype(tgt->type, et->target_type)) {
    throw ModelError("edge '" + edge.id + "' of type '" + edge.type +
                     "' does not conform to " + et->source_type + " -> " +
                     et->target_type);
  }
}

void Graph::add_node(Node node) {
  if (nodes_.count(node.id)) {
    throw ModelError("duplicate node id '" + node.id + "'");
  }
  check_node(node);
  by_type_[node.type].insert(node.id);
  std::string id = node.id;
  nodes_.emplace(std::move(id), std::move(node));
}

void Graph::add_edge(Edge edge) {
  if (edges_.count(edge.id)) {
    throw ModelError("duplicate edge id '" + edge.id + "'");
  }
  check_edge(edge);
  out_[edge.src].push_back(edge.id);
  in_[edge.tgt].push_back(edge.id);
  std::string id = edge.id;
  edges_.emplace(std::move(id), std::move(edge));
}

void Graph::set_attr(std::string_view node, std::string_view attribute,
                     AttrValue value) {
  auto it = nodes_.find(node);
  if (it == nodes_.end()) {
    throw ModelError("attribute update on missing node '" + std::string(node) +
                     "'");
  }
  const AttributeDecl* decl =
      metamodel_->find_attribute(it->second.type, attribute);
  if (!decl) {
    throw ModelError("node '" + it->first + "' has no attribute '" +
                     std::string(attribute) + "'");
  }
  if (decl->kind == AttrKind::kReal && kind_of(value) == AttrKind::kInt) {
    value = static_cast<double>(std::get<std::int64_t>(value));
  }
  if (!value_conforms(value, decl->kind)) {
    throw ModelError("node '" + it->first + "' attribute '" + decl->name +
                     "' must be " + std::string(to_string(decl->kind)));
  }
  it->second.attrs[decl->name] = std::move(value);
}

void Graph::remove_edge(std::string_view id) {
  auto it = edges_.find(id);
  if (it == edges_.end()) {
    throw ModelError("cannot delete missing edge '" + std::string(id) + "'");
  }
  erase_id(out_[it->second.src], id);
  erase_id(in_[it->second.tgt], id);
  edges_.erase(it);
}

void Graph::remove_node(std::string_view id) {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) {
    throw ModelError("cannot delete missing node '" + std::string(id) + "'");
  }
  std::vector<std::string> incident = out_edges(id);
  for (const std::string& e : in_edges(id)) {
    if (std::find(incident.begin(), incident.end(), e) == incident.end()) {
      incident.push_back(e);
    }
  }
  for (const std::string& e : incident) remove_edge(e);
  by_type_[it->second.type].erase(it->first);
  out_.erase(it->first);
  in_.erase(it->first);
  nodes_.erase(it);
}

void Graph::merge(const Graph& other) {
  Graph result = *this;
  for (const auto& [id, node] : other.nodes_) result.add_node(node);
  for (const auto& [id, edge] : other.edges_) result.add_edge(edge);
  *this = std::move(result);
}

const Node* Graph::find_node(std::string_view id) const {
  auto it = nodes_.find(id);
  return it == nodes_.end() ? nullptr : &it->second;
}

const Node& Graph::node(std::string_view id) const {
  const Node* n = find_node(id);
  if (!n) throw ModelError("missing node '" + std::string(id) + "'");
  return *n;
}

const Edge* Graph::find_edge(std::string_view id) const {
  auto it = edges_.find(id);
  return it == edges_.end() ? nullptr : &it->second;
}

const AttrValue& Graph::attr(std::string_view node_id,
                             std::string_view attribute) const {
  const Node& n = node(node_id);
  auto it = n.attrs.find(std::string(attribute));
  if (it == n.attrs.end()) {
    throw ModelError("node '" + n.id + "' has no attribute '" +
                     std::string(attribute) + "'");
  }
  return it->second;
}

std::vector<std::string> Graph::nodes_of_type(std::string_view type) const {
  std::vector<std::string> ids;
  for (const std::string& sub : metamodel_->subtypes(type)) {
    auto it = by_type_.find(sub);
    if (it != by_type_.end()) ids.insert(ids.end(), it->second.begin(), it->second.end());
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

const std::vector<std::string>& Graph::out_edges(std::string_view node) const {
  auto it = out_.find(node);
  return it == out_.end() ? kNoEdges : it->second;
}

const std::vector<std::string>& Graph::in_edges(std::string_view node) const {
  auto it = in_.find(node);
  return it == in_.end() ? kNoEdges : it->second;
}

bool Graph::has_edge(std::string_view type, std::string_view src,
                     std::string_view tgt) const {
  for (const std::string& id : out_edges(src)) {
    const Edge& e = edges_.find(id)->second;
    if (e.type == type && e.tgt == tgt) return true;
  }
  return false;
}

std::vector<std::string> Graph::targets(std::string_view src,
                                        std::string_view type) const {
  std::vector<std::string> out;
  for (const std::string& id : out_edges(src)) {
    const Edge& e = edges_.find(id)->second;
    if (e.type == type) out.push_back(e.tgt);
  }
  return out;
}

void Graph::validate() const {
  for (const auto& [id, node] : nodes_) {
    if (id != node.id) throw ModelError("node key mismatch for '" + id + "'");
    check_node(node);
  }
  for (const auto& [id, edge] : edges_) {
    if (id != edge.id) throw ModelError("edge key mismatch for '" + id + "'");
    check_edge(edge);
  }
}

bool GraphDelta::empty() const {
  return created_nodes.empty() && created_edges.empty() &&
         deleted_edges.empty() && deleted_nodes.empty() &&
         attr_updates.empty();
}

std::set<std::string> GraphDelta::touched_nodes(const Graph& before) const {
  std::set<std::string> touched;
  for (const Node& n : created_nodes) touched.insert(n.id);
  for (const Edge& e : created_edges) {
    touched.insert(e.src);
    touched.insert(e.tgt);
  }
  for (const std::string& id : deleted_edges) {
    if (const Edge* e = before.find_edge(id)) {
      touched.insert(e->src);
      touched.insert(e->tgt);
    }
  }
  for (const std::string& id : deleted_nodes) {
    touched.insert(id);
    for (const auto* list : {&before.out_edges(id), &before.in_edges(id)}) {
      for (const std::string& eid : *list) {
        const Edge& e = *before.find_edge(eid);
        touched.insert(e.src);
        touched.insert(e.tgt);
      }
    }
  }
  for (const AttrUpdate& u : attr_updates) touched.insert(u.node);
  return touched;
}

Graph apply_delta(Graph graph, const GraphDelta& delta) {
  for (const Node& n : delta.created_nodes) graph.add_node(n);
  for (const AttrUpdate& u : delta.attr_updates) {
    graph.set_attr(u.node, u.attribute, u.value);
  }
  for (const Edge& e : delta.created_edges) graph.add_edge(e);
  for (const std::string& id : delta.deleted_edges) graph.remove_edge(id);
  for (const std::string& id : delta.deleted_nodes) graph.remove_node(id);
  return graph;
}

}  // namespace gips
