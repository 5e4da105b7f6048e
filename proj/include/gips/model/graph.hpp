#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gips/model/metamodel.hpp"
#include "gips/model/value.hpp"

namespace gips {

struct Node {
  std::string id;
  std::string type;
  std::map<std::string, AttrValue> attrs;

  bool operator==(const Node&) const = default;
};

struct Edge {
  std::string id;
  std::string type;
  std::string src;
  std::string tgt;

  bool operator==(const Edge&) const = default;
};

// Instance graph conforming to a metamodel. Every mutator keeps the graph
// conforming or throws ModelError without modifying it.
class Graph {
 public:
  explicit Graph(std::shared_ptr<const Metamodel> metamodel);

  const Metamodel& metamodel() const { return *metamodel_; }
  const std::shared_ptr<const Metamodel>& metamodel_ptr() const {
    return metamodel_;
  }

  void add_node(Node node);
  void add_edge(Edge edge);
  void set_attr(std::string_view node, std::string_view attribute,
                AttrValue value);
  void remove_edge(std::string_view id);
  // Single-pushout: incident edges are removed together with the node.
  void remove_node(std::string_view id);

  // Adds every node and edge of `other`; ids must not collide.
  void merge(const Graph& other);

  const Node* find_node(std::string_view id) const;
  const Node& node(std::string_view id) const;
  const Edge* find_edge(std::string_view id) const;
  const AttrValue& attr(std::string_view node, std::string_view attribute) const;

  const std::map<std::string, Node, std::less<>>& nodes() const {
    return nodes_;
  }
  const std::map<std::string, Edge, std::less<>>& edges() const {
    return edges_;
  }

  // Ids of nodes whose type is `type` or a subtype, sorted.
  std::vector<std::string> nodes_of_type(std::string_view type) const;
  const std::vector<std::string>& out_edges(std::string_view node) const;
  const std::vector<std::string>& in_edges(std::string_view node) const;
  bool has_edge(std::string_view type, std::string_view src,
                std::string_view tgt) const;
  // Targets of `type` edges leaving `src`, in edge insertion order.
  std::vector<std::string> targets(std::string_view src,
                                   std::string_view type) const;

  // Full conformance check of every node and edge.
  void validate() const;

  bool operator==(const Graph& other) const {
    return nodes_ == other.nodes_ && edges_ == other.edges_;
  }

 private:
  void check_node(const Node& node) const;
  void check_edge(const Edge& edge) const;

  std::shared_ptr<const Metamodel> metamodel_;
  std::map<std::string, Node, std::less<>> nodes_;
  std::map<std::string, Edge, std::less<>> edges_;
  std::map<std::string, std::vector<std::string>, std::less<>> out_;
  std::map<std::string, std::vector<std::string>, std::less<>> in_;
  std::map<std::string, std::set<std::string>, std::less<>> by_type_;
};

struct AttrUpdate {
  std::string node;
  std::string attribute;
  AttrValue value;

  bool operator==(const AttrUpdate&) const = default;
};

// A batch of graph modifications. Applied in the order: created nodes,
// attribute updates, created edges, deleted edges, deleted nodes.
struct GraphDelta {
  std::vector<Node> created_nodes;
  std::vector<Edge> created_edges;
  std::vector<std::string> deleted_edges;
  std::vector<std::string> deleted_nodes;
  std::vector<AttrUpdate> attr_updates;

  bool empty() const;
  // Node ids whose attributes, incident edges or existence the delta changes.
  std::set<std::string> touched_nodes(const Graph& before) const;

  bool operator==(const GraphDelta&) const = default;
};

// Throws ModelError if the delta references missing ids or would break
// conformance; `graph` is taken by value so the caller's copy is untouched.
Graph apply_delta(Graph graph, const GraphDelta& delta);

}  // namespace gips
