#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gips/model/value.hpp"

namespace gips {

struct AttributeDecl {
  std::string name;
  AttrKind kind = AttrKind::kInt;

  bool operator==(const AttributeDecl&) const = default;
};

struct NodeType {
  std::string name;
  std::vector<AttributeDecl> attributes;  // own attributes only
  std::optional<std::string> supertype;

  bool operator==(const NodeType&) const = default;
};

struct EdgeType {
  std::string name;
  std::string source_type;
  std::string target_type;

  bool operator==(const EdgeType&) const = default;
};

// Schema of a typed attributed graph. Single inheritance between node types;
// an edge type's endpoints accept the declared node type and its subtypes.
class Metamodel {
 public:
  Metamodel() = default;

  // Validates names, supertype chains and edge endpoints. Throws ModelError.
  static Metamodel build(std::vector<NodeType> node_types,
                         std::vector<EdgeType> edge_types);

  const std::vector<NodeType>& node_types() const { return node_types_; }
  const std::vector<EdgeType>& edge_types() const { return edge_types_; }

  const NodeType* find_node_type(std::string_view name) const;
  const EdgeType* find_edge_type(std::string_view name) const;

  // True iff `type` equals `ancestor` or inherits from it.
  bool is_subtype(std::string_view type, std::string_view ancestor) const;

  // All attributes of `type`, inherited ones first.
  const std::vector<AttributeDecl>& attributes(std::string_view type) const;
  const AttributeDecl* find_attribute(std::string_view type,
                                      std::string_view attribute) const;

  // `type` and every type that inherits from it, in declaration order.
  const std::vector<std::string>& subtypes(std::string_view type) const;

  bool operator==(const Metamodel& other) const {
    return node_types_ == other.node_types_ && edge_types_ == other.edge_types_;
  }

 private:
  std::vector<NodeType> node_types_;
  std::vector<EdgeType> edge_types_;
  std::map<std::string, size_t, std::less<>> node_index_;
  std::map<std::string, size_t, std::less<>> edge_index_;
  std::map<std::string, std::vector<AttributeDecl>, std::less<>> all_attrs_;
  std::map<std::string, std::vector<std::string>, std::less<>> subtypes_;
};

}  // namespace gips
