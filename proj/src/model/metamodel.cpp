#include "gips/model/metamodel.hpp"

#include <set>

#include "gips/error.hpp"

namespace gips {

Metamodel Metamodel::build(std::vector<NodeType> node_types,
                           std::vector<EdgeType> edge_types) {
  Metamodel mm;
  mm.node_types_ = std::move(node_types);
  mm.edge_types_ = std::move(edge_types);

  for (size_t i = 0; i < mm.node_types_.size(); ++i) {
    const std::string& name = mm.node_types_[i].name;
    if (name.empty()) throw ModelError("node type without a name");
    if (!mm.node_index_.emplace(name, i).second) {
      throw ModelError("duplicate node type '" + name + "'");
    }
  }
  for (size_t i = 0; i < mm.edge_types_.size(); ++i) {
    const EdgeType& et = mm.edge_types_[i];
    if (et.name.empty()) throw ModelError("edge type without a name");
    if (mm.node_index_.count(et.name) || !mm.edge_index_.emplace(et.name, i).second) {
      throw ModelError("duplicate type '" + et.name + "'");
    }
    for (const std::string* end : {&et.source_type, &et.target_type}) {
      if (!mm.node_index_.count(*end)) {
        throw ModelError("edge type '" + et.name +
                         "' references undeclared node type '" + *end + "'");
      }
    }
  }

  for (const NodeType& nt : mm.node_types_) {
    std::set<std::string> seen{nt.name};
    const NodeType* cur = &nt;
    while (cur->supertype) {
      auto it = mm.node_index_.find(*cur->supertype);
      if (it == mm.node_index_.end()) {
        throw ModelError("node type '" + cur->name +
                         "' has undeclared supertype '" + *cur->supertype + "'");
      }
      cur = &mm.node_types_[it->second];
      if (!seen.insert(cur->name).second) {
        throw ModelError("cyclic supertype chain through '" + nt.name + "'");
      }
    }
  }

  // Attributes, inherited first; names must be unique along the chain.
  for (const NodeType& nt : mm.node_types_) {
    std::vector<const NodeType*> chain;
    for (const NodeType* cur = &nt; cur;) {
      chain.push_back(cur);
      cur = cur->supertype ? &mm.node_types_[mm.node_index_.at(*cur->supertype)]
                           : nullptr;
    }
    std::vector<AttributeDecl> attrs;
    std::set<std::string> names;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      for (const AttributeDecl& a : (*it)->attributes) {
        if (!names.insert(a.name).second) {
          throw ModelError("duplicate attribute '" + a.name +
                           "' in node type '" + nt.name + "'");
        }
        attrs.push_back(a);
      }
    }
    mm.all_attrs_.emplace(nt.name, std::move(attrs));
  }

  for (const NodeType& base : mm.node_types_) {
    std::vector<std::string> subs;
    for (const NodeType& nt : mm.node_types_) {
      if (mm.is_subtype(nt.name, base.name)) subs.push_back(nt.name);
    }
    mm.subtypes_.emplace(base.name, std::move(subs));
  }
  return mm;
}

const NodeType* Metamodel::find_node_type(std::string_view name) const {
  auto it = node_index_.find(name);
  return it == node_index_.end() ? nullptr : &node_types_[it->second];
}

const EdgeType* Metamodel::find_edge_type(std::string_view name) const {
  auto it = edge_index_.find(name);
  return it == edge_index_.end() ? nullptr : &edge_types_[it->second];
}

bool Metamodel::is_subtype(std::string_view type,
                           std::string_view ancestor) const {
  const NodeType* cur = find_node_type(type);
  while (cur) {
    if (cur->name == ancestor) return true;
    cur = cur->supertype ? find_node_type(*cur->supertype) : nullptr;
  }
  return false;
}

const std::vector<AttributeDecl>& Metamodel::attributes(
    std::string_view type) const {
  static const std::vector<AttributeDecl> kNone;
  auto it = all_attrs_.find(type);
  return it == all_attrs_.end() ? kNone : it->second;
}

const AttributeDecl* Metamodel::find_attribute(std::string_view type,
                                               std::string_view attribute) const {
  for (const AttributeDecl& a : attributes(type)) {
    if (a.name == attribute) return &a;
  }
  return nullptr;
}

const std::vector<std::string>& Metamodel::subtypes(std::string_view type) const {
  static const std::vector<std::string> kNone;
  auto it = subtypes_.find(type);
  return it == subtypes_.end() ? kNone : it->second;
}

}  // namespace gips
