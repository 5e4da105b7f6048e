#include "gips/pattern/pattern.hpp"

namespace gips {

int Pattern::index_of(std::string_view node) const {
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].name == node) return static_cast<int>(i);
  }
  return -1;
}

const std::string& Match::at(const Pattern& p, std::string_view node) const {
  int i = p.index_of(node);
  if (i < 0 || static_cast<size_t>(i) >= nodes.size()) {
    throw Error("pattern '" + p.name + "' has no node '" + std::string(node) + "'");
  }
  return nodes[i];
}

}  // namespace gips
