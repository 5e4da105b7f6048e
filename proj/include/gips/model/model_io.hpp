#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "gips/model/graph.hpp"
#include "gips/model/metamodel.hpp"

namespace gips {

// Model documents are JSON objects with the keys `nodetypes`, `edgetypes`,
// `nodes` and `edges`; any of them may be omitted.
Metamodel load_metamodel(std::string_view text);
Graph load_graph(std::string_view text,
                 std::shared_ptr<const Metamodel> metamodel);

std::string serialize_metamodel(const Metamodel& metamodel);
// Emits all four sections, the metamodel included, in canonical key order.
std::string serialize(const Graph& graph);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace gips
