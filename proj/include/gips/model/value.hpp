#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace gips {

enum class AttrKind { kInt, kReal, kBool, kString };

std::string_view to_string(AttrKind kind);
std::optional<AttrKind> parse_attr_kind(std::string_view text);

// Attribute values stored on graph nodes. Resources (CPU cores, Mbit/s, GiB)
// are ints in base units.
using AttrValue = std::variant<std::int64_t, double, bool, std::string>;

AttrKind kind_of(const AttrValue& value);
bool value_conforms(const AttrValue& value, AttrKind kind);
AttrValue default_value(AttrKind kind);
std::string to_string(const AttrValue& value);

}  // namespace gips
