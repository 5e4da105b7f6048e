#include "gips/model/value.hpp"

#include <charconv>
#include <cmath>

namespace gips {

std::string_view to_string(AttrKind kind) {
  switch (kind) {
    case AttrKind::kInt:
      return "int";
    case AttrKind::kReal:
      return "real";
    case AttrKind::kBool:
      return "bool";
    case AttrKind::kString:
      return "string";
  }
  return "?";
}

std::optional<AttrKind> parse_attr_kind(std::string_view text) {
  if (text == "int") return AttrKind::kInt;
  if (text == "real") return AttrKind::kReal;
  if (text == "bool") return AttrKind::kBool;
  if (text == "string") return AttrKind::kString;
  return std::nullopt;
}

AttrKind kind_of(const AttrValue& value) {
  switch (value.index()) {
    case 0:
      return AttrKind::kInt;
    case 1:
      return AttrKind::kReal;
    case 2:
      return AttrKind::kBool;
    default:
      return AttrKind::kString;
  }
}

bool value_conforms(const AttrValue& value, AttrKind kind) {
  if (kind_of(value) != kind) return false;
  if (const double* d = std::get_if<double>(&value)) return std::isfinite(*d);
  return true;
}

AttrValue default_value(AttrKind kind) {
  switch (kind) {
    case AttrKind::kInt:
      return std::int64_t{0};
    case AttrKind::kReal:
      return 0.0;
    case AttrKind::kBool:
      return false;
    case AttrKind::kString:
      return std::string();
  }
  return std::int64_t{0};
}

std::string to_string(const AttrValue& value) {
  switch (value.index()) {
    case 0:
      return std::to_string(std::get<std::int64_t>(value));
    case 1: {
      char buf[64];
      auto res = std::to_chars(buf, buf + sizeof buf, std::get<double>(value));
      return std::string(buf, res.ptr);
    }
    case 2:
      return std::get<bool>(value) ? "true" : "false";
    default:
      return "\"" + std::get<std::string>(value) + "\"";
  }
}

}  // namespace gips
