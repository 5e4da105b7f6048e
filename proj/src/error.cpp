#include "gips/error.hpp"

namespace gips {

namespace {

std::string format_parse_error(SourceLoc loc, const std::string& message,
                               const std::vector<std::string>& expected) {
  std::string out = loc.str() + ": " + message;
  if (!expected.empty()) {
    out += " (expected ";
    for (size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) out += i + 1 == expected.size() ? " or " : ", ";
      out += expected[i];
    }
    out += ")";
  }
  return out;
}

std::string join_diagnostics(const std::vector<Diagnostic>& diagnostics) {
  std::string out;
  for (const Diagnostic& d : diagnostics) {
    if (!out.empty()) out += "\n";
    out += d.str();
  }
  return out;
}

}  // namespace

ParseError::ParseError(SourceLoc loc, const std::string& message,
                       std::vector<std::string> expected)
    : Error(format_parse_error(loc, message, expected)),
      loc_(loc),
      expected_(std::move(expected)) {}

std::string Diagnostic::str() const {
  std::string out = loc.valid() ? loc.str() + ": " : std::string("?: ");
  out += severity == Severity::kError ? "error: " : "warning: ";
  return out + message;
}

SpecError::SpecError(std::vector<Diagnostic> diagnostics)
    : Error(join_diagnostics(diagnostics)),
      diagnostics_(std::move(diagnostics)) {}

}  // namespace gips
