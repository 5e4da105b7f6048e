#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gips/gipsl/ast.hpp"

namespace gips {

enum class TokenKind { kIdent, kNumber, kString, kPunct, kEof };

struct Token {
  TokenKind kind = TokenKind::kEof;
  std::string text;
  SourceLoc loc;
};

// Throws ParseError on characters outside the language.
std::vector<Token> tokenize(std::string_view source);

// Parses a whole `.gipsl` document. Throws ParseError carrying the position
// and the accepted tokens; a document without a global objective is rejected.
Spec parse_spec(std::string_view source);

// Parses a single expression (used for pattern conditions built in code).
ExprPtr parse_expression(std::string_view source);

// Canonical printer; parse_spec(print_spec(s)) is structurally equal to s.
std::string print_spec(const Spec& spec);
std::string print_expr(const ExprPtr& expr);

}  // namespace gips
