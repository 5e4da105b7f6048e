#include <cctype>

#include "gips/gipsl/parser.hpp"

namespace gips {

namespace {

constexpr std::string_view kTwoCharPuncts[] = {"->", "::", ":=", "<=",
                                               ">=", "==", "!="};
constexpr std::string_view kOneCharPuncts = "{}();:,.|&!+-*/<>";

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

}  // namespace

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> tokens;
  SourceLoc loc{1, 1};
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++loc.line;
        loc.column = 1;
      } else {
        ++loc.column;
      }
    }
  };

  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (src.substr(i, 2) == "//") {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token tok;
    tok.loc = loc;
    if (ident_start(c)) {
      size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      tok.kind = TokenKind::kIdent;
      tok.text = std::string(src.substr(i, j - i));
    } else if (digit(c)) {
      size_t j = i;
      while (j < src.size() && digit(src[j])) ++j;
      if (j + 1 < src.size() && src[j] == '.' && digit(src[j + 1])) {
        ++j;
        while (j < src.size() && digit(src[j])) ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && digit(src[k])) {
          j = k;
          while (j < src.size() && digit(src[j])) ++j;
        }
      }
      tok.kind = TokenKind::kNumber;
      tok.text = std::string(src.substr(i, j - i));
    } else if (c == '"') {
      size_t j = i + 1;
      while (j < src.size() && src[j] != '"' && src[j] != '\n') ++j;
      if (j >= src.size() || src[j] != '"') {
        throw ParseError(loc, "unterminated string literal");
      }
      tok.kind = TokenKind::kString;
      tok.text = std::string(src.substr(i + 1, j - i - 1));
      advance(j + 1 - i);
      tokens.push_back(std::move(tok));
      continue;
    } else {
      tok.kind = TokenKind::kPunct;
      for (std::string_view p : kTwoCharPuncts) {
        if (src.substr(i, 2) == p) tok.text = std::string(p);
      }
      if (tok.text.empty()) {
        if (kOneCharPuncts.find(c) == std::string_view::npos) {
          throw ParseError(loc, std::string("unexpected character '") + c + "'");
        }
        tok.text = std::string(1, c);
      }
    }
    advance(tok.text.size());
    tokens.push_back(std::move(tok));
  }
  tokens.push_back(Token{TokenKind::kEof, "", loc});
  return tokens;
}

}  // namespace gips
