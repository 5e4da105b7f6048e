#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <optional>

#include "gips/error.hpp"
#include "gips/solve/solver.hpp"

namespace gips {

namespace {

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

bool valid_name(const std::string& id) {
  static const std::string extra = "!\"#$%&()/,.;?@_`'{}|~";
  if (id.empty() || id.size() > 255) return false;
  if (std::isdigit(static_cast<unsigned char>(id[0])) || id[0] == '.') return false;
  if (id[0] == 'e' || id[0] == 'E') {
    // Avoid names a reader could take for an exponent.
    if (id.size() == 1 || std::isdigit(static_cast<unsigned char>(id[1]))) return false;
  }
  for (char c : id) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && extra.find(c) == std::string::npos) {
      return false;
    }
  }
  return true;
}

std::string linear(const std::map<int, double>& coeffs, const IlpProblem& p) {
  std::string s;
  for (const auto& [var, c] : coeffs) {
    if (s.empty()) {
      s += (c < 0 ? "-" : "") + num(std::fabs(c));
    } else {
      s += (c < 0 ? " - " : " + ") + num(std::fabs(c));
    }
    s += " " + p.variables[var].id;
  }
  return s;
}

void wrap_names(std::string& out, const std::vector<std::string>& names) {
  std::string line;
  for (const std::string& n : names) {
    if (!line.empty() && line.size() + n.size() > 70) {
      out += line + "\n";
      line.clear();
    }
    line += " " + n;
  }
  if (!line.empty()) out += line + "\n";
}

}  // namespace

std::string export_lp(const IlpProblem& p, const MappingTable& table) {
  for (const auto& [var, entry] : table.entries()) {
    if (var < 0 || var >= static_cast<int>(p.variables.size())) {
      throw SolveError("mapping table refers to unknown variable " + std::to_string(var));
    }
    const std::string& id = p.variables[var].id;
    if (id.rfind("m_" + entry.mapping + "_", 0) != 0) {
      throw SolveError("variable " + id + " does not follow the mapping naming scheme");
    }
  }
  return export_lp(p);
}

std::string export_lp(const IlpProblem& p) {
  std::map<std::string, int> seen;
  for (size_t j = 0; j < p.variables.size(); ++j) {
    const std::string& id = p.variables[j].id;
    if (!valid_name(id)) throw SolveError("'" + id + "' is not a valid LP variable name");
    if (!seen.emplace(id, static_cast<int>(j)).second) throw SolveError("name collision: " + id);
    if (!std::isfinite(p.variables[j].lower)) {
      throw SolveError("variable " + id + " has no finite lower bound");
    }
  }
  std::string out = p.objective.sense == Sense::kMin ? "Minimize\n" : "Maximize\n";
  std::string obj = linear(p.objective.coeffs, p);
  if (p.objective.constant != 0 || obj.empty()) {
    double c = p.objective.constant;
    if (obj.empty()) {
      obj = num(c);
    } else {
      obj += (c < 0 ? " - " : " + ") + num(std::fabs(c));
    }
  }
  out += " obj: " + obj + "\n";
  out += "Subject To\n";
  for (size_t r = 0; r < p.rows.size(); ++r) {
    const Row& row = p.rows[r];
    std::string lhs = linear(row.coeffs, p);
    if (lhs.empty()) lhs = "0";
    out += " c" + std::to_string(r) + ": " + lhs + " " + std::string(to_string(row.rel)) + " " +
           num(row.rhs) + "\n";
  }
  out += "Bounds\n";
  std::vector<std::string> binaries;
  for (const Variable& v : p.variables) {
    if (v.integral()) binaries.push_back(v.id);
    if (std::isinf(v.upper)) {
      out += " " + v.id + " >= " + num(v.lower) + "\n";
    } else {
      out += " " + num(v.lower) + " <= " + v.id + " <= " + num(v.upper) + "\n";
    }
  }
  out += "Binary\n";
  wrap_names(out, binaries);
  out += "End\n";
  return out;
}

namespace {

enum class Section { kNone, kObjective, kConstraints, kBounds, kBinary, kGeneral, kEnd };

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::optional<Section> header(const std::string& line, Sense& sense) {
  std::string l = lower(line);
  if (l == "minimize" || l == "minimise" || l == "minimum" || l == "min") {
    sense = Sense::kMin;
    return Section::kObjective;
  }
  if (l == "maximize" || l == "maximise" || l == "maximum" || l == "max") {
    sense = Sense::kMax;
    return Section::kObjective;
  }
  if (l == "subject to" || l == "such that" || l == "st" || l == "s.t.") return Section::kConstraints;
  if (l == "bounds" || l == "bound") return Section::kBounds;
  if (l == "binary" || l == "binaries" || l == "bin") return Section::kBinary;
  if (l == "general" || l == "generals" || l == "gen") return Section::kGeneral;
  if (l == "end") return Section::kEnd;
  return std::nullopt;
}

struct Token {
  enum class Kind { kNumber, kName, kOp, kColon };
  Kind kind;
  std::string text;
  double value = 0;
  SourceLoc loc;
};

class SectionParser {
 public:
  SectionParser(std::vector<Token> tokens, SourceLoc end) : toks_(std::move(tokens)), end_(end) {}

  bool done() const { return i_ >= toks_.size(); }
  const Token* peek(size_t k = 0) const { return i_ + k < toks_.size() ? &toks_[i_ + k] : nullptr; }
  SourceLoc loc() const { return done() ? end_ : toks_[i_].loc; }
  const Token& next() { return toks_[i_++]; }

  [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected = {}) const {
    throw ParseError(loc(), msg, std::move(expected));
  }

  bool accept_op(const std::string& op) {
    if (auto t = peek(); t && t->kind == Token::Kind::kOp && t->text == op) {
      ++i_;
      return true;
    }
    return false;
  }

  // Optional `name:` label.
  void skip_label() {
    if (auto t = peek(); t && t->kind == Token::Kind::kName) {
      if (auto c = peek(1); c && c->kind == Token::Kind::kColon) i_ += 2;
    }
  }

  bool at_relation() const {
    auto t = peek();
    return t && t->kind == Token::Kind::kOp &&
           (t->text == "<=" || t->text == ">=" || t->text == "=" || t->text == "<" ||
            t->text == ">" || t->text == "=<" || t->text == "=>");
  }

  Relation relation() {
    if (!at_relation()) fail("expected a relation", {"<=", ">=", "="});
    std::string op = next().text;
    if (op == "<=" || op == "<" || op == "=<") return Relation::kLe;
    if (op == ">=" || op == ">" || op == "=>") return Relation::kGe;
    return Relation::kEq;
  }

  double signed_number() {
    double sign = 1;
    while (true) {
      if (accept_op("-")) {
        sign = -sign;
      } else if (!accept_op("+")) {
        break;
      }
    }
    auto t = peek();
    if (!t || t->kind != Token::Kind::kNumber) fail("expected a number", {"number"});
    return sign * next().value;
  }

  // Sum of [sign] [number] [name] terms until a relation, a label or the end.
  template <typename Var>
  LinearTerm expression(Var&& var, bool stop_at_label) {
    LinearTerm t;
    bool first = true;
    while (!done() && !at_relation()) {
      if (stop_at_label && !first) {
        auto a = peek();
        auto b = peek(1);
        if (a && b && a->kind == Token::Kind::kName && b->kind == Token::Kind::kColon) break;
      }
      double sign = 1;
      bool had_sign = false;
      while (true) {
        if (accept_op("-")) {
          sign = -sign;
        } else if (!accept_op("+")) {
          break;
        }
        had_sign = true;
      }
      if (!first && !had_sign) fail("expected '+' or '-' between terms", {"+", "-"});
      first = false;
      double coeff = 1;
      bool has_number = false;
      if (auto n = peek(); n && n->kind == Token::Kind::kNumber) {
        coeff = next().value;
        has_number = true;
      }
      if (auto n = peek(); n && n->kind == Token::Kind::kName) {
        t.add(LinearTerm::of_variable(var(next()), sign * coeff));
        // Keep explicit zero coefficients out of the row.
      } else if (has_number) {
        t.constant += sign * coeff;
      } else {
        fail("expected a term", {"number", "variable"});
      }
    }
    return t;
  }

 private:
  std::vector<Token> toks_;
  SourceLoc end_;
  size_t i_ = 0;
};

std::vector<Token> tokenize_line(const std::string& line, int lineno) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    SourceLoc loc{lineno, static_cast<int>(i) + 1};
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '\\') {
      break;
    } else if (c == ':') {
      out.push_back({Token::Kind::kColon, ":", 0, loc});
      ++i;
    } else if (c == '<' || c == '>' || c == '=') {
      std::string op(1, c);
      if (i + 1 < line.size() && (line[i + 1] == '=' || line[i + 1] == '<' || line[i + 1] == '>')) {
        op += line[i + 1];
      }
      i += op.size();
      out.push_back({Token::Kind::kOp, op, 0, loc});
    } else if (c == '+' || c == '-') {
      out.push_back({Token::Kind::kOp, std::string(1, c), 0, loc});
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = line.c_str() + i;
      char* end = nullptr;
      double v = std::strtod(begin, &end);
      if (end == begin) throw ParseError(loc, "malformed number");
      out.push_back({Token::Kind::kNumber, std::string(begin, static_cast<size_t>(end - begin)), v, loc});
      i += static_cast<size_t>(end - begin);
    } else {
      size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) &&
             std::string("<>=:+-\\").find(line[j]) == std::string::npos) {
        ++j;
      }
      std::string name = line.substr(i, j - i);
      std::string l = lower(name);
      if (l == "inf" || l == "infinity") {
        out.push_back({Token::Kind::kNumber, name, kInfinity, loc});
      } else {
        out.push_back({Token::Kind::kName, name, 0, loc});
      }
      i = j;
    }
  }
  return out;
}

}  // namespace

IlpProblem import_lp(std::string_view text) {
  std::map<Section, std::vector<Token>> sections;
  std::map<Section, SourceLoc> section_end;
  Sense sense = Sense::kMin;
  Section current = Section::kNone;
  bool seen_end = false;
  int lineno = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string line(text.substr(start, nl - start));
    start = nl + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    size_t b = line.find_first_not_of(" \t");
    if (b == std::string::npos || line[b] == '\\') {
      if (nl == text.size()) break;
      continue;
    }
    std::string trimmed = line.substr(b, line.find_last_not_of(" \t") - b + 1);
    SourceLoc loc{lineno, static_cast<int>(b) + 1};
    if (seen_end) throw ParseError(loc, "text after End");
    Sense s = sense;
    if (auto h = header(trimmed, s)) {
      if (*h == Section::kObjective) {
        if (current != Section::kNone) throw ParseError(loc, "objective section must come first");
        sense = s;
      } else if (current == Section::kNone) {
        throw ParseError(loc, "expected an objective section header", {"Minimize", "Maximize"});
      }
      if (sections.count(*h)) throw ParseError(loc, "duplicate section '" + trimmed + "'");
      current = *h;
      sections[current];
      seen_end = current == Section::kEnd;
      if (nl == text.size()) break;
      continue;
    }
    if (current == Section::kNone) {
      throw ParseError(loc, "expected an objective section header", {"Minimize", "Maximize"});
    }
    auto toks = tokenize_line(line, lineno);
    auto& dest = sections[current];
    dest.insert(dest.end(), toks.begin(), toks.end());
    section_end[current] = SourceLoc{lineno, static_cast<int>(line.size()) + 1};
    if (nl == text.size()) break;
  }
  if (!seen_end) throw ParseError(SourceLoc{lineno, 1}, "missing End", {"End"});
  if (sections.count(Section::kGeneral) && !sections[Section::kGeneral].empty()) {
    throw ParseError(sections[Section::kGeneral].front().loc,
                     "general integer variables are not supported");
  }

  // Variable order: Bounds listing first, then first appearance elsewhere.
  std::vector<std::string> order;
  std::map<std::string, int> index;
  auto touch = [&](const std::string& name) {
    auto [it, inserted] = index.emplace(name, static_cast<int>(order.size()));
    if (inserted) order.push_back(name);
    return it->second;
  };
  for (const Token& t : sections[Section::kBounds]) {
    if (t.kind == Token::Kind::kName && lower(t.text) != "free") touch(t.text);
  }

  IlpProblem p;
  p.objective.sense = sense;
  auto var = [&](const Token& t) { return touch(t.text); };

  {
    SectionParser sp(sections[Section::kObjective], section_end[Section::kObjective]);
    sp.skip_label();
    LinearTerm obj = sp.expression(var, false);
    if (!sp.done()) sp.fail("unexpected token in objective");
    p.objective.coeffs = obj.coeffs;
    p.objective.constant = obj.constant;
  }
  std::vector<Row> rows;
  {
    SectionParser sp(sections[Section::kConstraints], section_end[Section::kConstraints]);
    while (!sp.done()) {
      sp.skip_label();
      LinearTerm lhs = sp.expression(var, true);
      Relation rel = sp.relation();
      double rhs = sp.signed_number();
      Row row;
      row.coeffs = lhs.coeffs;
      row.rel = rel;
      row.rhs = rhs - lhs.constant;
      rows.push_back(std::move(row));
    }
  }
  std::map<int, std::pair<double, double>> bounds;
  {
    SectionParser sp(sections[Section::kBounds], section_end[Section::kBounds]);
    auto name = [&]() -> int {
      auto t = sp.peek();
      if (!t || t->kind != Token::Kind::kName) sp.fail("expected a variable name", {"variable"});
      return touch(sp.next().text);
    };
    while (!sp.done()) {
      const Token* t = sp.peek();
      if (t->kind == Token::Kind::kName) {
        int v = name();
        auto& b = bounds.try_emplace(v, 0.0, kInfinity).first->second;
        if (auto f = sp.peek(); f && f->kind == Token::Kind::kName && lower(f->text) == "free") {
          sp.next();
          b = {-kInfinity, kInfinity};
          continue;
        }
        Relation rel = sp.relation();
        double value = sp.signed_number();
        if (rel == Relation::kLe) b.second = value;
        if (rel == Relation::kGe) b.first = value;
        if (rel == Relation::kEq) b = {value, value};
      } else {
        double lo = sp.signed_number();
        Relation r1 = sp.relation();
        int v = name();
        auto& b = bounds.try_emplace(v, 0.0, kInfinity).first->second;
        if (r1 == Relation::kLe) b.first = lo;
        if (r1 == Relation::kGe) b.second = lo;
        if (r1 == Relation::kEq) b = {lo, lo};
        if (sp.at_relation()) {
          Relation r2 = sp.relation();
          double hi = sp.signed_number();
          if (r2 == Relation::kLe) b.second = hi;
          if (r2 == Relation::kGe) b.first = hi;
          if (r2 == Relation::kEq) b = {hi, hi};
        }
      }
    }
  }
  std::map<int, bool> binary;
  for (const Token& t : sections[Section::kBinary]) {
    if (t.kind != Token::Kind::kName) throw ParseError(t.loc, "expected a variable name");
    binary[touch(t.text)] = true;
  }

  for (size_t j = 0; j < order.size(); ++j) {
    const std::string& id = order[j];
    const int v = static_cast<int>(j);
    double lo = 0, hi = kInfinity;
    VarKind kind = VarKind::kReal;
    if (binary.count(v)) {
      kind = id.rfind("m_", 0) == 0 ? VarKind::kBinary : VarKind::kAuxBinary;
      hi = 1;
    }
    if (auto it = bounds.find(v); it != bounds.end()) {
      lo = it->second.first;
      hi = binary.count(v) ? std::min(it->second.second, 1.0) : it->second.second;
    }
    p.add_variable(id, kind, lo, hi);
  }
  p.rows = std::move(rows);
  return p;
}

}  // namespace gips
