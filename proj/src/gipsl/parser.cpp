#include <cstdlib>

#include "gips/gipsl/parser.hpp"

namespace gips {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view source) : tokens_(tokenize(source)) {}

  Spec parse_spec() {
    Spec spec;
    while (!at_eof()) {
      const Token& t = peek();
      if (is_word("rule")) {
        spec.rules.push_back(parse_rule());
      } else if (is_word("pattern")) {
        spec.patterns.push_back(parse_pattern());
      } else if (is_word("mapping")) {
        spec.mappings.push_back(parse_mapping());
      } else if (is_word("constraint")) {
        spec.constraints.push_back(parse_constraint());
      } else if (is_word("objective")) {
        spec.objectives.push_back(parse_objective());
      } else if (is_word("global")) {
        if (spec.global_objective) {
          throw ParseError(t.loc, "duplicate global objective");
        }
        spec.global_objective = parse_global();
      } else {
        fail({"'rule'", "'pattern'", "'mapping'", "'constraint'",
              "'objective'", "'global'"});
      }
    }
    if (!spec.global_objective) {
      throw ParseError(peek().loc, "missing global objective");
    }
    return spec;
  }

  ExprPtr parse_standalone_expression() {
    ExprPtr e = parse_expr();
    if (!at_eof()) fail({"end of input"});
    return e;
  }

 private:
  // --- token helpers -------------------------------------------------------

  const Token& peek(size_t ahead = 0) const {
    size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  bool at_eof() const { return peek().kind == TokenKind::kEof; }
  const Token& next() {
    const Token& t = peek();
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool is_punct(std::string_view p, size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == TokenKind::kPunct && t.text == p;
  }
  bool is_word(std::string_view w, size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == TokenKind::kIdent && t.text == w;
  }
  bool accept_punct(std::string_view p) {
    if (!is_punct(p)) return false;
    next();
    return true;
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case TokenKind::kEof:
        return "end of input";
      case TokenKind::kString:
        return "string \"" + t.text + "\"";
      default:
        return "'" + t.text + "'";
    }
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw ParseError(peek().loc, "unexpected " + describe(peek()),
                     std::move(expected));
  }

  const Token& expect_punct(std::string_view p) {
    if (!is_punct(p)) fail({"'" + std::string(p) + "'"});
    return next();
  }
  const Token& expect_word(std::string_view w) {
    if (!is_word(w)) fail({"'" + std::string(w) + "'"});
    return next();
  }
  const Token& expect_ident(const char* what = "identifier") {
    if (peek().kind != TokenKind::kIdent) fail({what});
    return next();
  }

  // --- declarations --------------------------------------------------------

  void parse_pattern_element(Pattern& p) {
    if (is_word("node")) {
      SourceLoc loc = next().loc;
      PatternNode n;
      n.loc = loc;
      n.name = expect_ident("node name").text;
      expect_punct(":");
      n.type = expect_ident("node type").text;
      expect_punct(";");
      p.nodes.push_back(std::move(n));
    } else if (is_word("edge")) {
      SourceLoc loc = next().loc;
      auto [type, src, tgt] = parse_edge_spec();
      p.edges.push_back(PatternEdge{type, src, tgt, loc});
      expect_punct(";");
    } else if (is_word("condition")) {
      const Token& t = next();
      if (p.condition) throw ParseError(t.loc, "duplicate condition");
      p.condition = parse_expr();
      expect_punct(";");
    } else {
      fail({"'node'", "'edge'", "'condition'"});
    }
  }

  std::tuple<std::string, std::string, std::string> parse_edge_spec() {
    std::string src = expect_ident("node name").text;
    expect_punct("-");
    std::string type = expect_ident("edge type").text;
    expect_punct("->");
    std::string tgt = expect_ident("node name").text;
    return {type, src, tgt};
  }

  Pattern parse_pattern() {
    Pattern p;
    p.loc = expect_word("pattern").loc;
    p.name = expect_ident("pattern name").text;
    expect_punct("{");
    while (!accept_punct("}")) {
      if (at_eof()) fail({"'}'"});
      parse_pattern_element(p);
    }
    return p;
  }

  Rule parse_rule() {
    Rule r;
    r.loc = expect_word("rule").loc;
    r.name = expect_ident("rule name").text;
    r.lhs.name = r.name;
    r.lhs.loc = r.loc;
    expect_punct("{");
    while (!accept_punct("}")) {
      if (is_word("node") || is_word("edge") || is_word("condition")) {
        parse_pattern_element(r.lhs);
      } else if (is_word("create") || is_word("delete")) {
        bool create = peek().text == "create";
        SourceLoc loc = next().loc;
        if (accept_word("edge")) {
          auto [type, src, tgt] = parse_edge_spec();
          if (create) {
            r.actions.push_back(CreateEdgeAction{type, src, tgt, loc});
          } else {
            r.actions.push_back(DeleteEdgeAction{type, src, tgt, loc});
          }
        } else if (accept_word("node")) {
          std::string name = expect_ident("node name").text;
          if (create) {
            CreateNodeAction a{name, "", {}, loc};
            expect_punct(":");
            a.type = expect_ident("node type").text;
            if (accept_punct("{")) {
              while (!accept_punct("}")) {
                if (!a.init.empty()) expect_punct(",");
                std::string attr = expect_ident("attribute").text;
                expect_punct(":=");
                a.init.emplace_back(attr, parse_expr());
              }
            }
            r.actions.push_back(std::move(a));
          } else {
            r.actions.push_back(DeleteNodeAction{name, loc});
          }
        } else {
          fail({"'edge'", "'node'"});
        }
        expect_punct(";");
      } else if (is_word("set")) {
        SetAttrAction a;
        a.loc = next().loc;
        a.node = expect_ident("node name").text;
        expect_punct(".");
        a.attribute = expect_ident("attribute").text;
        expect_punct(":=");
        a.value = parse_expr();
        expect_punct(";");
        r.actions.push_back(std::move(a));
      } else {
        fail({"'node'", "'edge'", "'condition'", "'create'", "'delete'",
              "'set'", "'}'"});
      }
    }
    return r;
  }

  bool accept_word(std::string_view w) {
    if (!is_word(w)) return false;
    next();
    return true;
  }

  MappingDecl parse_mapping() {
    MappingDecl m;
    m.loc = expect_word("mapping").loc;
    m.name = expect_ident("mapping name").text;
    expect_word("with");
    m.rule = expect_ident("rule name").text;
    expect_punct(";");
    return m;
  }

  Context parse_context() {
    expect_punct("->");
    Context ctx;
    ctx.loc = peek().loc;
    if (accept_word("class")) {
      ctx.kind = ContextKind::kClass;
    } else if (accept_word("pattern")) {
      ctx.kind = ContextKind::kPattern;
    } else if (accept_word("mapping")) {
      ctx.kind = ContextKind::kMapping;
    } else {
      fail({"'class'", "'pattern'", "'mapping'"});
    }
    expect_punct("::");
    ctx.target = expect_ident("context name").text;
    return ctx;
  }

  ExprPtr parse_block() {
    expect_punct("{");
    ExprPtr e = parse_expr();
    expect_punct("}");
    return e;
  }

  ConstraintDecl parse_constraint() {
    ConstraintDecl c;
    c.loc = expect_word("constraint").loc;
    c.context = parse_context();
    c.body = parse_block();
    return c;
  }

  ObjectiveDecl parse_objective() {
    ObjectiveDecl o;
    o.loc = expect_word("objective").loc;
    o.name = expect_ident("objective name").text;
    o.context = parse_context();
    o.body = parse_block();
    return o;
  }

  GlobalObjectiveDecl parse_global() {
    GlobalObjectiveDecl g;
    g.loc = expect_word("global").loc;
    expect_word("objective");
    expect_punct(":");
    if (accept_word("min") || accept_word("Min")) {
      g.sense = Sense::kMin;
    } else if (accept_word("max") || accept_word("Max")) {
      g.sense = Sense::kMax;
    } else {
      fail({"'min'", "'max'"});
    }
    g.expr = parse_block();
    return g;
  }

  // --- expressions ---------------------------------------------------------
  // or < and < relational < additive < multiplicative < unary < primary

  ExprPtr parse_expr() { return parse_or(); }

  ExprPtr parse_or() {
    ExprPtr lhs = parse_and();
    while (is_punct("|")) {
      SourceLoc loc = next().loc;
      lhs = make_expr(LogicExpr{BoolOp::kOr, lhs, parse_and()}, loc);
    }
    return lhs;
  }

  ExprPtr parse_and() {
    ExprPtr lhs = parse_rel();
    while (is_punct("&")) {
      SourceLoc loc = next().loc;
      lhs = make_expr(LogicExpr{BoolOp::kAnd, lhs, parse_rel()}, loc);
    }
    return lhs;
  }

  std::optional<RelOp> peek_relop() const {
    if (peek().kind != TokenKind::kPunct) return std::nullopt;
    const std::string& t = peek().text;
    if (t == "<") return RelOp::kLt;
    if (t == "<=") return RelOp::kLe;
    if (t == "==") return RelOp::kEq;
    if (t == "!=") return RelOp::kNe;
    if (t == ">=") return RelOp::kGe;
    if (t == ">") return RelOp::kGt;
    return std::nullopt;
  }

  ExprPtr parse_rel() {
    ExprPtr lhs = parse_add();
    while (auto op = peek_relop()) {
      SourceLoc loc = next().loc;
      lhs = make_expr(RelExpr{*op, lhs, parse_add()}, loc);
    }
    return lhs;
  }

  ExprPtr parse_add() {
    ExprPtr lhs = parse_mul();
    while (is_punct("+") || is_punct("-")) {
      ArithOp op = peek().text == "+" ? ArithOp::kAdd : ArithOp::kSub;
      SourceLoc loc = next().loc;
      lhs = make_expr(ArithExpr{op, lhs, parse_mul()}, loc);
    }
    return lhs;
  }

  ExprPtr parse_mul() {
    ExprPtr lhs = parse_unary();
    while (is_punct("*") || is_punct("/")) {
      ArithOp op = peek().text == "*" ? ArithOp::kMul : ArithOp::kDiv;
      SourceLoc loc = next().loc;
      lhs = make_expr(ArithExpr{op, lhs, parse_unary()}, loc);
    }
    return lhs;
  }

  ExprPtr parse_unary() {
    SourceLoc loc = peek().loc;
    if (accept_punct("!")) return make_expr(NotExpr{parse_unary()}, loc);
    if (accept_punct("-")) return make_expr(NegExpr{parse_unary()}, loc);
    for (Func f : {Func::kSin, Func::kCos, Func::kSqrt}) {
      if (is_word(to_string(f)) && !is_punct(".", 1)) {
        next();
        return make_expr(FuncExpr{f, parse_unary()}, loc);
      }
    }
    return parse_primary();
  }

  ExprPtr parse_primary() {
    const Token& t = peek();
    SourceLoc loc = t.loc;
    if (t.kind == TokenKind::kNumber) {
      next();
      bool integral = t.text.find_first_of(".eE") == std::string::npos;
      return make_expr(NumberLit{std::strtod(t.text.c_str(), nullptr), integral},
                       loc);
    }
    if (t.kind == TokenKind::kString) {
      next();
      return make_expr(StringLit{t.text}, loc);
    }
    if (accept_punct("(")) {
      ExprPtr e = parse_expr();
      expect_punct(")");
      return e;
    }
    if (t.kind != TokenKind::kIdent) {
      fail({"number", "identifier", "'('", "'!'", "'-'"});
    }
    if (t.text == "true" || t.text == "True") {
      next();
      return make_expr(BoolLit{true}, loc);
    }
    if (t.text == "false" || t.text == "False") {
      next();
      return make_expr(BoolLit{false}, loc);
    }
    if (t.text == "mappings" && is_punct(".", 1)) return parse_sum();
    return parse_ref();
  }

  ExprPtr parse_sum() {
    SourceLoc loc = next().loc;
    expect_punct(".");
    SumExpr s;
    s.mapping = expect_ident("mapping name").text;
    expect_punct("->");
    if (accept_word("filter")) {
      expect_punct("(");
      s.filter_var = expect_ident("variable").text;
      expect_punct("|");
      s.filter = parse_expr();
      expect_punct(")");
      expect_punct("->");
    }
    if (!is_word("sum")) fail({"'filter'", "'sum'"});
    next();
    expect_punct("(");
    s.sum_var = expect_ident("variable").text;
    expect_punct("|");
    s.body = parse_expr();
    expect_punct(")");
    return make_expr(std::move(s), loc);
  }

  ExprPtr parse_ref() {
    const Token& root = next();
    RefExpr r;
    r.root = root.text;
    if (is_punct(".") && is_word("nodes", 1) && is_punct("(", 2)) {
      next();
      next();
      next();
      expect_punct(")");
      expect_punct(".");
      r.node = expect_ident("pattern node").text;
    }
    if (accept_punct(".")) {
      const Token& member = expect_ident("attribute");
      if (member.text == "value" && is_punct("(")) {
        next();
        expect_punct(")");
        r.value_call = true;
      } else {
        r.attr = member.text;
      }
    }
    return make_expr(std::move(r), root.loc);
  }

  std::vector<Token> tokens_;
  size_t pos_ = 0;
};

}  // namespace

Spec parse_spec(std::string_view source) { return Parser(source).parse_spec(); }

ExprPtr parse_expression(std::string_view source) {
  return Parser(source).parse_standalone_expression();
}

}  // namespace gips
