#pragma once

// Recursive-descent parser for .kmut scripts:
//
//   script    := spacedecl { stmt }
//   spacedecl := "space" ("P" | "H" | "P4xP1")
//   stmt      := "let" IDENT "=" cexpr | "print" eexpr | "assert" eexpr "==" INT
//   cexpr     := term { ("+"|"-") term }
//   term      := [ INT "*" ] prim
//   prim      := IDENT | atom | "(" cexpr ")"
//              | ("lmut"|"rmut") "(" cexpr ";" cexpr { "," cexpr } ")"
//              | "serre" "(" cexpr "," ("+1"|"-1") ")"
//   atom      := "O" "(" INT { "," INT } [ "|" INT ] ")" | "F" "(" INT ")" | "Oe" "(" INT ")"
//   eexpr     := "chi" "(" cexpr "," cexpr ")" | "chiH" "(" cexpr ")" | "chiY" "(" cexpr ")"
//              | "gram" "(" cexpr { "," cexpr } ")" | "exceptional" "(" cexpr { "," cexpr } ")"
//
// Atoms are checked against the declared space, and identifiers must be bound
// by an earlier let.

#include "kmut/frontend/ast.hpp"
#include "kmut/frontend/lexer.hpp"

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace kmut::fe {

namespace detail {

inline bool is_atom_head(std::string_view s) { return s == "O" || s == "F" || s == "Oe"; }

inline std::string describe(const Token& t) {
  switch (t.kind) {
  case TokenKind::eof:
    return "end of input";
  case TokenKind::error:
    return "invalid character '" + t.lexeme + "'";
  default:
    return "'" + t.lexeme + "'";
  }
}

/// Integer value of a literal; a leading '+' is allowed.
inline Integer literal_value(std::string_view lexeme) {
  if (!lexeme.empty() && lexeme.front() == '+')
    lexeme.remove_prefix(1);
  return Integer(std::string(lexeme));
}

class Parser {
public:
  Parser(std::vector<Token> tokens, Span end) : toks_(std::move(tokens)) {
    toks_.push_back(Token{TokenKind::eof, "", end.line, end.column});
  }

  Script script() {
    Script s;
    const Token& kw = peek();
    s.span = span_of(kw);
    expect_keyword("space", "a space declaration 'space P', 'space H' or 'space P4xP1'");
    const Token& name = peek();
    if (name.kind != TokenKind::ident || (name.lexeme != "P" && name.lexeme != "H" && name.lexeme != "P4xP1"))
      fail(name, "unknown space " + describe(name), "P, H or P4xP1");
    space_ = s.space = next().lexeme;
    while (!at_end())
      s.stmts.push_back(stmt());
    return s;
  }

  /// A lone class expression (no statements, no identifiers) on `space`.
  ClassExpr standalone_class(std::string space) {
    space_ = std::move(space);
    ClassExpr e = cexpr();
    if (!at_end())
      fail(peek(), "unexpected " + describe(peek()) + " after expression", "end of input");
    return e;
  }

private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::string space_;
  std::set<std::string> bound_;

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1)
      ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == TokenKind::eof; }
  static Span span_of(const Token& t) { return {t.line, t.column}; }

  [[noreturn]] void fail(const Token& at, const std::string& message, const std::string& hint = {}) const {
    throw ParseError(message, at.line, at.column, hint);
  }

  void check_lexable(const Token& t) const {
    if (t.kind == TokenKind::error)
      fail(t, describe(t), "identifiers and keywords are ASCII");
  }

  void expect_punct(std::string_view p) {
    const Token& t = peek();
    check_lexable(t);
    if (!t.is_punct(p))
      fail(t, "expected '" + std::string(p) + "', found " + describe(t), "'" + std::string(p) + "'");
    next();
  }

  void expect_keyword(std::string_view k, const std::string& hint) {
    const Token& t = peek();
    check_lexable(t);
    if (!t.is_keyword(k))
      fail(t, "expected '" + std::string(k) + "', found " + describe(t), hint);
    next();
  }

  Integer expect_integer(const std::string& what) {
    const Token& t = peek();
    check_lexable(t);
    if (t.kind != TokenKind::integer)
      fail(t, "expected " + what + ", found " + describe(t), "an integer");
    return literal_value(next().lexeme);
  }

  std::int64_t expect_small_integer(const std::string& what) {
    const Token& t = peek();
    Integer v = expect_integer(what);
    if (v > Integer(1'000'000'000) || v < Integer(-1'000'000'000))
      fail(t, what + " " + v.str() + " is out of range", "|value| <= 10^9");
    return static_cast<std::int64_t>(v);
  }

  Stmt stmt() {
    const Token& t = peek();
    check_lexable(t);
    Stmt s;
    s.span = span_of(t);
    if (t.is_keyword("let")) {
      next();
      const Token& name = peek();
      check_lexable(name);
      if (name.kind != TokenKind::ident)
        fail(name, "expected a name after 'let', found " + describe(name), "an identifier");
      if (is_atom_head(name.lexeme) || name.lexeme == "P" || name.lexeme == "H" || name.lexeme == "P4xP1")
        fail(name, "'" + name.lexeme + "' is reserved", "a different identifier");
      s.kind = Stmt::Kind::let;
      s.name = next().lexeme;
      expect_punct("=");
      s.value = cexpr();
      bound_.insert(s.name);
      return s;
    }
    if (t.is_keyword("print")) {
      next();
      s.kind = Stmt::Kind::print;
      s.eval = eexpr();
      return s;
    }
    if (t.is_keyword("assert")) {
      next();
      s.kind = Stmt::Kind::assertion;
      s.eval = eexpr();
      if (s.eval.kind == EvalExpr::Kind::gram)
        fail(t, "gram(...) yields a matrix and cannot be asserted", "chi, chiH, chiY or exceptional");
      expect_punct("==");
      s.expected = expect_integer("the expected value");
      return s;
    }
    fail(t, "expected a statement, found " + describe(t), "let, print or assert");
  }

  EvalExpr eexpr() {
    const Token& t = peek();
    check_lexable(t);
    EvalExpr e;
    e.span = span_of(t);
    auto with_args = [&](EvalExpr::Kind k, std::size_t min_args, std::size_t max_args) {
      e.kind = k;
      next();
      expect_punct("(");
      e.args.push_back(cexpr());
      while (e.args.size() < max_args && peek().is_punct(",")) {
        next();
        e.args.push_back(cexpr());
      }
      if (e.args.size() < min_args)
        expect_punct(",");
      expect_punct(")");
    };
    if (t.is_keyword("chi"))
      with_args(EvalExpr::Kind::chi, 2, 2);
    else if (t.is_keyword("chiH"))
      with_args(EvalExpr::Kind::chiH, 1, 1);
    else if (t.is_keyword("chiY")) {
      if (space_ != "H")
        fail(t, "chiY is only defined on space H", "chi or chiH");
      with_args(EvalExpr::Kind::chiY, 1, 1);
    } else if (t.is_keyword("gram"))
      with_args(EvalExpr::Kind::gram, 1, SIZE_MAX);
    else if (t.is_keyword("exceptional"))
      with_args(EvalExpr::Kind::exceptional, 1, SIZE_MAX);
    else
      fail(t, "expected an evaluation, found " + describe(t), "chi, chiH, chiY, gram or exceptional");
    return e;
  }

  ClassExpr cexpr() {
    Span start = span_of(peek());
    ClassExpr first = term();
    if (!peek().is_punct("+") && !peek().is_punct("-"))
      return first;
    ClassExpr sum;
    sum.kind = ClassExpr::Kind::sum;
    sum.span = start;
    sum.children.push_back(std::move(first));
    sum.signs.push_back(1);
    while (peek().is_punct("+") || peek().is_punct("-")) {
      sum.signs.push_back(next().lexeme == "+" ? 1 : -1);
      sum.children.push_back(term());
    }
    return sum;
  }

  ClassExpr term() {
    const Token& t = peek();
    check_lexable(t);
    if (t.kind != TokenKind::integer)
      return prim();
    ClassExpr e;
    e.kind = ClassExpr::Kind::scale;
    e.span = span_of(t);
    e.coeff = literal_value(next().lexeme);
    expect_punct("*");
    e.children.push_back(prim());
    return e;
  }

  ClassExpr prim() {
    const Token& t = peek();
    check_lexable(t);
    ClassExpr e;
    e.span = span_of(t);
    if (t.is_punct("(")) {
      next();
      ClassExpr inner = cexpr();
      expect_punct(")");
      return inner;
    }
    if (t.is_keyword("lmut") || t.is_keyword("rmut")) {
      e.kind = t.lexeme == "lmut" ? ClassExpr::Kind::lmut : ClassExpr::Kind::rmut;
      next();
      expect_punct("(");
      e.children.push_back(cexpr());
      expect_punct(";");
      e.children.push_back(cexpr());
      while (peek().is_punct(",")) {
        next();
        e.children.push_back(cexpr());
      }
      expect_punct(")");
      return e;
    }
    if (t.is_keyword("serre")) {
      e.kind = ClassExpr::Kind::serre;
      next();
      expect_punct("(");
      e.children.push_back(cexpr());
      expect_punct(",");
      const Token& s = peek();
      Integer v = expect_integer("+1 or -1");
      if (v != 1 && v != -1)
        fail(s, "serre sign must be +1 or -1, found " + v.str(), "+1 or -1");
      e.sign = v == 1 ? 1 : -1;
      expect_punct(")");
      return e;
    }
    if (t.kind == TokenKind::ident && is_atom_head(t.lexeme) && peek(1).is_punct("(")) {
      e.kind = ClassExpr::Kind::atom;
      e.atom = atom();
      return e;
    }
    if (t.kind == TokenKind::ident) {
      if (!bound_.contains(t.lexeme))
        fail(t, "undefined identifier '" + t.lexeme + "'", "a name bound by an earlier let");
      e.kind = ClassExpr::Kind::ident;
      e.name = next().lexeme;
      return e;
    }
    fail(t, "expected a class expression, found " + describe(t), "an atom, identifier, '(' or lmut/rmut/serre");
  }

  AtomLit atom() {
    const Token& head = next();
    AtomLit a;
    a.kind = head.lexeme == "O" ? AtomKind::line : head.lexeme == "F" ? AtomKind::fiber : AtomKind::exceptional_divisor;
    expect_punct("(");
    a.degrees.push_back(expect_small_integer("a degree"));
    while (peek().is_punct(",")) {
      next();
      a.degrees.push_back(expect_small_integer("a degree"));
    }
    if (peek().is_punct("|")) {
      const Token& bar = next();
      if (a.kind != AtomKind::line || space_ == "P4xP1")
        fail(bar, "'|' twist is not allowed here", "')'");
      a.z = expect_small_integer("an exceptional twist");
    }
    expect_punct(")");
    type_check(head, a);
    return a;
  }

  void type_check(const Token& head, const AtomLit& a) const {
    switch (a.kind) {
    case AtomKind::line: {
      std::size_t want = space_ == "P" ? 1 : 2;
      if (a.degrees.size() != want)
        fail(head, "O(...) on space " + space_ + " takes " + std::to_string(want) + " degree" +
                       (want == 1 ? "" : "s") + ", found " + std::to_string(a.degrees.size()),
             want == 1 ? "O(x) or O(x|z)" : (space_ == "H" ? "O(x,y) or O(x,y|z)" : "O(x,y)"));
      break;
    }
    case AtomKind::fiber:
      if (space_ != "H")
        fail(head, "fiber sheaves F(d) exist only on space H");
      if (a.degrees.size() != 1)
        fail(head, "F(...) takes one degree", "F(d)");
      break;
    case AtomKind::exceptional_divisor:
      if (space_ == "P4xP1")
        fail(head, "Oe(k) needs an exceptional divisor; space P4xP1 has none");
      if (a.degrees.size() != 1)
        fail(head, "Oe(...) takes one twist", "Oe(k)");
      break;
    }
  }
};

/// Position just past the end of `src`, counting code points.
inline Span end_of(std::string_view src) {
  Span s{1, 1};
  for (unsigned char c : src) {
    if (c == '\n') {
      ++s.line;
      s.column = 1;
    } else if ((c & 0xC0) != 0x80) {
      ++s.column;
    }
  }
  return s;
}

} // namespace detail

/// Parses a token stream. Errors at end of input point just past the last token.
inline Script parse(const std::vector<Token>& tokens) {
  Span end{1, 1};
  if (!tokens.empty())
    end = {tokens.back().line, tokens.back().column + static_cast<int>(tokens.back().lexeme.size())};
  return detail::Parser(tokens, end).script();
}

inline Script parse_source(std::string_view src) {
  return detail::Parser(tokenize(src), detail::end_of(src)).script();
}

/// One class expression on `space` ("P", "H" or "P4xP1"), as used by `kmut chi`.
inline ClassExpr parse_class_expr(std::string_view src, const std::string& space) {
  return detail::Parser(tokenize(src), detail::end_of(src)).standalone_class(space);
}

} // namespace kmut::fe
