#pragma once

// Syntax tree for .kmut scripts and its canonical printer. Equality ignores
// source spans, so parse(print(ast)) == ast is a meaningful check.

#include "kmut/arith.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kmut::fe {

struct Span {
  int line = 0;
  int column = 0;

  std::string str() const { return std::to_string(line) + ":" + std::to_string(column); }
};

enum class AtomKind { line, fiber, exceptional_divisor };

/// O(x,y|z), F(d) or Oe(k) exactly as written.
struct AtomLit {
  AtomKind kind = AtomKind::line;
  std::vector<std::int64_t> degrees;
  std::optional<std::int64_t> z;

  friend bool operator==(const AtomLit&, const AtomLit&) = default;
};

struct ClassExpr {
  enum class Kind { ident, atom, sum, scale, lmut, rmut, serre };

  Kind kind = Kind::atom;
  Span span;
  std::string name;  // ident
  AtomLit atom;      // atom
  Integer coeff = 0; // scale
  int sign = 0;      // serre: +1 or -1
  // sum: the terms; scale: {operand}; lmut/rmut: {target, mutators...}; serre: {operand}
  std::vector<ClassExpr> children;
  std::vector<int> signs; // sum: +1/-1 per term, first is always +1

  friend bool operator==(const ClassExpr& a, const ClassExpr& b) {
    return a.kind == b.kind && a.name == b.name && a.atom == b.atom && a.coeff == b.coeff && a.sign == b.sign &&
           a.children == b.children && a.signs == b.signs;
  }
};

struct EvalExpr {
  enum class Kind { chi, chiH, chiY, gram, exceptional };

  Kind kind = Kind::chi;
  Span span;
  std::vector<ClassExpr> args;

  friend bool operator==(const EvalExpr& a, const EvalExpr& b) { return a.kind == b.kind && a.args == b.args; }
};

struct Stmt {
  enum class Kind { let, print, assertion };

  Kind kind = Kind::print;
  Span span;
  std::string name; // let
  ClassExpr value;  // let
  EvalExpr eval;    // print, assertion
  Integer expected = 0;

  friend bool operator==(const Stmt& a, const Stmt& b) {
    return a.kind == b.kind && a.name == b.name && a.value == b.value && a.eval == b.eval &&
           a.expected == b.expected;
  }
};

struct Script {
  std::string space; // "P", "H" or "P4xP1"
  Span span;
  std::vector<Stmt> stmts;

  friend bool operator==(const Script& a, const Script& b) { return a.space == b.space && a.stmts == b.stmts; }
};

inline const char* keyword(EvalExpr::Kind k) {
  switch (k) {
  case EvalExpr::Kind::chi:
    return "chi";
  case EvalExpr::Kind::chiH:
    return "chiH";
  case EvalExpr::Kind::chiY:
    return "chiY";
  case EvalExpr::Kind::gram:
    return "gram";
  case EvalExpr::Kind::exceptional:
    return "exceptional";
  }
  return "?";
}

inline std::string print(const AtomLit& a) {
  std::string s;
  switch (a.kind) {
  case AtomKind::line:
    s = "O(";
    break;
  case AtomKind::fiber:
    s = "F(";
    break;
  case AtomKind::exceptional_divisor:
    s = "Oe(";
    break;
  }
  for (std::size_t i = 0; i < a.degrees.size(); ++i)
    s += (i ? "," : "") + std::to_string(a.degrees[i]);
  if (a.z)
    s += "|" + std::to_string(*a.z);
  return s + ")";
}

inline std::string print(const ClassExpr& e);

namespace detail {

inline std::string print_operand(const ClassExpr& e) {
  if (e.kind == ClassExpr::Kind::sum || e.kind == ClassExpr::Kind::scale)
    return "(" + print(e) + ")";
  return print(e);
}

inline std::string print_term(const ClassExpr& e) {
  return e.kind == ClassExpr::Kind::sum ? "(" + print(e) + ")" : print(e);
}

} // namespace detail

inline std::string print(const ClassExpr& e) {
  switch (e.kind) {
  case ClassExpr::Kind::ident:
    return e.name;
  case ClassExpr::Kind::atom:
    return print(e.atom);
  case ClassExpr::Kind::sum: {
    std::string s;
    for (std::size_t i = 0; i < e.children.size(); ++i) {
      if (i)
        s += e.signs[i] < 0 ? " - " : " + ";
      s += detail::print_term(e.children[i]);
    }
    return s;
  }
  case ClassExpr::Kind::scale:
    return e.coeff.str() + "*" + detail::print_operand(e.children.at(0));
  case ClassExpr::Kind::lmut:
  case ClassExpr::Kind::rmut: {
    std::string s = e.kind == ClassExpr::Kind::lmut ? "lmut(" : "rmut(";
    s += print(e.children.at(0)) + "; ";
    for (std::size_t i = 1; i < e.children.size(); ++i)
      s += (i > 1 ? ", " : "") + print(e.children[i]);
    return s + ")";
  }
  case ClassExpr::Kind::serre:
    return "serre(" + print(e.children.at(0)) + ", " + (e.sign > 0 ? "+1" : "-1") + ")";
  }
  return "";
}

inline std::string print(const EvalExpr& e) {
  std::string s = std::string(keyword(e.kind)) + "(";
  for (std::size_t i = 0; i < e.args.size(); ++i)
    s += (i ? ", " : "") + print(e.args[i]);
  return s + ")";
}

inline std::string print(const Stmt& s) {
  switch (s.kind) {
  case Stmt::Kind::let:
    return "let " + s.name + " = " + print(s.value);
  case Stmt::Kind::print:
    return "print " + print(s.eval);
  case Stmt::Kind::assertion:
    return "assert " + print(s.eval) + " == " + s.expected.str();
  }
  return "";
}

/// Canonical text, one statement per line.
inline std::string print(const Script& script) {
  std::string out = "space " + script.space + "\n";
  for (const auto& s : script.stmts)
    out += print(s) + "\n";
  return out;
}

} // namespace kmut::fe
