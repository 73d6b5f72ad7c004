#include "kmut/frontend/evaluator.hpp"
#include "kmut/frontend/parser.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace kmut;
using namespace kmut::fe;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::filesystem::path> shipped_scripts() {
  std::vector<std::filesystem::path> out;
  for (const char* name : {"route_left", "route_right", "hom_table", "sod_checks"})
    out.push_back(std::filesystem::path(KMUT_SCRIPTS_DIR) / (std::string(name) + ".kmut"));
  return out;
}

ParseError parse_error_of(std::string_view src) {
  try {
    parse_source(src);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error for: " << src;
  return ParseError("none", 0, 0);
}

} // namespace

// Lexer.

TEST(Lexer, AtomWithNegativeTwist) {
  auto t = tokenize("O(2,1|-1)");
  std::vector<std::string> lexemes;
  for (const auto& tok : t)
    lexemes.push_back(tok.lexeme);
  EXPECT_EQ(lexemes, (std::vector<std::string>{"O", "(", "2", ",", "1", "|", "-1", ")"}));
  EXPECT_EQ(t[0].kind, TokenKind::ident);
  EXPECT_EQ(t[6].kind, TokenKind::integer);
  EXPECT_EQ(t[6].column, 7);
}

TEST(Lexer, CommentOnlyIsEmpty) { EXPECT_TRUE(tokenize("# comment\n").empty()); }

TEST(Lexer, MinusAfterOperandIsPunct) {
  auto t = tokenize("a -1*b");
  ASSERT_EQ(t.size(), 5u);
  EXPECT_TRUE(t[1].is_punct("-"));
  EXPECT_EQ(t[2].kind, TokenKind::integer);
}

TEST(Lexer, PositionsAreOneBased) {
  auto t = tokenize("space H\n  let x");
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t[2].line, 2);
  EXPECT_EQ(t[2].column, 3);
  EXPECT_EQ(t[0].kind, TokenKind::keyword);
}

TEST(Lexer, NonAsciiIsOneErrorToken) {
  auto t = tokenize("let \xCE\xBE = 1");
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t[1].kind, TokenKind::error);
  EXPECT_EQ(t[1].lexeme, "\xCE\xBE");
  EXPECT_EQ(t[2].column, 7);
}

// Parser.

TEST(Parser, AssertStatement) {
  auto s = parse_source("space H\nlet c = F(0)\nassert chiY(c) == -137\n");
  ASSERT_EQ(s.stmts.size(), 2u);
  EXPECT_EQ(s.stmts[1].kind, Stmt::Kind::assertion);
  EXPECT_EQ(s.stmts[1].eval.kind, EvalExpr::Kind::chiY);
  EXPECT_EQ(s.stmts[1].expected, -137);
  EXPECT_EQ(s.stmts[1].span.line, 3);
}

TEST(Parser, MissingMutatorList) {
  auto e = parse_error_of("space H\nlet c = F(0)\nlet d = lmut(c)\n");
  EXPECT_EQ(e.message(), "expected ';', found ')'");
  EXPECT_EQ(e.line(), 3);
  EXPECT_EQ(e.column(), 15);
  EXPECT_EQ(e.hint(), "';'");
}

TEST(Parser, NonAsciiIdentifier) {
  auto e = parse_error_of("space H\nlet \xCE\xBE = F(0)");
  EXPECT_EQ(e.line(), 2);
  EXPECT_EQ(e.column(), 5);
  EXPECT_NE(e.message().find("invalid character"), std::string::npos);
  EXPECT_EQ(parse_error_of("let \xCE\xBE").line(), 1);
}

TEST(Parser, AtomArityIsCheckedAgainstTheSpace) {
  EXPECT_NO_THROW(parse_source("space P\nprint chiH(O(1|-1))"));
  EXPECT_NO_THROW(parse_source("space P4xP1\nprint chiH(O(1,1))"));
  auto e = parse_error_of("space P\nprint chiH(O(1,1))");
  EXPECT_EQ(e.line(), 2);
  EXPECT_EQ(e.column(), 12);
  EXPECT_EQ(parse_error_of("space P4xP1\nprint chiH(O(1,1|1))").column(), 17);
  EXPECT_EQ(parse_error_of("space P\nprint chiH(F(0))").column(), 12);
  EXPECT_EQ(parse_error_of("space P4xP1\nprint chiH(Oe(0))").column(), 12);
  EXPECT_EQ(parse_error_of("space P\nprint chiY(O(0))").column(), 7);
}

TEST(Parser, PositionedErrors) {
  struct Case {
    const char* src;
    int line, column;
  };
  for (auto c : std::vector<Case>{{"", 1, 1},
                                   {"space Q", 1, 7},
                                   {"space H\nlet = F(0)", 2, 5},
                                   {"space H\nprint chi(F(0))", 2, 15},
                                   {"space H\nprint chi(F(0), O(0,0)", 2, 23},
                                   {"space H\nassert chiH(F(0)) = 1", 2, 19},
                                   {"space H\nassert chiH(F(0))", 2, 18},
                                   {"space H\nprint chiH(x)", 2, 12},
                                   {"space H\nprint chiH(serre(F(0), 2))", 2, 24},
                                   {"space H\nprint chiH(3 O(0,0))", 2, 14},
                                   {"space H\nprint chiH(O(0,0) $ O(1,0))", 2, 19},
                                   {"space H\nlet O = F(0)", 2, 5},
                                   {"space H\nassert gram(F(0)) == 1", 2, 1},
                                   {"space H\nchi(F(0), F(0))", 2, 1}}) {
    auto e = parse_error_of(c.src);
    EXPECT_EQ(e.line(), c.line) << c.src << " -> " << e.what();
    EXPECT_EQ(e.column(), c.column) << c.src << " -> " << e.what();
  }
}

TEST(Parser, SignsAndScales) {
  auto s = parse_source("space H\nlet a = F(0) + 5*O(1,0) - 10*O(0,0) - O(2,0)\nlet b = -2*a");
  const auto& sum = s.stmts[0].value;
  ASSERT_EQ(sum.kind, ClassExpr::Kind::sum);
  EXPECT_EQ(sum.signs, (std::vector<int>{1, 1, -1, -1}));
  EXPECT_EQ(sum.children[1].coeff, 5);
  EXPECT_EQ(s.stmts[1].value.coeff, -2);
}

// Printer round trip.

TEST(RoundTrip, ShippedScripts) {
  for (const auto& p : shipped_scripts()) {
    Script first = parse_source(slurp(p));
    std::string canonical = print(first);
    Script second = parse_source(canonical);
    EXPECT_EQ(first, second) << p;
    EXPECT_EQ(print(second), canonical) << p;
  }
}

TEST(RoundTrip, ParenthesesArePreservedWhereNeeded) {
  auto s = parse_source("space H\nlet a = F(0) - (O(1,0) - O(0,0))\nlet b = 2*(a + a)\nlet c = 3*(2*a)");
  EXPECT_EQ(print(s), "space H\nlet a = F(0) - (O(1,0) - O(0,0))\nlet b = 2*(a + a)\nlet c = 3*(2*a)\n");
}

namespace {

class AstFuzzer {
public:
  explicit AstFuzzer(std::uint32_t seed) : rng_(seed) {}

  Script script() {
    Script s;
    const char* spaces[] = {"P", "H", "P4xP1"};
    s.space = spaces[pick(0, 2)];
    bound_.clear();
    int n = pick(1, 8);
    for (int i = 0; i < n; ++i) {
      Stmt st;
      int kind = bound_.empty() ? 0 : pick(0, 2);
      if (kind == 0) {
        st.kind = Stmt::Kind::let;
        st.name = "v" + std::to_string(i);
        st.value = cexpr(s.space, 3);
        bound_.push_back(st.name);
      } else {
        st.kind = kind == 1 ? Stmt::Kind::print : Stmt::Kind::assertion;
        st.eval = eexpr(s.space, st.kind == Stmt::Kind::assertion);
        st.expected = pick(-500, 500);
      }
      if (st.kind != Stmt::Kind::assertion)
        st.expected = 0;
      s.stmts.push_back(std::move(st));
    }
    return s;
  }

private:
  std::mt19937 rng_;
  std::vector<std::string> bound_;

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  AtomLit atom(const std::string& space) {
    AtomLit a;
    int k = pick(0, 5);
    if (space == "H" && k == 4) {
      a.kind = AtomKind::fiber;
      a.degrees = {pick(-9, 9)};
    } else if (space != "P4xP1" && k == 5) {
      a.kind = AtomKind::exceptional_divisor;
      a.degrees = {pick(-9, 9)};
    } else {
      a.kind = AtomKind::line;
      a.degrees.push_back(pick(-9, 9));
      if (space != "P")
        a.degrees.push_back(pick(-9, 9));
      if (space != "P4xP1" && pick(0, 1))
        a.z = pick(-9, 9);
    }
    return a;
  }

  ClassExpr cexpr(const std::string& space, int depth) {
    ClassExpr e;
    int k = depth <= 0 ? pick(0, 1) : pick(0, 6);
    if (k == 0 && !bound_.empty()) {
      e.kind = ClassExpr::Kind::ident;
      e.name = bound_[pick(0, static_cast<int>(bound_.size()) - 1)];
      return e;
    }
    if (k <= 1) {
      e.kind = ClassExpr::Kind::atom;
      e.atom = atom(space);
      return e;
    }
    switch (k) {
    case 2: {
      e.kind = ClassExpr::Kind::sum;
      int n = pick(2, 4);
      for (int i = 0; i < n; ++i) {
        e.children.push_back(cexpr(space, depth - 1));
        e.signs.push_back(i == 0 ? 1 : (pick(0, 1) ? 1 : -1));
      }
      break;
    }
    case 3:
      e.kind = ClassExpr::Kind::scale;
      e.coeff = pick(-20, 20);
      e.children.push_back(cexpr(space, depth - 1));
      break;
    case 4:
    case 5: {
      e.kind = k == 4 ? ClassExpr::Kind::lmut : ClassExpr::Kind::rmut;
      int n = pick(2, 4);
      for (int i = 0; i < n; ++i)
        e.children.push_back(cexpr(space, depth - 1));
      break;
    }
    default:
      e.kind = ClassExpr::Kind::serre;
      e.sign = pick(0, 1) ? 1 : -1;
      e.children.push_back(cexpr(space, depth - 1));
    }
    return e;
  }

  EvalExpr eexpr(const std::string& space, bool asserted) {
    EvalExpr e;
    int k = pick(0, asserted ? 3 : 4);
    EvalExpr::Kind kinds[] = {EvalExpr::Kind::chi, EvalExpr::Kind::chiH, EvalExpr::Kind::exceptional,
                              EvalExpr::Kind::chiY, EvalExpr::Kind::gram};
    e.kind = kinds[k];
    if (e.kind == EvalExpr::Kind::chiY && space != "H")
      e.kind = EvalExpr::Kind::chiH;
    std::size_t n = e.kind == EvalExpr::Kind::chi ? 2
                    : (e.kind == EvalExpr::Kind::chiH || e.kind == EvalExpr::Kind::chiY)
                        ? 1
                        : static_cast<std::size_t>(pick(1, 4));
    for (std::size_t i = 0; i < n; ++i)
      e.args.push_back(cexpr(space, 2));
    return e;
  }
};

} // namespace

TEST(RoundTrip, RandomAsts) {
  AstFuzzer fuzz(7u);
  for (int i = 0; i < 500; ++i) {
    Script s = fuzz.script();
    std::string text = print(s);
    Script back;
    ASSERT_NO_THROW(back = parse_source(text)) << text;
    EXPECT_EQ(back, s) << text;
    EXPECT_EQ(print(back), text);
  }
}

// Evaluator.

TEST(Evaluator, ShippedRouteLeft) {
  auto report = evaluate(parse_source(slurp(shipped_scripts()[0])));
  EXPECT_FALSE(report.error);
  ASSERT_FALSE(report.output.empty());
  EXPECT_EQ(report.output.back(), "-137");
  EXPECT_TRUE(report.all_passed());
  EXPECT_EQ(report.traces.size(), 3u);
}

TEST(Evaluator, AllShippedScriptsPass) {
  for (const auto& p : shipped_scripts()) {
    auto report = evaluate(parse_source(slurp(p)));
    EXPECT_TRUE(report.all_passed()) << p;
    EXPECT_FALSE(report.assertions.empty()) << p;
  }
}

TEST(Evaluator, HomOfLineBundles) {
  auto report = evaluate(parse_source("space H\nassert chi(O(0,0), O(1,0)) == 6\n"));
  ASSERT_EQ(report.assertions.size(), 1u);
  EXPECT_TRUE(report.assertions[0].passed);
}

TEST(Evaluator, FailedAssertContinues) {
  auto report = evaluate(parse_source("space H\nassert chiH(O(0,0)) == 2\nprint chiH(O(1,0))\n"));
  ASSERT_EQ(report.assertions.size(), 1u);
  EXPECT_FALSE(report.assertions[0].passed);
  EXPECT_EQ(report.assertions[0].actual, 1);
  EXPECT_EQ(report.output, (std::vector<std::string>{"6"}));
  EXPECT_FALSE(report.all_passed());
}

TEST(Evaluator, FiberPairingIsARuntimeError) {
  auto report = evaluate(parse_source("space H\nprint chi(O(0,0), O(0,0))\nprint chi(F(0), F(1))\nprint chiH(F(0))\n"));
  ASSERT_TRUE(report.error);
  EXPECT_EQ(report.error->span.line, 3);
  EXPECT_EQ(report.error->span.column, 7);
  EXPECT_EQ(report.output, (std::vector<std::string>{"1"}));
}

TEST(Evaluator, MutationErrorPointsAtTheMutator) {
  auto report = evaluate(parse_source("space H\nlet x = lmut(F(0); O(0,0), F(1))\n"));
  ASSERT_TRUE(report.error);
  EXPECT_EQ(report.error->span.line, 2);
  EXPECT_EQ(report.error->span.column, 28);
  EXPECT_NE(report.error->message.find("step 2"), std::string::npos);
}

TEST(Evaluator, GramAndExceptional) {
  auto report = evaluate(parse_source("space H\nprint gram(O(0,0), O(1,0))\nassert exceptional(O(1,0), O(0,0)) == 0"));
  EXPECT_EQ(report.output, (std::vector<std::string>{"1 6", "0 1"}));
  EXPECT_TRUE(report.all_passed());
}

TEST(Evaluator, ExceptionalDivisorOnP) {
  auto report = evaluate(parse_source("space P\nassert chi(Oe(0), Oe(0)) == 1\nassert chiH(O(1|-1)) == 5"));
  EXPECT_TRUE(report.all_passed());
}

TEST(Evaluator, StandaloneClass) {
  auto c = evaluate_class(parse_class_expr("O(2,1|-1)", "H"), "H");
  EXPECT_EQ(c, kt::KClass::display(kt::spaces::H(), {2, 1}, -1));
  EXPECT_THROW(parse_class_expr("x", "H"), ParseError);
  EXPECT_THROW(parse_class_expr("O(0,0) O(1,0)", "H"), ParseError);
}
