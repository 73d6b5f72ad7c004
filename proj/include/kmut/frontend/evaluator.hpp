#pragma once

// Executes a parsed script. Statements run in order; a failed assert is
// recorded and execution continues, a math error stops the run and carries
// the span of the innermost expression that raised it.

#include "kmut/errors.hpp"
#include "kmut/frontend/ast.hpp"
#include "kmut/ktheory.hpp"
#include "kmut/mutation.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kmut::fe {

struct AssertionResult {
  Span span;
  std::string text; // canonical statement text
  Integer expected = 0;
  Integer actual = 0;
  bool passed = false;
};

struct TraceRecord {
  Span span;
  std::string text;
  mut::MutationTrace trace;
};

struct RuntimeError {
  Span span;
  std::string message;
};

struct EvalReport {
  std::vector<std::string> output;
  std::vector<AssertionResult> assertions;
  std::vector<TraceRecord> traces;
  std::optional<RuntimeError> error;

  bool all_passed() const {
    if (error)
      return false;
    for (const auto& a : assertions)
      if (!a.passed)
        return false;
    return true;
  }
};

inline kt::SpacePtr space_by_name(const std::string& name) {
  if (name == "P")
    return kt::spaces::P();
  if (name == "H")
    return kt::spaces::H();
  if (name == "P4xP1")
    return kt::spaces::P4xP1();
  throw std::invalid_argument("unknown space " + name);
}

namespace detail {

/// A math failure already pinned to a source span.
struct located_error {
  Span span;
  std::string message;
};

class Evaluator {
public:
  Evaluator(kt::SpacePtr space, EvalReport& report) : space_(std::move(space)), report_(report) {}

  void bind(const std::string& name, kt::KClass value) { env_[name] = std::move(value); }

  kt::KClass eval(const ClassExpr& e) {
    try {
      return eval_unchecked(e);
    } catch (const located_error&) {
      throw;
    } catch (const sequence_error& ex) {
      // Point at the mutator of the failing step when there is one.
      Span at = e.span;
      if ((e.kind == ClassExpr::Kind::lmut || e.kind == ClassExpr::Kind::rmut) && ex.step() + 1 < e.children.size())
        at = e.children[ex.step() + 1].span;
      throw located_error{at, ex.what()};
    } catch (const std::exception& ex) {
      throw located_error{e.span, ex.what()};
    }
  }

  /// Value of an eval expression; gram is reported separately through `rows`.
  Integer eval(const EvalExpr& e, std::vector<std::string>* rows = nullptr) {
    std::vector<kt::KClass> args;
    for (const auto& a : e.args)
      args.push_back(eval(a));
    try {
      switch (e.kind) {
      case EvalExpr::Kind::chi:
        return kt::chi_pair(args.at(0), args.at(1));
      case EvalExpr::Kind::chiH:
        return kt::chi(args.at(0));
      case EvalExpr::Kind::chiY:
        return kt::euler_on_Y(args.at(0));
      case EvalExpr::Kind::gram: {
        auto g = mut::gram_matrix(args);
        if (rows)
          for (const auto& row : g) {
            std::string line;
            for (std::size_t j = 0; j < row.size(); ++j)
              line += (j ? " " : "") + row[j].str();
            rows->push_back(line);
          }
        return 0;
      }
      case EvalExpr::Kind::exceptional: {
        auto rep = mut::check_exceptional_sequence(args);
        if (rows) {
          rows->push_back(rep.verdict());
          for (const auto& o : rep.offenses)
            rows->push_back("  chi(E" + std::to_string(o.row + 1) + ", E" + std::to_string(o.col + 1) +
                            ") = " + o.chi.str());
        }
        return rep.pass ? 1 : 0;
      }
      }
    } catch (const std::exception& ex) {
      throw located_error{e.span, ex.what()};
    }
    return 0;
  }

private:
  kt::SpacePtr space_;
  EvalReport& report_;
  std::map<std::string, kt::KClass> env_;

  kt::KClass atom(const AtomLit& a) const {
    switch (a.kind) {
    case AtomKind::line:
      return kt::KClass::display(space_, MultiDegree(a.degrees), a.z.value_or(0));
    case AtomKind::fiber:
      return kt::KClass::fiber(space_, a.degrees.at(0));
    case AtomKind::exceptional_divisor:
      return kt::exc_div_class(space_, a.degrees.at(0));
    }
    return kt::KClass(space_);
  }

  kt::KClass eval_unchecked(const ClassExpr& e) {
    switch (e.kind) {
    case ClassExpr::Kind::ident: {
      auto it = env_.find(e.name);
      if (it == env_.end())
        throw std::invalid_argument("undefined identifier '" + e.name + "'");
      return it->second;
    }
    case ClassExpr::Kind::atom:
      return atom(e.atom);
    case ClassExpr::Kind::sum: {
      kt::KClass acc(space_);
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        kt::KClass t = eval(e.children[i]);
        acc = e.signs[i] < 0 ? acc - t : acc + t;
      }
      return acc;
    }
    case ClassExpr::Kind::scale:
      return e.coeff * eval(e.children.at(0));
    case ClassExpr::Kind::lmut:
    case ClassExpr::Kind::rmut: {
      kt::KClass target = eval(e.children.at(0));
      std::vector<mut::StepSpec> steps;
      for (std::size_t i = 1; i < e.children.size(); ++i) {
        kt::KClass m = eval(e.children[i]);
        steps.push_back(e.kind == ClassExpr::Kind::lmut ? mut::StepSpec::left(std::move(m))
                                                        : mut::StepSpec::right(std::move(m)));
      }
      auto trace = mut::run_sequence(target, steps);
      kt::KClass result = trace.final;
      report_.traces.push_back({e.span, print(e), std::move(trace)});
      return result;
    }
    case ClassExpr::Kind::serre: {
      auto trace = mut::run_sequence(eval(e.children.at(0)), {mut::StepSpec::serre(e.sign)});
      kt::KClass result = trace.final;
      report_.traces.push_back({e.span, print(e), std::move(trace)});
      return result;
    }
    }
    return kt::KClass(space_);
  }
};

} // namespace detail

inline EvalReport evaluate(const Script& script) {
  EvalReport report;
  detail::Evaluator ev(space_by_name(script.space), report);
  for (const auto& s : script.stmts) {
    try {
      switch (s.kind) {
      case Stmt::Kind::let:
        ev.bind(s.name, ev.eval(s.value));
        break;
      case Stmt::Kind::print: {
        std::vector<std::string> rows;
        Integer v = ev.eval(s.eval, &rows);
        if (s.eval.kind == EvalExpr::Kind::gram || s.eval.kind == EvalExpr::Kind::exceptional) {
          if (s.eval.kind == EvalExpr::Kind::exceptional)
            rows.front() = v.str() + "  " + rows.front();
          report.output.insert(report.output.end(), rows.begin(), rows.end());
        } else {
          report.output.push_back(v.str());
        }
        break;
      }
      case Stmt::Kind::assertion: {
        Integer v = ev.eval(s.eval);
        report.assertions.push_back({s.span, print(s), s.expected, v, v == s.expected});
        break;
      }
      }
    } catch (const detail::located_error& e) {
      report.error = RuntimeError{e.span, e.message};
      break;
    }
  }
  return report;
}

/// Evaluates a lone class expression on the given space.
inline kt::KClass evaluate_class(const ClassExpr& e, const std::string& space) {
  EvalReport scratch;
  detail::Evaluator ev(space_by_name(space), scratch);
  try {
    return ev.eval(e);
  } catch (const detail::located_error& err) {
    throw math_error(err.span.str() + ": " + err.message);
  }
}

} // namespace kmut::fe
