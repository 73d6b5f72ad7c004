#pragma once

// Command-line front end. Exit codes: 0 everything passed, 1 an assertion or
// scenario failed, 2 usage or parse error, 3 math error.

#include "kmut/frontend/chow_expr.hpp"
#include "kmut/frontend/evaluator.hpp"
#include "kmut/frontend/parser.hpp"
#include "kmut/frontend/report.hpp"
#include "kmut/scenarios.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace kmut::fe {

enum ExitCode : int { exit_ok = 0, exit_fail = 1, exit_usage = 2, exit_math = 3 };

namespace detail {

inline std::string source_line(std::string_view src, int line) {
  int current = 1;
  std::size_t start = 0;
  for (std::size_t i = 0; i < src.size() && current < line; ++i)
    if (src[i] == '\n') {
      ++current;
      start = i + 1;
    }
  if (current != line)
    return {};
  std::size_t end = src.find('\n', start);
  return std::string(src.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
}

/// "file:line:col: error: message", the offending line and a caret.
inline void report_parse_error(std::ostream& err, const std::string& where, std::string_view src,
                               const ParseError& e) {
  err << where << ":" << e.line() << ":" << e.column() << ": error: " << e.message();
  if (!e.hint().empty())
    err << " (expected " << e.hint() << ")";
  err << "\n";
  std::string text = source_line(src, e.line());
  if (!text.empty() || e.line() == 1) {
    err << "  " << text << "\n  ";
    // Columns count code points; pad with the same number of spaces.
    for (int i = 1; i < e.column(); ++i)
      err << ' ';
    err << "^\n";
  }
}

inline bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

inline std::string rational_text(const Rational& q) { return kmut::to_string(q); }

inline int cmd_verify(const std::string& filter, bool as_json, bool verbose, unsigned threads, std::ostream& out,
               std::ostream& err) {
  auto reports = scen::run_all(filter, threads);
  if (reports.empty()) {
    err << "verify: no scenario id starts with '" << filter << "'\n";
    return exit_usage;
  }
  if (as_json)
    out << scenarios_json(reports).dump(2) << "\n";
  else
    out << scenarios_text(reports, verbose);
  Summary s = summarize(reports);
  return s.error ? exit_math : s.fail ? exit_fail : exit_ok;
}

inline int cmd_run(const std::string& path, bool as_json, bool trace, std::ostream& out, std::ostream& err) {
  std::string src;
  if (!read_file(path, src)) {
    err << "run: cannot read " << path << "\n";
    return exit_usage;
  }
  Script script;
  try {
    script = parse_source(src);
  } catch (const ParseError& e) {
    report_parse_error(err, path, src, e);
    return exit_usage;
  }
  EvalReport report = evaluate(script);
  if (as_json) {
    for (const auto& line : report.output)
      err << line << "\n";
    out << run_json(path, report, trace).dump(2) << "\n";
  } else {
    out << run_text(path, report, trace);
  }
  if (report.error) {
    err << path << ":" << report.error->span.str() << ": runtime error: " << report.error->message << "\n";
    std::string text = source_line(src, report.error->span.line);
    if (!text.empty())
      err << "  " << text << "\n  " << std::string(static_cast<std::size_t>(report.error->span.column - 1), ' ')
          << "^\n";
    return exit_math;
  }
  return report.all_passed() ? exit_ok : exit_fail;
}

inline int cmd_fmt(const std::string& path, std::ostream& out, std::ostream& err) {
  std::string src;
  if (!read_file(path, src)) {
    err << "fmt: cannot read " << path << "\n";
    return exit_usage;
  }
  try {
    out << print(parse_source(src));
  } catch (const ParseError& e) {
    report_parse_error(err, path, src, e);
    return exit_usage;
  }
  return exit_ok;
}

inline int cmd_chi(const std::string& space, const std::string& a, const std::string& b, std::ostream& out,
                   std::ostream& err) {
  if (space != "P" && space != "H" && space != "P4xP1") {
    err << "chi: unknown space '" << space << "' (expected P, H or P4xP1)\n";
    return exit_usage;
  }
  ClassExpr ea, eb;
  try {
    ea = parse_class_expr(a, space);
  } catch (const ParseError& e) {
    report_parse_error(err, "argument A", a, e);
    return exit_usage;
  }
  try {
    eb = parse_class_expr(b, space);
  } catch (const ParseError& e) {
    report_parse_error(err, "argument B", b, e);
    return exit_usage;
  }
  out << kt::chi_pair(evaluate_class(ea, space), evaluate_class(eb, space)).str() << "\n";
  return exit_ok;
}

inline int cmd_integrate(const std::string& ring_name, const std::string& expr, std::ostream& out,
                         std::ostream& err) {
  chow::ChowRing ring;
  chow::ChowElement e;
  try {
    ring = parse_ring(ring_name);
    e = parse_chow_element(ring, expr);
  } catch (const ParseError& pe) {
    report_parse_error(err, "expression", expr, pe);
    return exit_usage;
  }
  out << rational_text(chow::integrate(e)) << "\n";
  return exit_ok;
}

inline std::vector<MultiDegree> parse_degrees(const std::vector<std::string>& items, const chow::ChowRing& ring,
                                              std::ostream& err, bool& ok) {
  std::vector<MultiDegree> out;
  ok = true;
  for (const auto& s : items) {
    try {
      out.push_back(parse_degree(s));
    } catch (const ParseError& e) {
      report_parse_error(err, "degree", s, e);
      ok = false;
      return {};
    }
    if (out.back().arity() != ring.arity()) {
      err << "degree '" << s << "' has " << out.back().arity() << " entries, " << ring.name() << " needs "
          << ring.arity() << "\n";
      ok = false;
      return {};
    }
  }
  return out;
}

inline int cmd_euler_ci(const std::string& ring_name, const std::vector<std::string>& degs, std::ostream& out,
                        std::ostream& err) {
  chow::ChowRing ring;
  try {
    ring = parse_ring(ring_name);
  } catch (const ParseError& e) {
    report_parse_error(err, "ring", ring_name, e);
    return exit_usage;
  }
  bool ok = false;
  auto divisors = parse_degrees(degs, ring, err, ok);
  if (!ok)
    return exit_usage;
  out << rational_text(chow::ci_euler(ring, divisors)) << "\n";
  return exit_ok;
}

inline int cmd_porteous(const std::string& ring_name, const std::vector<std::string>& source,
                        const std::vector<std::string>& target, std::int64_t rank, std::ostream& out,
                        std::ostream& err) {
  chow::ChowRing ring;
  try {
    ring = parse_ring(ring_name);
  } catch (const ParseError& e) {
    report_parse_error(err, "ring", ring_name, e);
    return exit_usage;
  }
  bool ok_s = false, ok_t = false;
  auto src = parse_degrees(source, ring, err, ok_s);
  if (!ok_s)
    return exit_usage;
  auto tgt = parse_degrees(target, ring, err, ok_t);
  if (!ok_t)
    return exit_usage;
  auto sum = [&](const std::vector<MultiDegree>& ds) {
    chow::FormalBundle b = chow::trivial(ring, 0);
    for (const auto& d : ds)
      b = chow::direct_sum(b, chow::line_bundle(ring, d));
    return b;
  };
  chow::ChowElement cls = chow::porteous_class(sum(src), sum(tgt), rank);
  const std::int64_t codim = (static_cast<std::int64_t>(src.size()) - rank) * (static_cast<std::int64_t>(tgt.size()) - rank);
  if (codim == ring.dimension())
    out << rational_text(chow::integrate(cls)) << "\n";
  else
    out << cls.str() << "\n";
  return exit_ok;
}

} // namespace detail

/// Runs the CLI on `args` (without the program name).
inline int cli_main(const std::vector<std::string>& args, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  CLI::App app{"K-theory mutation and intersection-theory calculator", "kmut"};
  app.require_subcommand(1);

  std::string filter;
  bool json_out = false, verbose = false, trace = false;
  unsigned threads = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  auto* verify = app.add_subcommand("verify", "run the built-in scenario suite");
  verify->add_option("--filter", filter, "only scenarios whose id starts with PREFIX")->type_name("PREFIX");
  verify->add_flag("--json", json_out, "JSON report on stdout");
  verify->add_flag("-v,--verbose", verbose, "show details for passing scenarios too");
  verify->add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 256u));

  std::string file;
  auto* run = app.add_subcommand("run", "run a .kmut script");
  run->add_option("FILE", file, "script file")->required();
  run->add_flag("--json", json_out, "JSON report on stdout");
  run->add_flag("--trace", trace, "show every mutation step with its chi value");

  auto* fmt = app.add_subcommand("fmt", "print a script in canonical form");
  fmt->add_option("FILE", file, "script file")->required();

  std::string space, a, b;
  auto* chi = app.add_subcommand("chi", "Euler pairing chi(A, B) on a space");
  chi->add_option("SPACE", space, "P, H or P4xP1")->required();
  chi->add_option("A", a, "class expression")->required();
  chi->add_option("B", b, "class expression")->required();

  auto* chow_cmd = app.add_subcommand("chow", "intersection theory on products of projective spaces");
  chow_cmd->require_subcommand(1);
  std::string ring, expr;
  auto* integrate = chow_cmd->add_subcommand("integrate", "degree of a top-dimensional class");
  integrate->add_option("RING", ring, "e.g. P4 or P2xP1")->required();
  integrate->add_option("EXPR", expr, "polynomial in h (or h1, h2, ...)")->required();

  std::vector<std::string> degs;
  auto* euler = chow_cmd->add_subcommand("euler-ci", "Euler characteristic of a complete intersection");
  euler->add_option("RING", ring, "ambient, e.g. P4xP1")->required();
  euler->add_option("D", degs, "divisor multidegrees, e.g. 2,1 3,1")->required();

  std::vector<std::string> source, target;
  std::int64_t rank = 0;
  auto* porteous = chow_cmd->add_subcommand("porteous", "Thom-Porteous class of a map of split bundles");
  porteous->add_option("RING", ring, "e.g. P2")->required();
  porteous->add_option("--source", source, "line bundle degrees of the source")->required();
  porteous->add_option("--target", target, "line bundle degrees of the target")->required();
  porteous->add_option("--rank", rank, "rank bound r")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*verify)
      return detail::cmd_verify(filter, json_out, verbose, threads, out, err);
    if (*run)
      return detail::cmd_run(file, json_out, trace, out, err);
    if (*fmt)
      return detail::cmd_fmt(file, out, err);
    if (*chi)
      return detail::cmd_chi(space, a, b, out, err);
    if (*integrate)
      return detail::cmd_integrate(ring, expr, out, err);
    if (*euler)
      return detail::cmd_euler_ci(ring, degs, out, err);
    if (*porteous)
      return detail::cmd_porteous(ring, source, target, rank, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_math;
  }
  return exit_usage;
}

} // namespace kmut::fe
