#pragma once

// Text and JSON renderings of scenario runs and script evaluations. JSON
// follows {"suite", "results": [{"id","status","expected","actual","ref"}],
// "summary": {"pass","fail","error"}} with keys in that order.

#include "kmut/frontend/evaluator.hpp"
#include "kmut/scenarios.hpp"

#include <json.hpp>

#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace kmut::fe {

using json = nlohmann::ordered_json;

struct Summary {
  int pass = 0;
  int fail = 0;
  int error = 0;

  int total() const { return pass + fail + error; }
  bool ok() const { return fail == 0 && error == 0; }
};

inline Summary summarize(const std::vector<scen::ScenarioReport>& reports) {
  Summary s;
  for (const auto& r : reports) {
    switch (r.status) {
    case scen::Status::pass:
      ++s.pass;
      break;
    case scen::Status::fail:
      ++s.fail;
      break;
    case scen::Status::error:
      ++s.error;
      break;
    }
  }
  return s;
}

inline Summary summarize(const EvalReport& report) {
  Summary s;
  for (const auto& a : report.assertions)
    ++(a.passed ? s.pass : s.fail);
  if (report.error)
    ++s.error;
  return s;
}

/// Integers that fit in 64 bits become JSON numbers, anything else null.
inline json integer_json(const Integer& v) {
  if (v >= Integer(std::numeric_limits<std::int64_t>::min()) && v <= Integer(std::numeric_limits<std::int64_t>::max()))
    return static_cast<std::int64_t>(v);
  return nullptr;
}

inline json value_json(const scen::Value& v) {
  if (const auto* i = std::get_if<Integer>(&v))
    return integer_json(*i);
  return nullptr;
}

inline json summary_json(const Summary& s) { return json{{"pass", s.pass}, {"fail", s.fail}, {"error", s.error}}; }

inline json scenarios_json(const std::vector<scen::ScenarioReport>& reports) {
  json results = json::array();
  for (const auto& r : reports) {
    json item{{"id", r.id},
              {"status", scen::to_string(r.status)},
              {"expected", value_json(r.expected)},
              {"actual", value_json(r.actual)},
              {"ref", r.reference}};
    if (const auto* d = std::get_if<MultiDegree>(&r.expected))
      item["expected_degree"] = d->values();
    if (const auto* d = std::get_if<MultiDegree>(&r.actual))
      item["actual_degree"] = d->values();
    if (r.status != scen::Status::pass && !r.detail.empty())
      item["detail"] = r.detail;
    results.push_back(std::move(item));
  }
  return json{{"suite", "kmut verify"}, {"results", std::move(results)}, {"summary", summary_json(summarize(reports))}};
}

inline std::string scenarios_text(const std::vector<scen::ScenarioReport>& reports, bool verbose = false) {
  std::ostringstream os;
  for (const auto& r : reports) {
    std::string tag = r.status == scen::Status::pass ? "PASS " : r.status == scen::Status::fail ? "FAIL " : "ERROR";
    os << tag << "  " << r.id << "  expected " << scen::value_str(r.expected) << ", actual "
       << scen::value_str(r.actual) << "\n";
    if (verbose || r.status != scen::Status::pass)
      for (const auto& d : r.detail)
        os << "         " << d << "\n";
  }
  Summary s = summarize(reports);
  if (s.ok())
    os << "all scenarios pass (" << s.pass << ")\n";
  else
    os << s.pass << " passed, " << s.fail << " failed, " << s.error << " errors\n";
  return os.str();
}

inline std::string trace_text(const TraceRecord& t) {
  std::ostringstream os;
  os << "trace " << t.span.str() << "  " << t.text << "\n";
  os << "  start  " << t.trace.initial.str() << "\n";
  std::size_t i = 1;
  for (const auto& s : t.trace.steps) {
    os << "  " << i++ << ". " << mut::to_string(s.direction);
    if (s.direction == mut::Direction::serre)
      os << (s.sign > 0 ? " (x) K" : " (x) K^-1");
    else
      os << " past " << s.mutator.str() << "  chi = " << s.chi.str();
    os << "\n";
  }
  os << "  result " << t.trace.final.str() << "\n";
  return os.str();
}

inline json trace_json(const TraceRecord& t) {
  json steps = json::array();
  for (const auto& s : t.trace.steps) {
    json step{{"direction", mut::to_string(s.direction)}};
    if (s.direction == mut::Direction::serre)
      step["sign"] = s.sign;
    else {
      step["mutator"] = s.mutator.str();
      step["chi"] = integer_json(s.chi);
    }
    steps.push_back(std::move(step));
  }
  return json{{"at", t.span.str()},
              {"expr", t.text},
              {"initial", t.trace.initial.str()},
              {"steps", std::move(steps)},
              {"final", t.trace.final.str()}};
}

inline json run_json(const std::string& suite, const EvalReport& report, bool with_traces) {
  json results = json::array();
  for (const auto& a : report.assertions)
    results.push_back(json{{"id", "assert:" + a.span.str()},
                           {"status", a.passed ? "pass" : "fail"},
                           {"expected", integer_json(a.expected)},
                           {"actual", integer_json(a.actual)},
                           {"ref", a.text}});
  if (report.error)
    results.push_back(json{{"id", "error:" + report.error->span.str()},
                           {"status", "error"},
                           {"expected", nullptr},
                           {"actual", nullptr},
                           {"ref", report.error->message}});
  json out{{"suite", suite}, {"results", std::move(results)}, {"summary", summary_json(summarize(report))}};
  if (with_traces) {
    json traces = json::array();
    for (const auto& t : report.traces)
      traces.push_back(trace_json(t));
    out["traces"] = std::move(traces);
  }
  return out;
}

inline std::string run_text(const std::string& file, const EvalReport& report, bool with_traces) {
  std::ostringstream os;
  for (const auto& line : report.output)
    os << line << "\n";
  if (with_traces)
    for (const auto& t : report.traces)
      os << trace_text(t);
  for (const auto& a : report.assertions)
    if (!a.passed)
      os << file << ":" << a.span.str() << ": assertion failed: " << a.text << " (actual " << a.actual.str()
         << ")\n";
  Summary s = summarize(report);
  os << s.pass << "/" << report.assertions.size() << " assertions pass\n";
  return os.str();
}

} // namespace kmut::fe
