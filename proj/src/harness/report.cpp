#include "mbmt/harness/report.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"
#include "rational_text.hpp"

namespace mbmt::harness {

using driver::TestResult;
using driver::Verdict;
using nlohmann::ordered_json;

std::string disposition_name(Disposition d) {
  switch (d) {
    case Disposition::Conforms: return "conforms";
    case Disposition::Nondeterministic: return "nondeterministic";
    case Disposition::EngineError: return "engine-error";
  }
  return "?";
}

namespace {

Disposition parse_disposition(const std::string& text) {
  for (auto d : {Disposition::Conforms, Disposition::Nondeterministic, Disposition::EngineError}) {
    if (disposition_name(d) == text) return d;
  }
  throw std::runtime_error("report: unknown disposition '" + text + "'");
}

std::string trace_text(const TestResult& r) {
  std::string out;
  for (const auto& e : r.trace) {
    if (!out.empty()) out += ", ";
    out += e.event;
  }
  return out;
}

}  // namespace

std::size_t RunReport::count(Disposition d) const {
  return std::count_if(discarded.begin(), discarded.end(),
                       [&](const Discard& x) { return x.disposition == d; });
}

std::size_t RunReport::count(Verdict v) const {
  return std::count_if(tests.begin(), tests.end(),
                       [&](const TestResult& t) { return t.verdict == v; });
}

std::string report_render(const RunReport& report, ReportFormat format) {
  if (format == ReportFormat::Human) {
    const std::vector<std::string> header{"TEST", "MUTANT", "VERDICT", "REASON", "TRACE"};
    std::vector<std::vector<std::string>> rows{header};
    for (const auto& t : report.tests) {
      rows.push_back({t.id, t.mutant, driver::verdict_name(t.verdict), t.reason, trace_text(t)});
    }
    std::vector<std::size_t> width(header.size(), 0);
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    std::ostringstream out;
    for (const auto& row : rows) {
      std::string line;
      for (std::size_t c = 0; c < row.size(); ++c) {
        line += row[c];
        if (c + 1 < row.size()) line += std::string(width[c] - row[c].size() + 2, ' ');
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      out << line << '\n';
    }
    for (const auto& t : report.tests) {
      if (t.diagnostics.empty()) continue;
      out << "\n" << t.id << " stderr:\n";
      std::istringstream lines(t.diagnostics);
      for (std::string l; std::getline(lines, l);) out << "  " << l << '\n';
    }
    return out.str();
  }

  ordered_json j;
  j["format"] = "mbmt-report";
  j["version"] = 1;
  j["plan"] = ordered_json::parse(serialize_plan(report.plan));
  j["mutants"] = report.mutant_count;
  j["conforming"] = report.count(Disposition::Conforms);
  j["nondeterministic"] = report.count(Disposition::Nondeterministic);
  j["engineErrors"] = report.count(Disposition::EngineError);
  j["testCases"] = report.test_case_count();
  ordered_json discarded = ordered_json::array();
  for (const auto& d : report.discarded) {
    discarded.push_back({{"id", d.id},
                         {"mutant", d.mutant},
                         {"disposition", disposition_name(d.disposition)},
                         {"detail", d.detail}});
  }
  j["discarded"] = discarded;
  ordered_json tests = ordered_json::array();
  for (const auto& t : report.tests) {
    ordered_json trace = ordered_json::array();
    for (const auto& e : t.trace) {
      trace.push_back({{"time", detail::rational_text(e.time)}, {"event", e.event}});
    }
    tests.push_back({{"id", t.id},
                     {"mutant", t.mutant},
                     {"verdict", driver::verdict_name(t.verdict)},
                     {"inconclusive", driver::reason_name(t.inconclusive)},
                     {"reason", t.reason},
                     {"trace", trace},
                     {"latencyAdjusted", t.latency_adjusted},
                     {"diagnostics", t.diagnostics}});
  }
  j["tests"] = tests;
  j["timing"] = {{"mutationMs", report.timing.mutation_ms},
                 {"generationMs", report.timing.generation_ms},
                 {"executionMs", report.timing.execution_ms}};
  return j.dump(2) + "\n";
}

RunReport parse_report(std::string_view machine_text) {
  try {
    const ordered_json j = ordered_json::parse(machine_text);
    if (j.at("format") != "mbmt-report" || j.at("version") != 1) {
      throw std::runtime_error("report: not an mbmt-report version 1 document");
    }
    RunReport r;
    r.plan = parse_plan(j.at("plan").dump());
    r.mutant_count = j.at("mutants").get<std::size_t>();
    for (const auto& d : j.at("discarded")) {
      r.discarded.push_back({d.at("id").get<std::string>(), d.at("mutant").get<std::string>(),
                             parse_disposition(d.at("disposition").get<std::string>()),
                             d.at("detail").get<std::string>()});
    }
    for (const auto& t : j.at("tests")) {
      TestResult x;
      x.id = t.at("id").get<std::string>();
      x.mutant = t.at("mutant").get<std::string>();
      const auto verdict = driver::parse_verdict(t.at("verdict").get<std::string>());
      const auto reason = driver::parse_reason(t.at("inconclusive").get<std::string>());
      if (!verdict || !reason) throw std::runtime_error("report: bad verdict in test " + x.id);
      x.verdict = *verdict;
      x.inconclusive = *reason;
      x.reason = t.at("reason").get<std::string>();
      for (const auto& e : t.at("trace")) {
        const auto time = detail::parse_rational_text(e.at("time").get<std::string>());
        if (!time) throw std::runtime_error("report: bad trace time in test " + x.id);
        x.trace.push_back({*time, e.at("event").get<std::string>()});
      }
      x.latency_adjusted = t.at("latencyAdjusted").get<bool>();
      x.diagnostics = t.at("diagnostics").get<std::string>();
      r.tests.push_back(std::move(x));
    }
    const auto& timing = j.at("timing");
    r.timing = {timing.at("mutationMs").get<double>(), timing.at("generationMs").get<double>(),
                timing.at("executionMs").get<double>()};
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("report: ") + e.what());
  }
}

std::string report_summary(const RunReport& r) {
  std::ostringstream out;
  out << r.mutant_count << " mutants: " << r.count(Disposition::Conforms) << " conforming, "
      << r.count(Disposition::Nondeterministic) << " nondeterministic, "
      << r.count(Disposition::EngineError) << " engine errors, " << r.test_case_count()
      << " test cases\n";
  out << r.count(Verdict::Pass) << " pass, " << r.count(Verdict::PrimaryFail) << " primary_fail, "
      << r.count(Verdict::OtherFail) << " other_fail, " << r.count(Verdict::Inconclusive)
      << " inconclusive, " << r.count(Verdict::Crashed) << " crashed\n";
  out << "mutation " << r.timing.mutation_ms << " ms, generation " << r.timing.generation_ms
      << " ms, execution " << r.timing.execution_ms << " ms\n";
  return out.str();
}

int exit_code(const RunReport& r) {
  if (r.count(Verdict::PrimaryFail) + r.count(Verdict::OtherFail) + r.count(Verdict::Crashed) > 0) {
    return 1;
  }
  if (r.count(Disposition::EngineError) > 0) return 3;
  if (r.count(Verdict::Inconclusive) > 0) return 2;
  return 0;
}

}  // namespace mbmt::harness
