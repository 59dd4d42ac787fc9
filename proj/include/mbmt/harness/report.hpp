#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mbmt/driver/execute.hpp"
#include "mbmt/harness/plan.hpp"

namespace mbmt::harness {

// Why a mutant produced no test case.
enum class Disposition { Conforms, Nondeterministic, EngineError };

std::string disposition_name(Disposition d);

struct Discard {
  std::string id;
  std::string mutant;
  Disposition disposition = Disposition::Conforms;
  std::string detail;

  bool operator==(const Discard&) const = default;
};

struct Timing {
  double mutation_ms = 0;
  double generation_ms = 0;
  double execution_ms = 0;

  bool operator==(const Timing&) const = default;
};

struct RunReport {
  TestPlan plan;
  std::size_t mutant_count = 0;
  std::vector<Discard> discarded;
  std::vector<driver::TestResult> tests;
  Timing timing;

  std::size_t count(Disposition d) const;
  std::size_t count(driver::Verdict v) const;
  std::size_t test_case_count() const { return tests.size(); }

  bool operator==(const RunReport&) const = default;
};

enum class ReportFormat { Human, Machine };

// Human: an aligned table of test id, mutant, verdict, reason and trace.
// Machine: JSON with one record per test.
std::string report_render(const RunReport& report, ReportFormat format);
RunReport parse_report(std::string_view machine_text);

// One paragraph of counts for the console.
std::string report_summary(const RunReport& report);

// 0 all pass, 1 any fail or crash, 3 any engine error, 2 inconclusives.
int exit_code(const RunReport& report);

}  // namespace mbmt::harness
