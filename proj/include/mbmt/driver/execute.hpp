#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mbmt/conformance/strategy.hpp"
#include "mbmt/driver/session.hpp"
#include "mbmt/driver/verdict.hpp"
#include "mbmt/tioa/model.hpp"
#include "mbmt/zones/rational.hpp"

namespace mbmt::driver {

struct ExecutionBounds {
  Rational max_wait{420};
  std::int32_t step_bound = 40;
  // Real time only: a delay the model cannot make is still accepted if the
  // spec could make it minus this much. 0 keeps classification strict.
  Rational latency_allowance{0};
};

struct TraceEntry {
  Rational time;
  std::string event;  // "coin?", "tuna!", "delay 4.5", "terminated"

  bool operator==(const TraceEntry&) const = default;
};

struct TestResult {
  std::string id;
  std::string mutant;  // edit description
  Verdict verdict = Verdict::Inconclusive;
  InconclusiveReason inconclusive = InconclusiveReason::None;
  std::string reason;
  std::vector<TraceEntry> trace;
  bool latency_adjusted = false;
  std::string diagnostics;  // SUT error stream, kept for crashes

  bool operator==(const TestResult&) const = default;
};

// Runs one strategy against a connected SUT. `spec` and `mut` are the
// completed models the strategy was synthesized over.
TestResult execute_test(const conformance::Strategy& strategy, const tioa::Tioa& spec,
                        const tioa::Tioa& mut, SutSession& sut, const ExecutionBounds& bounds);

// The delay the driver asks for while a delay or output-await rule holds:
// a representative point just past the rule's region, or nothing when the
// region never ends. Exposed for testing.
std::optional<Rational> delay_target(const conformance::Strategy& strategy,
                                     const conformance::Rule& rule,
                                     const conformance::StrategyKey& key,
                                     std::span<const Rational> point,
                                     const zones::DelayInterval& divergence);

}  // namespace mbmt::driver
