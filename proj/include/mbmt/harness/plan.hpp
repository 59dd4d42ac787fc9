#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mbmt/driver/session.hpp"
#include "mbmt/mutation/mutation.hpp"
#include "mbmt/zones/rational.hpp"

namespace mbmt::harness {

// Bad input to the harness: unreadable or nondeterministic model, missing
// SUT, unknown retest id, missing artifact. Maps to exit code 3.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TestPlan {
  std::string model_path;
  std::string sut_command;
  std::vector<mutation::OperatorId> operators = mutation::all_operators();
  driver::TimeMode time = driver::TimeMode::simulation();
  Rational max_wait{420};
  std::int32_t step_bound = 40;
  // Real time only; see driver::ExecutionBounds.
  Rational latency_allowance{0};
  int generation_workers = 1;
  int sut_instances = 1;
  // Artifacts directory; empty writes nothing.
  std::string out_dir;
  std::optional<std::vector<std::string>> retest_ids;

  bool operator==(const TestPlan&) const = default;
};

// Throws ConfigError on a worker count below 1, an empty operator set or a
// non-positive bound.
void check_plan(const TestPlan& plan);

std::string serialize_plan(const TestPlan& plan);
TestPlan parse_plan(std::string_view text);

}  // namespace mbmt::harness
