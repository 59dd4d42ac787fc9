#pragma once

#include <functional>
#include <memory>
#include <string>

#include "mbmt/driver/channel.hpp"
#include "mbmt/harness/plan.hpp"
#include "mbmt/harness/report.hpp"

namespace mbmt::harness {

// Connects to a fresh SUT instance.
using SutLauncher = std::function<std::unique_ptr<driver::LineChannel>()>;

struct RunOptions {
  // Defaults to spawning plan.sut_command.
  SutLauncher launcher;
  // Progress events, possibly from worker threads: "synthesized <id>",
  // "launched <id>".
  std::function<void(const std::string&)> on_event;
};

// Mutates the model, synthesizes one strategy per mutant across
// plan.generation_workers, then executes every strategy across
// plan.sut_instances. Results are ordered as the mutants were generated.
// With an out_dir the run leaves plan.json, spec.model, mutants/,
// strategies/, results.json and results.txt there.
RunReport run_plan(const TestPlan& plan, const RunOptions& options = {});

// Re-executes plan.retest_ids from the strategies stored in plan.out_dir,
// writing retest.json and retest.txt next to them.
RunReport retest(const TestPlan& plan, const RunOptions& options = {});

// File name used under strategies/.
std::string strategy_file_name(std::string_view id);

}  // namespace mbmt::harness
