#include "mbmt/harness/run.hpp"

#include <unistd.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "mbmt/conformance/product.hpp"
#include "mbmt/conformance/synthesis.hpp"
#include "mbmt/tioa/completion.hpp"
#include "mbmt/tioa/determinism.hpp"
#include "mbmt/tioa/io.hpp"

namespace mbmt::harness {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;
using driver::TestResult;

std::string strategy_file_name(std::string_view id) { return std::string(id) + ".json"; }

namespace {

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Runs f(0..n-1) on up to `workers` threads. Each index runs exactly once;
// the first exception is rethrown after all threads finish.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& f) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t i; (i = next++) < n;) {
      try {
        f(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const std::size_t extra = std::min<std::size_t>(n, std::size_t(workers)) - (n > 0 ? 1 : 0);
    for (std::size_t k = 0; k < extra; ++k) pool.emplace_back(work);
    work();
  }
  if (error) std::rethrow_exception(error);
}

bool command_resolvable(const std::string& command) {
  std::istringstream words(command);
  std::string program;
  if (!(words >> program)) return false;
  if (program.find('/') != std::string::npos) return ::access(program.c_str(), X_OK) == 0;
  const char* path = std::getenv("PATH");
  std::istringstream dirs(path ? path : "");
  for (std::string dir; std::getline(dirs, dir, ':');) {
    if (!dir.empty() && ::access((fs::path(dir) / program).c_str(), X_OK) == 0) return true;
  }
  return false;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

tioa::Tioa load_spec(const fs::path& path) {
  try {
    return tioa::load_model(path);
  } catch (const std::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

struct Prepared {
  std::string id;
  std::string edit;
  tioa::Tioa mut_completed;
  conformance::Strategy strategy;
};

struct Generated {
  std::optional<conformance::Strategy> strategy;
  Disposition disposition = Disposition::Conforms;
  std::string detail;
};

void notify(const RunOptions& options, const std::string& event) {
  if (options.on_event) options.on_event(event);
}

std::vector<TestResult> execute_all(const TestPlan& plan, const RunOptions& options,
                                    const tioa::Tioa& spec, const std::vector<Prepared>& tests) {
  if (tests.empty()) return {};
  SutLauncher launch = options.launcher;
  if (!launch) {
    if (!command_resolvable(plan.sut_command)) {
      throw ConfigError("SUT command not found: '" + plan.sut_command + "'");
    }
    launch = [&] { return std::make_unique<driver::ProcessChannel>(plan.sut_command); };
  }
  const tioa::Tioa spec_completed = tioa::demonic_complete(spec);
  const driver::ExecutionBounds bounds{plan.max_wait, plan.step_bound, plan.latency_allowance};
  std::vector<TestResult> results(tests.size());
  parallel_for(tests.size(), plan.sut_instances, [&](std::size_t i) {
    const Prepared& t = tests[i];
    auto channel = launch();
    notify(options, "launched " + t.id);
    driver::SutSession session(*channel, plan.time);
    results[i] = driver::execute_test(t.strategy, spec_completed, t.mut_completed, session, bounds);
    results[i].mutant = t.edit;
  });
  return results;
}

void write_results(const fs::path& dir, const std::string& stem, const RunReport& report) {
  write_text(dir / (stem + ".json"), report_render(report, ReportFormat::Machine));
  write_text(dir / (stem + ".txt"), report_render(report, ReportFormat::Human));
}

}  // namespace

RunReport run_plan(const TestPlan& plan, const RunOptions& options) {
  check_plan(plan);
  const tioa::Tioa spec = load_spec(plan.model_path);
  if (auto cx = tioa::find_nondeterminism(spec)) {
    throw ConfigError("model is nondeterministic: " + cx->to_string());
  }

  RunReport report;
  report.plan = plan;

  auto start = Clock::now();
  const std::vector<mutation::Mutant> mutants = mutation::generate_mutants(spec, plan.operators);
  report.mutant_count = mutants.size();
  report.timing.mutation_ms = ms_since(start);

  start = Clock::now();
  std::vector<Generated> generated(mutants.size());
  parallel_for(mutants.size(), plan.generation_workers, [&](std::size_t i) {
    const mutation::Mutant& mu = mutants[i];
    Generated& g = generated[i];
    if (auto cx = tioa::find_nondeterminism(mu.model)) {
      g.disposition = Disposition::Nondeterministic;
      g.detail = cx->to_string();
    } else {
      try {
        auto r = conformance::synthesize_strategy(spec, mu.model, mu.id);
        g.strategy = std::move(r.strategy);
      } catch (const std::exception& e) {
        g.disposition = Disposition::EngineError;
        g.detail = e.what();
      }
    }
    notify(options, "synthesized " + mu.id);
  });
  report.timing.generation_ms = ms_since(start);

  std::vector<Prepared> tests;
  for (std::size_t i = 0; i < mutants.size(); ++i) {
    const mutation::Mutant& mu = mutants[i];
    if (generated[i].strategy) {
      tests.push_back({mu.id, mu.edit, tioa::angelic_complete(mu.model), *generated[i].strategy});
    } else {
      report.discarded.push_back({mu.id, mu.edit, generated[i].disposition, generated[i].detail});
    }
  }

  const fs::path dir = plan.out_dir;
  if (!dir.empty()) {
    fs::create_directories(dir);
    fs::remove_all(dir / "mutants");
    fs::remove_all(dir / "strategies");
    fs::create_directories(dir / "strategies");
    write_text(dir / "plan.json", serialize_plan(plan));
    tioa::save_model(spec, dir / "spec.model");
    mutation::export_mutants(mutants, dir / "mutants");
    for (const Prepared& t : tests) {
      conformance::save_strategy(t.strategy, dir / "strategies" / strategy_file_name(t.id));
    }
  }

  start = Clock::now();
  report.tests = execute_all(plan, options, spec, tests);
  report.timing.execution_ms = ms_since(start);

  if (!dir.empty()) write_results(dir, "results", report);
  return report;
}

RunReport retest(const TestPlan& plan, const RunOptions& options) {
  check_plan(plan);
  if (plan.out_dir.empty()) throw ConfigError("retest needs an artifacts directory");
  const fs::path dir = plan.out_dir;
  const std::vector<std::string> ids = plan.retest_ids.value_or(std::vector<std::string>{});

  RunReport report;
  report.plan = plan;
  report.mutant_count = ids.size();
  if (ids.empty()) {
    if (fs::is_directory(dir)) write_results(dir, "retest", report);
    return report;
  }

  const tioa::Tioa spec = load_spec(dir / "spec.model");
  std::map<std::string, std::string> edits;
  {
    std::ifstream index(dir / "mutants" / "index.tsv");
    if (!index) throw ConfigError("missing artifact " + (dir / "mutants" / "index.tsv").string());
    for (std::string line; std::getline(index, line);) {
      const auto tab = line.find('\t');
      if (tab != std::string::npos) edits[line.substr(0, tab)] = line.substr(tab + 1);
    }
  }

  std::vector<Prepared> tests;
  for (const std::string& id : ids) {
    if (!edits.count(id)) throw ConfigError("unknown test id '" + id + "'");
    const fs::path strategy_path = dir / "strategies" / strategy_file_name(id);
    const fs::path mutant_path = dir / "mutants" / mutation::mutant_file_name(id);
    if (!fs::exists(strategy_path)) {
      throw ConfigError("no test case for '" + id + "': missing artifact " + strategy_path.string());
    }
    try {
      tests.push_back({id, edits[id], tioa::angelic_complete(tioa::load_model(mutant_path)),
                       conformance::load_strategy(strategy_path)});
    } catch (const std::exception& e) {
      throw ConfigError("cannot load artifacts for '" + id + "': " + e.what());
    }
  }

  const auto start = Clock::now();
  report.tests = execute_all(plan, options, spec, tests);
  report.timing.execution_ms = ms_since(start);
  write_results(dir, "retest", report);
  return report;
}

}  // namespace mbmt::harness
