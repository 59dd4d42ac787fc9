// Command-line front end: run, retest, mutants export.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mbmt/harness/run.hpp"
#include "mbmt/mutation/mutation.hpp"
#include "mbmt/tioa/io.hpp"

using namespace mbmt;

namespace {

constexpr int kConfigError = 3;

std::vector<std::string> split_ids(const std::string& text) {
  std::vector<std::string> ids;
  std::istringstream in(text);
  for (std::string id; std::getline(in, id, ',');) {
    if (!id.empty()) ids.push_back(id);
  }
  return ids;
}

Rational parse_amount(const std::string& text, const char* what) {
  auto r = parse_decimal(text);
  if (!r) throw harness::ConfigError(std::string("bad ") + what + " '" + text + "'");
  return *r;
}

int finish(const harness::RunReport& report, const std::string& format) {
  const bool machine = format == "machine";
  std::cout << harness::report_render(report, machine ? harness::ReportFormat::Machine
                                                      : harness::ReportFormat::Human);
  if (!machine) std::cout << '\n' << harness::report_summary(report);
  return harness::exit_code(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model-based mutation testing for timed I/O automata"};
  app.require_subcommand(1);

  harness::TestPlan plan;
  std::string operators = "all";
  std::string time = "simulated";
  std::string max_wait = "420";
  std::string latency = "0";
  std::string format = "human";

  auto* run = app.add_subcommand("run", "Mutate, generate and execute test cases");
  run->add_option("--model", plan.model_path, "Specification model file")->required();
  run->add_option("--sut", plan.sut_command, "Command that starts one SUT instance")->required();
  run->add_option("--operators", operators, "Comma-separated operators or 'all'");
  run->add_option("--time", time, "simulated or real")
      ->check(CLI::IsMember({"simulated", "real"}));
  run->add_option("--time-unit-ms", plan.time.time_unit_ms, "Milliseconds per time unit");
  run->add_option("--max-wait", max_wait, "Total time a test may spend waiting");
  run->add_option("--step-bound", plan.step_bound, "Rule changes before a test gives up");
  run->add_option("--latency-allowance", latency, "Real time: tolerated late delay, in units");
  run->add_option("--generation-workers", plan.generation_workers, "Strategy synthesis threads");
  run->add_option("--sut-instances", plan.sut_instances, "Concurrent SUT instances");
  run->add_option("--out", plan.out_dir, "Artifacts directory");
  run->add_option("--format", format, "Console report: human or machine")
      ->check(CLI::IsMember({"human", "machine"}));

  std::string retest_dir;
  std::string ids;
  std::string retest_sut;
  auto* re = app.add_subcommand("retest", "Re-execute stored test cases");
  re->add_option("--out", retest_dir, "Artifacts directory of an earlier run")->required();
  re->add_option("--ids", ids, "Comma-separated test ids")->required();
  re->add_option("--sut", retest_sut, "Replacement SUT command");
  re->add_option("--format", format, "Console report: human or machine")
      ->check(CLI::IsMember({"human", "machine"}));

  auto* mutants = app.add_subcommand("mutants", "Mutant utilities");
  mutants->require_subcommand(1);
  std::string export_model;
  std::string export_dir;
  std::string export_ops = "all";
  auto* exp = mutants->add_subcommand("export", "Write every mutant as a model file");
  exp->add_option("--model", export_model, "Specification model file")->required();
  exp->add_option("--operators", export_ops, "Comma-separated operators or 'all'");
  exp->add_option("--out", export_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (run->parsed()) {
      plan.operators = mutation::parse_operators(operators);
      plan.time.simulated = time == "simulated";
      plan.max_wait = parse_amount(max_wait, "max wait");
      plan.latency_allowance = parse_amount(latency, "latency allowance");
      return finish(harness::run_plan(plan), format);
    }
    if (re->parsed()) {
      std::ifstream in(std::filesystem::path(retest_dir) / "plan.json");
      if (!in) throw harness::ConfigError("no plan.json in " + retest_dir);
      std::stringstream text;
      text << in.rdbuf();
      harness::TestPlan stored = harness::parse_plan(text.str());
      stored.out_dir = retest_dir;
      stored.retest_ids = split_ids(ids);
      if (!retest_sut.empty()) stored.sut_command = retest_sut;
      return finish(harness::retest(stored), format);
    }
    const auto list =
        mutation::generate_mutants(tioa::load_model(export_model), mutation::parse_operators(export_ops));
    mutation::export_mutants(list, export_dir);
    std::cout << list.size() << " mutants written to " << export_dir << '\n';
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "mbmt: error: " << e.what() << '\n';
    return kConfigError;
  }
}
