#include "mbmt/harness/plan.hpp"

#include "json.hpp"
#include "rational_text.hpp"

namespace mbmt::harness {

using nlohmann::ordered_json;

void check_plan(const TestPlan& plan) {
  if (plan.generation_workers < 1) throw ConfigError("generation workers must be at least 1");
  if (plan.sut_instances < 1) throw ConfigError("SUT instances must be at least 1");
  if (plan.operators.empty()) throw ConfigError("no mutation operators selected");
  if (plan.max_wait <= 0) throw ConfigError("max wait must be positive");
  if (plan.step_bound < 1) throw ConfigError("step bound must be at least 1");
  if (plan.latency_allowance < 0) throw ConfigError("latency allowance must not be negative");
  if (!plan.time.simulated && plan.time.time_unit_ms < 1) {
    throw ConfigError("time unit must be at least 1 ms");
  }
}

std::string serialize_plan(const TestPlan& plan) {
  ordered_json j;
  j["format"] = "mbmt-plan";
  j["version"] = 1;
  j["model"] = plan.model_path;
  j["sut"] = plan.sut_command;
  ordered_json ops = ordered_json::array();
  for (auto op : plan.operators) ops.push_back(mutation::operator_name(op));
  j["operators"] = ops;
  j["time"] = plan.time.simulated ? "simulated" : "real";
  j["timeUnitMs"] = plan.time.time_unit_ms;
  j["maxWait"] = detail::rational_text(plan.max_wait);
  j["stepBound"] = plan.step_bound;
  j["latencyAllowance"] = detail::rational_text(plan.latency_allowance);
  j["generationWorkers"] = plan.generation_workers;
  j["sutInstances"] = plan.sut_instances;
  j["out"] = plan.out_dir;
  if (plan.retest_ids) j["retestIds"] = *plan.retest_ids;
  return j.dump(2) + "\n";
}

namespace {

Rational rational_field(const ordered_json& j, const char* key) {
  const auto r = detail::parse_rational_text(j.at(key).get<std::string>());
  if (!r) throw ConfigError(std::string("plan: bad number in '") + key + "'");
  return *r;
}

}  // namespace

TestPlan parse_plan(std::string_view text) {
  try {
    const ordered_json j = ordered_json::parse(text);
    if (j.at("format") != "mbmt-plan" || j.at("version") != 1) {
      throw ConfigError("plan: not an mbmt-plan version 1 document");
    }
    TestPlan p;
    p.model_path = j.at("model").get<std::string>();
    p.sut_command = j.at("sut").get<std::string>();
    p.operators.clear();
    for (const auto& name : j.at("operators")) {
      const auto ops = mutation::parse_operators(name.get<std::string>());
      p.operators.insert(p.operators.end(), ops.begin(), ops.end());
    }
    const std::string time = j.at("time").get<std::string>();
    if (time != "simulated" && time != "real") throw ConfigError("plan: bad time mode '" + time + "'");
    p.time = {time == "simulated", j.at("timeUnitMs").get<std::int64_t>()};
    p.max_wait = rational_field(j, "maxWait");
    p.step_bound = j.at("stepBound").get<std::int32_t>();
    p.latency_allowance = rational_field(j, "latencyAllowance");
    p.generation_workers = j.at("generationWorkers").get<int>();
    p.sut_instances = j.at("sutInstances").get<int>();
    p.out_dir = j.at("out").get<std::string>();
    if (j.contains("retestIds")) p.retest_ids = j.at("retestIds").get<std::vector<std::string>>();
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("plan: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("plan: ") + e.what());
  }
}

}  // namespace mbmt::harness
