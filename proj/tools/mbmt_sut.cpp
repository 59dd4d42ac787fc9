// Model-driven SUT speaking the line protocol on stdin/stdout.

#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "mbmt/fixtures/models.hpp"
#include "mbmt/fixtures/sut.hpp"
#include "mbmt/fixtures/variants.hpp"
#include "mbmt/tioa/determinism.hpp"
#include "mbmt/tioa/io.hpp"

using namespace mbmt;

int main(int argc, char** argv) {
  CLI::App app{"Model-driven system under test"};
  std::string model_path;
  std::string fixture;
  std::string variant;
  std::string policy_text;
  std::uint64_t seed = 0;
  std::string time = "simulated";
  std::int64_t unit_ms = 100;
  app.add_option("--model", model_path, "Model file to behave as");
  app.add_option("--fixture", fixture, "Built-in model: retailer, car-alarm, timer");
  app.add_option("--variant", variant, "CarAlarm variant: reference, F1..F12, crash");
  app.add_option("--policy", policy_text, "Output policy: eager, lazy, random");
  app.add_option("--seed", seed, "Seed for the random policy");
  app.add_option("--time", time, "simulated or real")->check(CLI::IsMember({"simulated", "real"}));
  app.add_option("--time-unit-ms", unit_ms, "Milliseconds per model time unit (real time)")
      ->check(CLI::PositiveNumber);
  auto* print = app.add_subcommand("print-model", "Print the model document and exit");
  CLI11_PARSE(app, argc, argv);

  try {
    std::optional<fixtures::FaultVariant> v;
    if (!variant.empty()) {
      v = fixtures::find_variant(variant);
      if (!v) throw std::invalid_argument("unknown variant '" + variant + "'");
      if (!model_path.empty() || (!fixture.empty() && fixture != "car-alarm")) {
        throw std::invalid_argument("variants apply to the car-alarm fixture only");
      }
    } else if (model_path.empty() == fixture.empty()) {
      throw std::invalid_argument("give exactly one of --model, --fixture or --variant");
    }

    tioa::Tioa model = v ? fixtures::variant_model(*v)
                         : !model_path.empty() ? tioa::load_model(model_path)
                                               : fixtures::named_model(fixture);
    if (print->parsed()) {
      std::cout << tioa::serialize_model(model);
      return 0;
    }
    if (auto cx = tioa::find_nondeterminism(model)) {
      throw std::invalid_argument("model is nondeterministic: " + cx->to_string());
    }

    fixtures::OutputPolicy policy{v ? v->policy : fixtures::PolicyKind::Eager, seed};
    if (!policy_text.empty()) {
      auto p = fixtures::parse_policy(policy_text);
      if (!p) throw std::invalid_argument("unknown policy '" + policy_text + "'");
      policy.kind = *p;
    }
    fixtures::ModelSut sut = v ? fixtures::make_variant_sut(*v, policy)
                               : fixtures::ModelSut(std::move(model), policy);
    return time == "simulated" ? fixtures::serve_simulated(sut)
                               : fixtures::serve_real_time(sut, unit_ms);
  } catch (const std::exception& e) {
    std::cerr << "mbmt-sut: " << e.what() << '\n';
    return 2;
  }
}
