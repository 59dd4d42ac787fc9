#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mbmt/driver/channel.hpp"
#include "mbmt/tioa/model.hpp"
#include "mbmt/tioa/semantics.hpp"
#include "mbmt/zones/rational.hpp"

namespace mbmt::fixtures {

enum class PolicyKind { Eager, Lazy, Random };

struct OutputPolicy {
  PolicyKind kind = PolicyKind::Eager;
  std::uint64_t seed = 0;
};

std::string policy_name(PolicyKind kind);
std::optional<PolicyKind> parse_policy(std::string_view text);

// A SUT that behaves as a model. After each discrete step it plans its next
// output by policy: eager takes the earliest enabled instant, lazy the
// latest one before the location's deadline (none without a deadline),
// random draws an instant on a 1/8 grid. Inputs that are not enabled are
// ignored. If time reaches a deadline with no output possible the SUT stops.
class ModelSut : public driver::LineEndpoint {
 public:
  ModelSut(tioa::Tioa model, OutputPolicy policy);

  std::vector<std::string> on_line(const std::string& line) override;
  bool terminated() const override { return terminated_; }
  int exit_code() const override { return exit_code_; }
  std::string diagnostics() const override { return diagnostics_; }

  // Instead of emitting `label`, exit with `code` and `message` on stderr.
  void crash_on(std::string label, int code, std::string message);

  // Real-time building blocks.
  std::optional<Rational> next_output_in() const;
  std::optional<Rational> deadline_in() const;
  // Lets time pass, never beyond the deadline.
  void advance(const Rational& d);
  // Emits the planned output now; returns nullopt after a crash.
  std::optional<std::string> fire();
  void input(const std::string& label);
  // Deadline reached with nothing to say.
  void stop();

  const tioa::SemState& state() const { return state_; }
  const tioa::Tioa& model() const { return model_; }

 private:
  struct Window {
    zones::DelayInterval delays;
    std::string label;
  };

  void replan();
  std::vector<Window> windows() const;
  std::optional<std::string> enabled_at(const Rational& d, bool random);

  tioa::Tioa model_;
  OutputPolicy policy_;
  std::mt19937_64 rng_;
  tioa::SemState state_;
  std::optional<std::pair<Rational, std::string>> plan_;
  std::optional<Rational> deadline_;
  bool terminated_ = false;
  int exit_code_ = 0;
  std::string diagnostics_;
  std::optional<std::string> crash_label_;
  int crash_code_ = 0;
  std::string crash_message_;
};

// Serves a ModelSut over standard input/output until either side stops.
// Returns the process exit code.
int serve_simulated(ModelSut& sut);
int serve_real_time(ModelSut& sut, std::int64_t time_unit_ms);

}  // namespace mbmt::fixtures
