#pragma once

#include <optional>
#include <string>
#include <utility>

#include "mbmt/tioa/model.hpp"
#include "mbmt/tioa/semantics.hpp"
#include "mbmt/zones/rational.hpp"

namespace mbmt::driver {

enum class Verdict { Pass, PrimaryFail, OtherFail, Inconclusive, Crashed };

enum class InconclusiveReason { None, NoRule, MaxWaitExceeded, StepBoundExceeded, ProtocolViolation };

std::string verdict_name(Verdict v);
std::optional<Verdict> parse_verdict(std::string_view text);
std::string reason_name(InconclusiveReason r);
std::optional<InconclusiveReason> parse_reason(std::string_view text);

// Continue, or the verdict an observation settles.
enum class Classification { Continue, Pass, PrimaryFail, OtherFail };

Classification classify_observation(bool spec_can, bool mut_can);

struct ObservedEvent {
  enum class Kind { Delay, Output, Termination };
  Kind kind = Kind::Delay;
  Rational delay{0};
  std::string label;

  static ObservedEvent delay_of(Rational d) { return {Kind::Delay, d, {}}; }
  static ObservedEvent output(std::string label) { return {Kind::Output, 0, std::move(label)}; }
  static ObservedEvent termination() { return {Kind::Termination, 0, {}}; }
};

// Whether `m` can take the event from `state`, and the resulting state (the
// input state when it cannot). Termination is always possible and changes
// nothing: afterwards only delays are observed.
std::pair<bool, tioa::SemState> step_simulation(const tioa::SemState& state, const tioa::Tioa& m,
                                                const ObservedEvent& ev);

}  // namespace mbmt::driver
