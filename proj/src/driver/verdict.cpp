#include "mbmt/driver/verdict.hpp"

namespace mbmt::driver {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::PrimaryFail: return "primary_fail";
    case Verdict::OtherFail: return "other_fail";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::Crashed: return "crashed";
  }
  return "?";
}

std::optional<Verdict> parse_verdict(std::string_view text) {
  for (Verdict v : {Verdict::Pass, Verdict::PrimaryFail, Verdict::OtherFail, Verdict::Inconclusive,
                    Verdict::Crashed}) {
    if (verdict_name(v) == text) return v;
  }
  return std::nullopt;
}

std::string reason_name(InconclusiveReason r) {
  switch (r) {
    case InconclusiveReason::None: return "";
    case InconclusiveReason::NoRule: return "no-rule";
    case InconclusiveReason::MaxWaitExceeded: return "max-wait-exceeded";
    case InconclusiveReason::StepBoundExceeded: return "step-bound-exceeded";
    case InconclusiveReason::ProtocolViolation: return "protocol-violation";
  }
  return "?";
}

std::optional<InconclusiveReason> parse_reason(std::string_view text) {
  for (InconclusiveReason r :
       {InconclusiveReason::None, InconclusiveReason::NoRule, InconclusiveReason::MaxWaitExceeded,
        InconclusiveReason::StepBoundExceeded, InconclusiveReason::ProtocolViolation}) {
    if (reason_name(r) == text) return r;
  }
  return std::nullopt;
}

Classification classify_observation(bool spec_can, bool mut_can) {
  if (spec_can && mut_can) return Classification::Continue;
  if (spec_can) return Classification::Pass;
  if (mut_can) return Classification::PrimaryFail;
  return Classification::OtherFail;
}

std::pair<bool, tioa::SemState> step_simulation(const tioa::SemState& state, const tioa::Tioa& m,
                                                const ObservedEvent& ev) {
  std::optional<tioa::SemState> next;
  switch (ev.kind) {
    case ObservedEvent::Kind::Termination:
      return {true, state};
    case ObservedEvent::Kind::Delay:
      next = tioa::step_delay(m, state, ev.delay);
      break;
    case ObservedEvent::Kind::Output:
      if (!m.is_output(ev.label)) return {false, state};
      next = tioa::step_action(m, state, ev.label);
      break;
  }
  if (!next) return {false, state};
  return {true, std::move(*next)};
}

}  // namespace mbmt::driver
