#include "mbmt/fixtures/variants.hpp"

#include <stdexcept>

#include "mbmt/fixtures/models.hpp"

namespace mbmt::fixtures {

using tioa::Constraint;
using tioa::Edge;
using tioa::Op;
using tioa::Tioa;

namespace {

Edge& edge(Tioa& m, std::string_view source, std::string_view action) {
  for (Edge& e : m.edges) {
    if (e.source == source && e.action == action) return e;
  }
  throw std::logic_error("no edge " + std::string(source) + " " + std::string(action));
}

tioa::Guard& invariant(Tioa& m, std::string_view location) {
  return m.locations[m.location_index(location).value()].invariant;
}

}  // namespace

std::string fault_kind_name(FaultKind kind) {
  switch (kind) {
    case FaultKind::None: return "none";
    case FaultKind::Timing: return "timing";
    case FaultKind::WrongOutput: return "wrong-output";
    case FaultKind::MissingReset: return "missing-reset";
    case FaultKind::WrongUpdate: return "wrong-update";
    case FaultKind::WrongTarget: return "wrong-target";
    case FaultKind::Crash: return "crash";
  }
  return "?";
}

const std::vector<FaultVariant>& car_alarm_variants() {
  static const std::vector<FaultVariant> all = {
      {"reference", FaultKind::None, "unmodified", PolicyKind::Eager},
      {"F1", FaultKind::Timing, "armedOn already 1 time unit after locking", PolicyKind::Eager},
      {"F2", FaultKind::Timing, "armedOn deadline extended from 3 to 4", PolicyKind::Lazy},
      {"F3", FaultKind::WrongOutput, "alarm trigger emits armedOff instead of alarmOn", PolicyKind::Eager},
      {"F4", FaultKind::MissingReset, "locking a closed car does not reset x", PolicyKind::Eager},
      {"F5", FaultKind::WrongUpdate, "alarm timeout leaves shutdown at 0", PolicyKind::Eager},
      {"F6", FaultKind::WrongTarget, "silenced alarm disarms as if the door were closed", PolicyKind::Eager},
      {"F7", FaultKind::Timing, "alarm may start up to 2 time units after opening", PolicyKind::Lazy},
      {"F8", FaultKind::Timing, "alarm times out after 3 instead of 4", PolicyKind::Eager},
      {"F9", FaultKind::WrongOutput, "disarming a closed car emits alarmOff instead of armedOff", PolicyKind::Eager},
      {"F10", FaultKind::Timing, "disarming an open car may take 2 time units", PolicyKind::Lazy},
      {"F11", FaultKind::WrongOutput, "arming emits alarmOn instead of armedOn", PolicyKind::Eager},
      {"F12", FaultKind::MissingReset, "closing a locked car does not reset x", PolicyKind::Eager},
      {"crash", FaultKind::Crash, "aborts instead of sounding the alarm", PolicyKind::Eager},
  };
  return all;
}

std::optional<FaultVariant> find_variant(std::string_view id) {
  for (const FaultVariant& v : car_alarm_variants()) {
    if (v.id == id) return v;
  }
  return std::nullopt;
}

Tioa variant_model(const FaultVariant& v) {
  Tioa m = car_alarm();
  if (v.id == "F1") {
    edge(m, "ClosedLocked", "armedOn").guard = {Constraint{"x", Op::Ge, 1}};
  } else if (v.id == "F2") {
    invariant(m, "ClosedLocked") = {Constraint{"x", Op::Le, 4}};
  } else if (v.id == "F3") {
    edge(m, "Triggered", "alarmOn").action = "armedOff";
  } else if (v.id == "F4") {
    edge(m, "ClosedUnlocked", "lock").resets.clear();
  } else if (v.id == "F5") {
    edge(m, "Sounding", "alarmOff").update = {{"shutdown", 0}};
  } else if (v.id == "F6") {
    edge(m, "Silencing", "alarmOff").target = "DisarmClosed";
  } else if (v.id == "F7") {
    invariant(m, "Triggered") = {Constraint{"x", Op::Le, 2}};
  } else if (v.id == "F8") {
    edge(m, "Sounding", "alarmOff").guard = {Constraint{"x", Op::Ge, 3}};
  } else if (v.id == "F9") {
    edge(m, "DisarmClosed", "armedOff").action = "alarmOff";
  } else if (v.id == "F10") {
    invariant(m, "DisarmOpen") = {Constraint{"x", Op::Le, 2}};
  } else if (v.id == "F11") {
    edge(m, "ClosedLocked", "armedOn").action = "alarmOn";
  } else if (v.id == "F12") {
    edge(m, "OpenLocked", "close").resets.clear();
  } else if (v.id != "reference" && v.id != "crash") {
    throw std::invalid_argument("unknown variant '" + v.id + "'");
  }
  return m;
}

ModelSut make_variant_sut(const FaultVariant& v, std::optional<OutputPolicy> policy) {
  ModelSut sut(variant_model(v), policy.value_or(OutputPolicy{v.policy, 0}));
  if (v.kind == FaultKind::Crash) {
    sut.crash_on("alarmOn", 134,
                 "fatal: null siren handle\n"
                 "  at Siren::start (siren.c:42)\n"
                 "  at Alarm::trigger (alarm.c:117)\n");
  }
  return sut;
}

}  // namespace mbmt::fixtures
