#include "mbmt/fixtures/models.hpp"

#include <stdexcept>

#include "mbmt/tioa/io.hpp"

namespace mbmt::fixtures {

namespace {

constexpr std::string_view kRetailer = R"({
  "name": "Retailer",
  "clocks": ["x"],
  "variables": [{"name": "free", "min": 0, "max": 1, "init": 0}],
  "inputs": ["coin"],
  "outputs": ["garnish", "tuna"],
  "locations": [
    {"id": "L0", "kind": "initial", "invariant": []},
    {"id": "L1", "kind": "normal", "invariant": [{"operand": "x", "op": "<=", "constant": 4}]}
  ],
  "initial": "L0",
  "edges": [
    {"source": "L0", "target": "L0", "action": "garnish", "direction": "output",
     "guard": [{"operand": "x", "op": "<", "constant": 3}, {"operand": "free", "op": "==", "constant": 1}],
     "resets": [], "update": {"free": 0}},
    {"source": "L0", "target": "L1", "action": "coin", "direction": "input",
     "guard": [{"operand": "x", "op": ">", "constant": 4}],
     "resets": ["x"], "update": {"free": 1}},
    {"source": "L1", "target": "L0", "action": "garnish", "direction": "output",
     "guard": [], "resets": [], "update": {}},
    {"source": "L1", "target": "L0", "action": "tuna", "direction": "output",
     "guard": [{"operand": "x", "op": ">", "constant": 1}], "resets": [], "update": {}}
  ]
}
)";

constexpr std::string_view kCarAlarm = R"({
  "name": "CarAlarm",
  "clocks": ["x"],
  "variables": [{"name": "shutdown", "min": 0, "max": 1, "init": 0}],
  "inputs": ["open", "close", "lock", "unlock"],
  "outputs": ["armedOn", "armedOff", "alarmOn", "alarmOff"],
  "locations": [
    {"id": "OpenUnlocked", "kind": "initial", "invariant": []},
    {"id": "ClosedUnlocked", "kind": "normal", "invariant": []},
    {"id": "OpenLocked", "kind": "normal", "invariant": []},
    {"id": "ClosedLocked", "kind": "normal", "invariant": [{"operand": "x", "op": "<=", "constant": 3}]},
    {"id": "Armed", "kind": "normal", "invariant": []},
    {"id": "Triggered", "kind": "normal", "invariant": [{"operand": "x", "op": "<=", "constant": 1}]},
    {"id": "Sounding", "kind": "normal", "invariant": [{"operand": "x", "op": "<=", "constant": 5}]},
    {"id": "Silencing", "kind": "normal", "invariant": [{"operand": "x", "op": "<=", "constant": 1}]},
    {"id": "DisarmClosed", "kind": "normal", "invariant": [{"operand": "x", "op": "<=", "constant": 1}]},
    {"id": "DisarmOpen", "kind": "normal", "invariant": [{"operand": "x", "op": "<=", "constant": 1}]},
    {"id": "Quiet", "kind": "normal", "invariant": []}
  ],
  "initial": "OpenUnlocked",
  "edges": [
    {"source": "OpenUnlocked", "target": "ClosedUnlocked", "action": "close", "direction": "input",
     "guard": [], "resets": [], "update": {}},
    {"source": "OpenUnlocked", "target": "OpenLocked", "action": "lock", "direction": "input",
     "guard": [], "resets": [], "update": {}},
    {"source": "ClosedUnlocked", "target": "OpenUnlocked", "action": "open", "direction": "input",
     "guard": [], "resets": [], "update": {}},
    {"source": "ClosedUnlocked", "target": "ClosedLocked", "action": "lock", "direction": "input",
     "guard": [], "resets": ["x"], "update": {}},
    {"source": "OpenLocked", "target": "OpenUnlocked", "action": "unlock", "direction": "input",
     "guard": [], "resets": [], "update": {}},
    {"source": "OpenLocked", "target": "ClosedLocked", "action": "close", "direction": "input",
     "guard": [], "resets": ["x"], "update": {}},
    {"source": "ClosedLocked", "target": "ClosedUnlocked", "action": "unlock", "direction": "input",
     "guard": [], "resets": [], "update": {}},
    {"source": "ClosedLocked", "target": "Armed", "action": "armedOn", "direction": "output",
     "guard": [{"operand": "x", "op": ">=", "constant": 2}], "resets": [], "update": {}},
    {"source": "Armed", "target": "DisarmClosed", "action": "unlock", "direction": "input",
     "guard": [], "resets": ["x"], "update": {}},
    {"source": "Armed", "target": "Triggered", "action": "open", "direction": "input",
     "guard": [], "resets": ["x"], "update": {}},
    {"source": "Triggered", "target": "Sounding", "action": "alarmOn", "direction": "output",
     "guard": [], "resets": ["x"], "update": {}},
    {"source": "Sounding", "target": "Silencing", "action": "unlock", "direction": "input",
     "guard": [], "resets": ["x"], "update": {}},
    {"source": "Sounding", "target": "Quiet", "action": "alarmOff", "direction": "output",
     "guard": [{"operand": "x", "op": ">=", "constant": 4}], "resets": ["x"], "update": {"shutdown": 1}},
    {"source": "Silencing", "target": "DisarmOpen", "action": "alarmOff", "direction": "output",
     "guard": [], "resets": ["x"], "update": {}},
    {"source": "Quiet", "target": "ClosedLocked", "action": "close", "direction": "input",
     "guard": [{"operand": "shutdown", "op": "==", "constant": 1}], "resets": ["x"], "update": {"shutdown": 0}},
    {"source": "Quiet", "target": "DisarmOpen", "action": "unlock", "direction": "input",
     "guard": [], "resets": ["x"], "update": {"shutdown": 0}},
    {"source": "DisarmClosed", "target": "ClosedUnlocked", "action": "armedOff", "direction": "output",
     "guard": [], "resets": [], "update": {}},
    {"source": "DisarmOpen", "target": "OpenUnlocked", "action": "armedOff", "direction": "output",
     "guard": [], "resets": [], "update": {}}
  ]
}
)";

constexpr std::string_view kTimer = R"({
  "name": "Timer",
  "clocks": ["x"],
  "variables": [],
  "inputs": ["start"],
  "outputs": ["done"],
  "locations": [
    {"id": "Idle", "kind": "initial", "invariant": []},
    {"id": "Wait", "kind": "normal", "invariant": [{"operand": "x", "op": "<=", "constant": 7}]}
  ],
  "initial": "Idle",
  "edges": [
    {"source": "Idle", "target": "Wait", "action": "start", "direction": "input",
     "guard": [], "resets": ["x"], "update": {}},
    {"source": "Wait", "target": "Idle", "action": "done", "direction": "output",
     "guard": [{"operand": "x", "op": ">", "constant": 5}], "resets": [], "update": {}}
  ]
}
)";

}  // namespace

std::string_view retailer_document() { return kRetailer; }
tioa::Tioa retailer() { return tioa::parse_model(kRetailer); }

std::string_view car_alarm_document() { return kCarAlarm; }
tioa::Tioa car_alarm() { return tioa::parse_model(kCarAlarm); }

std::string_view timer_document() { return kTimer; }
tioa::Tioa timer() { return tioa::parse_model(kTimer); }

std::uint64_t model_hash(const tioa::Tioa& m) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : tioa::serialize_model(m)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

tioa::Tioa named_model(std::string_view name) {
  if (name == "retailer") return retailer();
  if (name == "car-alarm") return car_alarm();
  if (name == "timer") return timer();
  throw std::invalid_argument("unknown fixture model '" + std::string(name) + "'");
}

}  // namespace mbmt::fixtures
