#include "mbmt/fixtures/pairs.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace mbmt::fixtures {

using tioa::Constraint;
using tioa::Direction;
using tioa::Edge;
using tioa::LocationKind;
using tioa::Tioa;

namespace {

// "x<=3, v==1" -> constraints.
tioa::Guard guard(std::string_view text) {
  tioa::Guard g;
  std::string item;
  std::stringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    std::erase(item, ' ');
    if (item.empty()) continue;
    const auto at = item.find_first_of("<>=!");
    std::size_t end = at;
    while (end < item.size() && std::string_view("<>=!").find(item[end]) != std::string_view::npos) ++end;
    const auto op = tioa::parse_op(item.substr(at, end - at));
    if (!op) throw std::logic_error("bad guard " + item);
    g.push_back({item.substr(0, at), *op, std::stoi(item.substr(end))});
  }
  return g;
}

struct Builder {
  Tioa m;

  Builder(std::string name, std::vector<std::string> clocks, std::vector<std::string> inputs,
          std::vector<std::string> outputs) {
    m.name = std::move(name);
    m.clocks = std::move(clocks);
    m.inputs = std::move(inputs);
    m.outputs = std::move(outputs);
  }
  Builder& var(std::string name, int lo, int hi, int init) {
    m.variables.push_back({std::move(name), lo, hi, init});
    return *this;
  }
  Builder& loc(std::string id, std::string_view inv = "") {
    const bool first = m.locations.empty();
    m.locations.push_back({id, first ? LocationKind::Initial : LocationKind::Normal, guard(inv)});
    if (first) m.initial = id;
    return *this;
  }
  Builder& edge(std::string from, std::string to, std::string action, std::string_view g = "",
                std::vector<std::string> resets = {}, std::map<std::string, std::int32_t> update = {}) {
    const Direction d = std::find(m.inputs.begin(), m.inputs.end(), action) != m.inputs.end()
                            ? Direction::Input
                            : Direction::Output;
    m.edges.push_back({std::move(from), std::move(to), std::move(action), d, guard(g),
                       std::move(resets), std::move(update)});
    return *this;
  }
};

// start? then done! in (3, 5].
Tioa timer() {
  return Builder("Timer", {"x"}, {"start"}, {"done"})
      .loc("Idle")
      .loc("Wait", "x<=5")
      .edge("Idle", "Wait", "start", "", {"x"})
      .edge("Wait", "Idle", "done", "x>3")
      .m;
}

// req? answered by ack! within [1, 2].
Tioa responder() {
  return Builder("Responder", {"x"}, {"req"}, {"ack", "nack"})
      .loc("A")
      .loc("B", "x<=2")
      .edge("A", "B", "req", "", {"x"})
      .edge("B", "A", "ack", "x>=1")
      .m;
}

// A heartbeat every 4 units on y; go? starts a job that reports done! after
// at least 1 and at most 3 units on x.
Tioa worker() {
  return Builder("Worker", {"x", "y"}, {"go"}, {"beat", "done"})
      .loc("Idle", "y<=4")
      .loc("Busy", "x<=3")
      .edge("Idle", "Idle", "beat", "y==4", {"y"})
      .edge("Idle", "Busy", "go", "", {"x"})
      .edge("Busy", "Idle", "done", "x>=1", {"y"})
      .m;
}

// A two-slot buffer: put? fills, get! drains once full.
Tioa buffer() {
  return Builder("Buffer", {"x"}, {"put"}, {"get"})
      .var("n", 0, 2, 0)
      .loc("Q", "")
      .edge("Q", "Q", "put", "n==0", {"x"}, {{"n", 1}})
      .edge("Q", "Q", "put", "n==1", {"x"}, {{"n", 2}})
      .edge("Q", "Q", "get", "n==2, x>=1", {}, {{"n", 0}})
      .m;
}

// Toggle: on? arms, output blink! every 2 units until off?.
Tioa blinker() {
  return Builder("Blinker", {"x"}, {"on", "off"}, {"blink"})
      .loc("Off")
      .loc("On", "x<=2")
      .edge("Off", "On", "on", "", {"x"})
      .edge("On", "On", "blink", "x==2", {"x"})
      .edge("On", "Off", "off")
      .m;
}

// A latch with a flag that gates the output.
Tioa latch() {
  return Builder("Latch", {"x"}, {"set", "clear"}, {"fire"})
      .var("armed", 0, 1, 0)
      .loc("L", "")
      .loc("F", "x<=1")
      .edge("L", "L", "set", "armed==0", {}, {{"armed", 1}})
      .edge("L", "L", "clear", "", {}, {{"armed", 0}})
      .edge("L", "F", "set", "armed==1", {"x"})
      .edge("F", "L", "fire", "", {}, {{"armed", 0}})
      .m;
}

Tioa edited(Tioa m, const std::function<void(Tioa&)>& f) {
  f(m);
  return m;
}

Edge& find(Tioa& m, std::string_view source, std::string_view action) {
  for (Edge& e : m.edges) {
    if (e.source == source && e.action == action) return e;
  }
  throw std::logic_error("no such edge");
}

tioa::Guard& inv(Tioa& m, std::string_view location) {
  return m.locations[m.location_index(location).value()].invariant;
}

}  // namespace

const std::vector<LabeledPair>& labeled_pairs() {
  static const std::vector<LabeledPair> pairs = [] {
    std::vector<LabeledPair> out;
    auto add = [&](std::string id, std::string note, Tioa spec, Tioa mutant, bool conforms) {
      out.push_back({std::move(id), std::move(note), std::move(spec), std::move(mutant), conforms});
    };
    add("P01", "timer: deadline dropped", timer(),
        edited(timer(), [](Tioa& m) { inv(m, "Wait").clear(); }), false);
    add("P02", "timer: done narrowed to x>4", timer(),
        edited(timer(), [](Tioa& m) { find(m, "Wait", "done").guard = guard("x>4"); }), true);
    add("P03", "timer: done widened to x>2", timer(),
        edited(timer(), [](Tioa& m) { find(m, "Wait", "done").guard = guard("x>2"); }), false);
    add("P04", "timer: deadline tightened 5 -> 4", timer(),
        edited(timer(), [](Tioa& m) { inv(m, "Wait") = guard("x<=4"); }), true);
    add("P05", "timer: start keeps x", timer(),
        edited(timer(), [](Tioa& m) { find(m, "Idle", "start").resets.clear(); }), false);
    add("P06", "timer: done strict bound made weak", timer(),
        edited(timer(), [](Tioa& m) { find(m, "Wait", "done").guard = guard("x>=3"); }), false);
    add("P07", "responder: ack from 0", responder(),
        edited(responder(), [](Tioa& m) { find(m, "B", "ack").guard = {}; }), false);
    add("P08", "responder: deadline 2 -> 1", responder(),
        edited(responder(), [](Tioa& m) { inv(m, "B") = guard("x<=1"); }), true);
    add("P09", "responder: answers nack", responder(),
        edited(responder(), [](Tioa& m) { find(m, "B", "ack").action = "nack"; }), false);
    add("P10", "responder: ack only at exactly 2", responder(),
        edited(responder(), [](Tioa& m) { find(m, "B", "ack").guard = guard("x==2"); }), true);
    add("P11", "responder: ignores req", responder(),
        edited(responder(), [](Tioa& m) { std::erase_if(m.edges, [](const Edge& e) { return e.action == "req"; }); }),
        false);
    add("P12", "worker: heartbeat a unit early", worker(),
        edited(worker(), [](Tioa& m) { find(m, "Idle", "beat").guard = guard("y==3"); }), false);
    add("P13", "worker: job ends without resetting y", worker(),
        edited(worker(), [](Tioa& m) { find(m, "Busy", "done").resets.clear(); }), false);
    add("P14", "worker: job takes at least 2", worker(),
        edited(worker(), [](Tioa& m) { find(m, "Busy", "done").guard = guard("x>=2"); }), true);
    add("P15", "worker: done guarded by y", worker(),
        edited(worker(), [](Tioa& m) { find(m, "Busy", "done").guard = guard("y>=1"); }), false);
    add("P16", "worker: go does not reset x", worker(),
        edited(worker(), [](Tioa& m) { find(m, "Idle", "go").resets.clear(); }), false);
    add("P17", "buffer: identity", buffer(), buffer(), true);
    add("P18", "blinker: blinks at 1", blinker(),
        edited(blinker(), [](Tioa& m) { find(m, "On", "blink").guard = guard("x==1"); }), false);
    add("P19", "blinker: off lands in On", blinker(),
        edited(blinker(), [](Tioa& m) { find(m, "On", "off").target = "On"; }), false);
    add("P20", "blinker: never blinks before the deadline", blinker(),
        edited(blinker(), [](Tioa& m) { std::erase_if(m.edges, [](const Edge& e) { return e.action == "blink"; }); }),
        true);
    add("P21", "latch: fires without being armed", latch(),
        edited(latch(), [](Tioa& m) {
          std::erase_if(m.edges, [](const Edge& e) { return e.source == "L" && e.action == "set" && e.target == "L"; });
          find(m, "L", "set").guard = {};
        }),
        false);
    add("P22", "latch: clear keeps the flag", latch(),
        edited(latch(), [](Tioa& m) { find(m, "L", "clear").update.clear(); }), false);
    add("P23", "timer: extra early done", timer(),
        edited(timer(), [](Tioa& m) {
          Edge e = find(m, "Wait", "done");
          e.guard = guard("x<1");
          m.edges.push_back(e);
        }),
        false);
    add("P24", "responder: identity", responder(), responder(), true);
    add("P25", "buffer: drains after one put", buffer(),
        edited(buffer(), [](Tioa& m) { find(m, "Q", "get").guard = guard("n>=1, x>=1"); }), false);
    return out;
  }();
  return pairs;
}

}  // namespace mbmt::fixtures
