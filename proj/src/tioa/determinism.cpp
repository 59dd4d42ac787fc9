#include "mbmt/tioa/determinism.hpp"

#include <deque>
#include <map>

#include "mbmt/tioa/symbolic.hpp"

namespace mbmt::tioa {

using zones::Dbm;
using zones::Federation;

std::string DeterminismCounterexample::to_string() const {
  std::string out = "location " + location + ", action " + action + ", edges " +
                    std::to_string(first_edge) + " and " + std::to_string(second_edge) + " at (";
  bool first = true;
  for (const auto& [name, value] : vars) {
    out += (first ? "" : ", ") + name + "=" + std::to_string(value);
    first = false;
  }
  for (const auto& [name, value] : clocks) {
    out += (first ? "" : ", ") + name + "=" + to_decimal(value);
    first = false;
  }
  return out + ")";
}

namespace {

struct Symbolic {
  std::size_t location;
  std::vector<std::int32_t> vars;
  Dbm zone;
};

}  // namespace

std::optional<DeterminismCounterexample> find_nondeterminism(const Tioa& m) {
  const ClockSpace space = ClockSpace::own(m);
  const std::int32_t max_constant = m.max_clock_constant();
  std::map<std::pair<std::size_t, std::vector<std::int32_t>>, Federation> passed;
  std::deque<Symbolic> waiting;

  auto push = [&](std::size_t loc, std::vector<std::int32_t> vars, Dbm zone) {
    const Dbm inv = invariant_zone(m, loc, space);
    if (!zone.intersect(inv)) return;
    zone.up();
    zone.intersect(inv);
    zone.extrapolate(max_constant);
    auto key = std::make_pair(loc, vars);
    auto [it, inserted] = passed.try_emplace(key, Federation(space.dimension));
    if (it->second.includes(zone)) return;
    it->second.add(zone);
    waiting.push_back({loc, std::move(vars), std::move(zone)});
  };

  std::vector<std::int32_t> init;
  for (const VarDecl& v : m.variables) init.push_back(v.init);
  push(m.location_index(m.initial).value(), init, Dbm::zero(space.dimension));

  while (!waiting.empty()) {
    Symbolic s = std::move(waiting.front());
    waiting.pop_front();
    const std::string& here = m.locations[s.location].id;

    std::vector<std::pair<std::size_t, Federation>> enabled;
    for (std::size_t i = 0; i < m.edges.size(); ++i) {
      const Edge& e = m.edges[i];
      if (e.source != here) continue;
      Federation z = enabled_zone(m, e, s.vars, space);
      z &= s.zone;
      if (!z.is_empty()) enabled.emplace_back(i, std::move(z));
    }

    for (std::size_t a = 0; a < enabled.size(); ++a) {
      for (std::size_t b = a + 1; b < enabled.size(); ++b) {
        const Edge& ea = m.edges[enabled[a].first];
        if (ea.action != m.edges[enabled[b].first].action) continue;
        const Federation both = enabled[a].second & enabled[b].second;
        if (both.is_empty()) continue;
        DeterminismCounterexample cx;
        cx.location = here;
        cx.action = ea.action;
        cx.first_edge = enabled[a].first;
        cx.second_edge = enabled[b].first;
        for (std::size_t v = 0; v < m.variables.size(); ++v) {
          cx.vars.emplace_back(m.variables[v].name, s.vars[v]);
        }
        const auto point = both.zones().front().witness().value();
        for (std::size_t k = 0; k < m.clocks.size(); ++k) {
          cx.clocks.emplace_back(m.clocks[k], point[k + 1]);
        }
        return cx;
      }
    }

    for (const auto& [index, zone] : enabled) {
      const Edge& e = m.edges[index];
      std::vector<std::int32_t> vars = s.vars;
      for (const auto& [var, value] : e.update) vars[m.variable_index(var).value()] = value;
      const std::size_t target = m.location_index(e.target).value();
      for (Dbm z : zone.zones()) {
        for (std::size_t slot : reset_slots(m, e, space)) z.reset(slot);
        push(target, vars, std::move(z));
      }
    }
  }
  return std::nullopt;
}

}  // namespace mbmt::tioa
