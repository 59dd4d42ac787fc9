#include "mbmt/tioa/completion.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "mbmt/tioa/symbolic.hpp"

namespace mbmt::tioa {

using zones::Federation;

namespace {

std::vector<std::size_t> guard_variables(const Tioa& m, const std::string& loc,
                                         const std::string& input) {
  std::set<std::size_t> out;
  for (const Edge& e : m.edges) {
    if (e.source != loc || e.action != input) continue;
    for (const Constraint& c : e.guard) {
      if (const auto v = m.variable_index(c.operand)) out.insert(*v);
    }
  }
  return {out.begin(), out.end()};
}

Federation uncovered(const Tioa& m, std::size_t loc, const std::string& input,
                     const std::vector<std::int32_t>& vars, const ClockSpace& space) {
  Federation rest(invariant_zone(m, loc, space));
  for (const Edge& e : m.edges) {
    if (e.source != m.locations[loc].id || e.action != input) continue;
    rest -= enabled_zone(m, e, vars, space);
    if (rest.is_empty()) break;
  }
  return rest;
}

// Calls emit(guard) once per zone of the uncovered part of (loc, input).
// When the uncovered part depends on variables, each guard is prefixed with
// equalities fixing the relevant variables.
void complete_input(const Tioa& m, std::size_t loc, const std::string& input,
                    const std::function<void(Guard)>& emit) {
  const ClockSpace space = ClockSpace::own(m);
  const auto relevant = guard_variables(m, m.locations[loc].id, input);
  const auto valuations = enumerate_values(m, relevant);
  std::vector<std::int32_t> vars;
  for (const VarDecl& v : m.variables) vars.push_back(v.init);

  std::vector<Federation> rests;
  for (const auto& values : valuations) {
    for (std::size_t k = 0; k < relevant.size(); ++k) vars[relevant[k]] = values[k];
    rests.push_back(uncovered(m, loc, input, vars, space));
  }
  const zones::Dbm context = invariant_zone(m, loc, space);
  const bool uniform = std::all_of(rests.begin(), rests.end(),
                                   [&](const Federation& f) { return f.same_set(rests.front()); });
  if (uniform) {
    for (const zones::Dbm& z : rests.front().zones()) emit(zone_to_guard(m, z, context));
    return;
  }
  for (std::size_t n = 0; n < valuations.size(); ++n) {
    for (const zones::Dbm& z : rests[n].zones()) {
      Guard g;
      for (std::size_t k = 0; k < relevant.size(); ++k) {
        g.push_back({m.variables[relevant[k]].name, Op::Eq, valuations[n][k]});
      }
      for (Constraint& c : zone_to_guard(m, z, context)) g.push_back(std::move(c));
      emit(std::move(g));
    }
  }
}

std::string fresh_id(const Tioa& m, const std::string& base) {
  if (!m.location_index(base)) return base;
  for (int n = 1;; ++n) {
    const std::string id = base + std::to_string(n);
    if (!m.location_index(id)) return id;
  }
}

}  // namespace

Tioa demonic_complete(const Tioa& m) {
  Tioa out = m;
  std::string universal;
  for (const Location& l : m.locations) {
    if (l.kind == LocationKind::Universal) universal = l.id;
  }
  const bool fresh = universal.empty();
  if (fresh) universal = fresh_id(m, "U");

  std::vector<Edge> added;
  for (std::size_t q = 0; q < m.locations.size(); ++q) {
    if (m.locations[q].id == universal) continue;
    for (const std::string& input : m.inputs) {
      complete_input(m, q, input, [&](Guard g) {
        added.push_back({m.locations[q].id, universal, input, Direction::Input, std::move(g), {}, {}});
      });
    }
  }
  out.edges.insert(out.edges.end(), added.begin(), added.end());
  if (fresh) {
    out.locations.push_back({universal, LocationKind::Universal, {}});
    for (const std::string& a : m.alphabet()) {
      out.edges.push_back({universal, universal, a,
                           m.is_input(a) ? Direction::Input : Direction::Output, {}, {}, {}});
    }
  }
  return out;
}

Tioa angelic_complete(const Tioa& m) {
  Tioa out = m;
  for (std::size_t q = 0; q < m.locations.size(); ++q) {
    const std::string& id = m.locations[q].id;
    for (const std::string& input : m.inputs) {
      complete_input(m, q, input, [&](Guard g) {
        out.edges.push_back({id, id, input, Direction::Input, std::move(g), {}, {}});
      });
    }
  }
  return out;
}

bool is_input_enabled(const Tioa& m) {
  const ClockSpace space = ClockSpace::own(m);
  std::vector<std::size_t> all(m.variables.size());
  for (std::size_t v = 0; v < all.size(); ++v) all[v] = v;
  const auto valuations = enumerate_values(m, all);
  for (std::size_t q = 0; q < m.locations.size(); ++q) {
    for (const std::string& input : m.inputs) {
      for (const auto& vars : valuations) {
        if (!uncovered(m, q, input, vars, space).is_empty()) return false;
      }
    }
  }
  return true;
}

}  // namespace mbmt::tioa
