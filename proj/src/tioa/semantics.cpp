#include "mbmt/tioa/semantics.hpp"

#include <cassert>

namespace mbmt::tioa {

std::string describe(const Tioa& m, const SemState& s) {
  std::string out = "(" + m.locations[s.location].id;
  for (std::size_t i = 0; i < m.variables.size(); ++i) {
    out += ", " + m.variables[i].name + "=" + std::to_string(s.vars[i]);
  }
  for (std::size_t i = 0; i < m.clocks.size(); ++i) {
    out += ", " + m.clocks[i] + "=" + to_decimal(s.clocks[i + 1]);
  }
  return out + ")";
}

SemState initial_state(const Tioa& m) {
  SemState s;
  s.location = m.location_index(m.initial).value();
  for (const VarDecl& v : m.variables) s.vars.push_back(v.init);
  s.clocks.assign(m.clocks.size() + 1, Rational(0));
  return s;
}

bool holds(Op op, const Rational& lhs, std::int32_t rhs) {
  const Rational c(rhs);
  switch (op) {
    case Op::Lt: return lhs < c;
    case Op::Le: return lhs <= c;
    case Op::Eq: return lhs == c;
    case Op::Ne: return lhs != c;
    case Op::Ge: return lhs >= c;
    case Op::Gt: return lhs > c;
  }
  return false;
}

namespace {

Rational operand_value(const Tioa& m, const Constraint& c, const std::vector<std::int32_t>& vars,
                       const std::vector<Rational>& clocks) {
  if (const auto k = m.clock_index(c.operand)) return clocks[*k + 1];
  return Rational(vars[m.variable_index(c.operand).value()]);
}

}  // namespace

bool guard_holds(const Tioa& m, const Guard& g, const SemState& s) {
  for (const Constraint& c : g) {
    if (!holds(c.op, operand_value(m, c, s.vars, s.clocks), c.constant)) return false;
  }
  return true;
}

bool invariant_holds(const Tioa& m, std::size_t location, const std::vector<Rational>& clocks) {
  for (const Constraint& c : m.locations[location].invariant) {
    if (!holds(c.op, clocks[m.clock_index(c.operand).value() + 1], c.constant)) return false;
  }
  return true;
}

zones::DelayInterval admissible_delays(const Tioa& m, const SemState& s) {
  zones::DelayInterval out;
  for (const Constraint& c : m.locations[s.location].invariant) {
    zones::DelayInterval piece;
    piece.upper = Rational(c.constant) - s.clocks[m.clock_index(c.operand).value() + 1];
    piece.upper_closed = c.op == Op::Le;
    out = zones::intersect(out, piece);
  }
  return out;
}

namespace {

SemState apply(const Tioa& m, const SemState& s, const Edge& e) {
  SemState next = s;
  next.location = m.location_index(e.target).value();
  for (const std::string& r : e.resets) next.clocks[m.clock_index(r).value() + 1] = 0;
  for (const auto& [var, value] : e.update) next.vars[m.variable_index(var).value()] = value;
  return next;
}

}  // namespace

std::vector<std::size_t> enabled_edges(const Tioa& m, const SemState& s, std::string_view action) {
  std::vector<std::size_t> out;
  const std::string& here = m.locations[s.location].id;
  for (std::size_t i = 0; i < m.edges.size(); ++i) {
    const Edge& e = m.edges[i];
    if (e.source != here || e.action != action || !guard_holds(m, e.guard, s)) continue;
    const SemState next = apply(m, s, e);
    if (invariant_holds(m, next.location, next.clocks)) out.push_back(i);
  }
  return out;
}

std::optional<SemState> step_delay(const Tioa& m, const SemState& s, const Rational& d) {
  assert(d >= 0);
  // Invariants are upper bounds, so holding at the end means holding throughout.
  SemState next = s;
  for (std::size_t i = 1; i < next.clocks.size(); ++i) next.clocks[i] += d;
  if (!invariant_holds(m, next.location, next.clocks)) return std::nullopt;
  return next;
}

std::optional<SemState> step_action(const Tioa& m, const SemState& s, std::string_view action) {
  const auto edges = enabled_edges(m, s, action);
  if (edges.empty()) return std::nullopt;
  if (edges.size() > 1) {
    throw NondeterminismError("two enabled '" + std::string(action) + "' edges in " +
                              describe(m, s) + ": " + m.edges[edges[0]].to_string() + " and " +
                              m.edges[edges[1]].to_string());
  }
  return apply(m, s, m.edges[edges.front()]);
}

std::vector<SemState> step_action_all(const Tioa& m, const SemState& s, std::string_view action) {
  std::vector<SemState> out;
  for (std::size_t e : enabled_edges(m, s, action)) out.push_back(apply(m, s, m.edges[e]));
  return out;
}

}  // namespace mbmt::tioa
