#include "mbmt/tioa/symbolic.hpp"

#include <stdexcept>

#include "mbmt/tioa/semantics.hpp"

namespace mbmt::tioa {

using zones::Bound;
using zones::Dbm;
using zones::Federation;

ClockSpace ClockSpace::own(const Tioa& m) {
  ClockSpace s;
  s.dimension = m.clocks.size() + 1;
  for (std::size_t k = 0; k < m.clocks.size(); ++k) s.slots.push_back(k + 1);
  return s;
}

bool variables_satisfy(const Tioa& m, const Guard& g, const std::vector<std::int32_t>& vars) {
  for (const Constraint& c : g) {
    if (const auto v = m.variable_index(c.operand)) {
      if (!holds(c.op, Rational(vars[*v]), c.constant)) return false;
    }
  }
  return true;
}

Federation clock_constraint_zone(const Tioa& m, const Constraint& c, const ClockSpace& space) {
  const std::size_t i = space.slots[m.clock_index(c.operand).value()];
  const std::int32_t k = c.constant;
  Dbm z = Dbm::universe(space.dimension);
  switch (c.op) {
    case Op::Lt: z.constrain(i, 0, Bound::strict(k)); break;
    case Op::Le: z.constrain(i, 0, Bound::weak(k)); break;
    case Op::Ge: z.constrain(0, i, Bound::weak(-k)); break;
    case Op::Gt: z.constrain(0, i, Bound::strict(-k)); break;
    case Op::Eq:
      z.constrain(i, 0, Bound::weak(k));
      z.constrain(0, i, Bound::weak(-k));
      break;
    case Op::Ne: {
      Dbm above = z;
      z.constrain(i, 0, Bound::strict(k));
      above.constrain(0, i, Bound::strict(-k));
      Federation out(z);
      out.add(above);
      return out;
    }
  }
  return Federation(z);
}

Federation guard_zone(const Tioa& m, const Guard& g, const std::vector<std::int32_t>& vars,
                      const ClockSpace& space) {
  if (!variables_satisfy(m, g, vars)) return Federation(space.dimension);
  Federation out = Federation::universe(space.dimension);
  for (const Constraint& c : g) {
    if (m.is_clock(c.operand)) out &= clock_constraint_zone(m, c, space);
  }
  return out;
}

Dbm invariant_zone(const Tioa& m, std::size_t location, const ClockSpace& space) {
  Dbm z = Dbm::universe(space.dimension);
  for (const Constraint& c : m.locations[location].invariant) {
    const std::size_t i = space.slots[m.clock_index(c.operand).value()];
    z.constrain(i, 0, c.op == Op::Lt ? Bound::strict(c.constant) : Bound::weak(c.constant));
  }
  return z;
}

Federation reset_preimage(Federation target, const std::vector<std::size_t>& slots) {
  for (std::size_t i : slots) {
    target &= [&] {
      Dbm at_zero = Dbm::universe(target.dimension());
      at_zero.constrain(i, 0, Bound::zero());
      return at_zero;
    }();
    target.free(i);
  }
  return target;
}

std::vector<std::size_t> reset_slots(const Tioa& m, const Edge& e, const ClockSpace& space) {
  std::vector<std::size_t> out;
  for (const std::string& r : e.resets) out.push_back(space.slots[m.clock_index(r).value()]);
  return out;
}

Federation enabled_zone(const Tioa& m, const Edge& e, const std::vector<std::int32_t>& vars,
                        const ClockSpace& space) {
  Federation out = guard_zone(m, e.guard, vars, space);
  if (out.is_empty()) return out;
  const std::size_t target = m.location_index(e.target).value();
  out &= reset_preimage(Federation(invariant_zone(m, target, space)), reset_slots(m, e, space));
  return out;
}

Guard zone_to_guard(const Tioa& m, const Dbm& zone, const Dbm& context) {
  Guard out;
  Dbm rebuilt = context;
  for (std::size_t k = 0; k < m.clocks.size(); ++k) {
    const std::size_t i = k + 1;
    const Bound lo = zone.at(0, i);
    const Bound hi = zone.at(i, 0);
    const bool need_lo = lo < context.at(0, i);
    const bool need_hi = !hi.is_infinite() && hi < context.at(i, 0);
    if (need_lo && need_hi && !lo.is_strict() && !hi.is_strict() && -lo.value() == hi.value()) {
      out.push_back({m.clocks[k], Op::Eq, hi.value()});
    } else {
      if (need_lo) out.push_back({m.clocks[k], lo.is_strict() ? Op::Gt : Op::Ge, -lo.value()});
      if (need_hi) out.push_back({m.clocks[k], hi.is_strict() ? Op::Lt : Op::Le, hi.value()});
    }
    rebuilt.constrain(0, i, lo);
    rebuilt.constrain(i, 0, hi);
  }
  Dbm expected = zone;
  expected.intersect(context);
  if (!(rebuilt == expected)) {
    throw std::logic_error("zone " + zone.to_string() + " needs a clock difference constraint");
  }
  return out;
}

std::vector<std::vector<std::int32_t>> enumerate_values(const Tioa& m,
                                                        const std::vector<std::size_t>& vars) {
  std::vector<std::vector<std::int32_t>> out{{}};
  for (std::size_t v : vars) {
    std::vector<std::vector<std::int32_t>> next;
    for (const auto& prefix : out) {
      for (std::int32_t x = m.variables[v].min; x <= m.variables[v].max; ++x) {
        auto row = prefix;
        row.push_back(x);
        next.push_back(std::move(row));
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace mbmt::tioa
