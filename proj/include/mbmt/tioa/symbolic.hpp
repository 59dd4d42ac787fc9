#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mbmt/tioa/model.hpp"
#include "mbmt/zones/federation.hpp"

namespace mbmt::tioa {

// Where a model's clocks live inside a (possibly larger) Dbm: clock k of the
// model is Dbm index slots[k].
struct ClockSpace {
  std::size_t dimension = 1;
  std::vector<std::size_t> slots;

  static ClockSpace own(const Tioa& m);
};

bool variables_satisfy(const Tioa& m, const Guard& g, const std::vector<std::int32_t>& vars);

zones::Federation clock_constraint_zone(const Tioa& m, const Constraint& c, const ClockSpace& space);

// Clock part of the guard, or empty when its variable part fails on `vars`.
zones::Federation guard_zone(const Tioa& m, const Guard& g, const std::vector<std::int32_t>& vars,
                             const ClockSpace& space);

zones::Dbm invariant_zone(const Tioa& m, std::size_t location, const ClockSpace& space);

// {v : v[clocks := 0] ∈ target}.
zones::Federation reset_preimage(zones::Federation target, const std::vector<std::size_t>& slots);

std::vector<std::size_t> reset_slots(const Tioa& m, const Edge& e, const ClockSpace& space);

// Valuations (source invariant not included) from which the edge can fire:
// the guard holds and the target invariant holds after the resets.
zones::Federation enabled_zone(const Tioa& m, const Edge& e, const std::vector<std::int32_t>& vars,
                               const ClockSpace& space);

// Clock constraints describing `zone` over the model's own clocks, leaving
// out bounds already implied by `context`. Throws std::logic_error if the
// zone is not a box (surface guards cannot express clock differences).
Guard zone_to_guard(const Tioa& m, const zones::Dbm& zone, const zones::Dbm& context);

// Every valuation of the listed variables, in lexicographic order of values.
std::vector<std::vector<std::int32_t>> enumerate_values(const Tioa& m,
                                                        const std::vector<std::size_t>& vars);

}  // namespace mbmt::tioa
