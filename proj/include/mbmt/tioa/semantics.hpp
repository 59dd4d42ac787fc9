#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mbmt/tioa/model.hpp"
#include "mbmt/zones/interval.hpp"
#include "mbmt/zones/rational.hpp"

namespace mbmt::tioa {

// A concrete state. `clocks` has one slot per model clock plus a leading
// reference slot that is always 0, so it can be checked against a Dbm built
// over the model's own clocks.
struct SemState {
  std::size_t location = 0;
  std::vector<std::int32_t> vars;
  std::vector<Rational> clocks;

  bool operator==(const SemState&) const = default;
};

std::string describe(const Tioa& m, const SemState& s);

SemState initial_state(const Tioa& m);

bool holds(Op op, const Rational& lhs, std::int32_t rhs);
bool guard_holds(const Tioa& m, const Guard& g, const SemState& s);
bool invariant_holds(const Tioa& m, std::size_t location, const std::vector<Rational>& clocks);

// Delays d >= 0 that keep the current location invariant satisfied.
zones::DelayInterval admissible_delays(const Tioa& m, const SemState& s);

// Edges from s's location on `action` whose guard holds now and whose target
// invariant holds after resets.
std::vector<std::size_t> enabled_edges(const Tioa& m, const SemState& s, std::string_view action);

std::optional<SemState> step_delay(const Tioa& m, const SemState& s, const Rational& d);

// Throws NondeterminismError when two edges are enabled.
std::optional<SemState> step_action(const Tioa& m, const SemState& s, std::string_view action);

// One successor per enabled edge; more than one only in a nondeterministic model.
std::vector<SemState> step_action_all(const Tioa& m, const SemState& s, std::string_view action);

}  // namespace mbmt::tioa
