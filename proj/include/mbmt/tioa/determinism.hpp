#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mbmt/tioa/model.hpp"
#include "mbmt/zones/rational.hpp"

namespace mbmt::tioa {

struct DeterminismCounterexample {
  std::string location;
  std::string action;
  std::size_t first_edge = 0;
  std::size_t second_edge = 0;
  std::vector<std::pair<std::string, std::int32_t>> vars;
  std::vector<std::pair<std::string, Rational>> clocks;

  std::string to_string() const;
};

// Forward symbolic exploration of (location, valuation, zone). Returns the
// first reachable state where two edges with the same action are both
// enabled, or nothing when the model is deterministic.
std::optional<DeterminismCounterexample> find_nondeterminism(const Tioa& m);

inline bool is_deterministic(const Tioa& m) { return !find_nondeterminism(m).has_value(); }

}  // namespace mbmt::tioa
