#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mbmt/tioa/model.hpp"

namespace mbmt::conformance {

struct OracleResult {
  bool conforms = true;
  // Shortest violating trace when !conforms; consecutive delays are merged.
  std::vector<std::string> trace;
  std::string violation;
  std::size_t states = 0;
};

// Explicit-state check of a completed pair. The model must be deterministic;
// a nondeterministic mutant is explored along every branch. Time moves on a
// grid of 1/denominator; one move is a single action or a delay of up to
// M + 1 grid-multiples, where M is the largest clock constant of either
// model. Clock values above M are clamped to M + 1/denominator. A violation
// is a mutant output the model cannot match, or a one-step mutant delay the
// spec cannot make. Exhaustive only up to `depth` moves and for behaviour
// visible on the grid.
OracleResult discrete_conformance_oracle(const tioa::Tioa& spec_completed,
                                         const tioa::Tioa& mutant_completed, int depth = 10,
                                         int denominator = 2);

}  // namespace mbmt::conformance
