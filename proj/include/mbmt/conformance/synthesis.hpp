#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "mbmt/conformance/strategy.hpp"
#include "mbmt/tioa/model.hpp"

namespace mbmt::conformance {

inline constexpr std::size_t kMaxSweeps = 10'000;

struct SynthesisResult {
  bool conforms = false;
  // Present iff the mutant does not conform.
  std::optional<Strategy> strategy;
  // Fixpoint sweeps used, forcing and cooperative phases together.
  std::size_t sweeps = 0;
};

// Decides whether `mutant` conforms to `spec` (both raw, deterministic,
// valid) and, if not, builds a strategy that drives a faithful SUT of the
// mutant into an observable violation.
//
// The model is completed demonically and the mutant angelically before the
// product is built. A forcing strategy is preferred; when outputs of the
// mutant can always steer away from the violation, the strategy is
// cooperative and marked as such. Throws EngineError past kMaxSweeps.
SynthesisResult synthesize_strategy(const tioa::Tioa& spec, const tioa::Tioa& mutant,
                                    const std::string& mutant_id,
                                    std::size_t max_sweeps = kMaxSweeps);

}  // namespace mbmt::conformance
