#pragma once

#include <string>
#include <vector>

#include "mbmt/tioa/model.hpp"

namespace mbmt::fixtures {

// A small spec/mutant pair with its conformance label. Labels were produced
// by the discrete oracle at depth 10 and are kept fixed here.
struct LabeledPair {
  std::string id;
  std::string note;
  tioa::Tioa spec;
  tioa::Tioa mutant;
  bool conforms = false;
};

const std::vector<LabeledPair>& labeled_pairs();

}  // namespace mbmt::fixtures
