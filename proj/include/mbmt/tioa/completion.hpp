#pragma once

#include "mbmt/tioa/model.hpp"

namespace mbmt::tioa {

// Routes every undefined input to a universal location. Reuses an existing
// universal location, so completing twice adds nothing.
Tioa demonic_complete(const Tioa& m);

// Adds self-loops (no resets, no updates) for every undefined input.
Tioa angelic_complete(const Tioa& m);

// For every location, every variable valuation within bounds and every
// input, the enabled input edges cover the location invariant.
bool is_input_enabled(const Tioa& m);

}  // namespace mbmt::tioa
