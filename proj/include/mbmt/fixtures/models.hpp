#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mbmt/tioa/model.hpp"

namespace mbmt::fixtures {

// The fish retailer: L0/L1, clock x, free in 0..1, coin?, garnish!, tuna!.
std::string_view retailer_document();
tioa::Tioa retailer();

// Door/lock car alarm with an arming delay, a sounding phase that shuts
// itself off, and a shutdown flag.
std::string_view car_alarm_document();
tioa::Tioa car_alarm();

// start? then done! strictly after 5 and by 7 time units.
std::string_view timer_document();
tioa::Tioa timer();

// FNV-1a 64 over the canonical serialization.
std::uint64_t model_hash(const tioa::Tioa& m);

// A reference model by name: "retailer", "car-alarm", "timer".
tioa::Tioa named_model(std::string_view name);

}  // namespace mbmt::fixtures
