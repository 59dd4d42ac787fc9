#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mbmt/fixtures/sut.hpp"
#include "mbmt/tioa/model.hpp"

namespace mbmt::fixtures {

enum class FaultKind { None, Timing, WrongOutput, MissingReset, WrongUpdate, WrongTarget, Crash };

std::string fault_kind_name(FaultKind kind);

// A CarAlarm SUT with one behavioural fault, and the output policy that
// lets the fault show.
struct FaultVariant {
  std::string id;
  FaultKind kind = FaultKind::None;
  std::string description;
  PolicyKind policy = PolicyKind::Eager;
};

// "reference" first, then F1.., then "crash".
const std::vector<FaultVariant>& car_alarm_variants();
std::optional<FaultVariant> find_variant(std::string_view id);

// The model the variant's SUT runs.
tioa::Tioa variant_model(const FaultVariant& v);

// A ready SUT for the variant; `policy` overrides the variant's own.
ModelSut make_variant_sut(const FaultVariant& v, std::optional<OutputPolicy> policy = std::nullopt);

}  // namespace mbmt::fixtures
