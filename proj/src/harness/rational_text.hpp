#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "mbmt/zones/rational.hpp"

namespace mbmt::harness::detail {

// Exact text: a decimal when one exists within 6 places, "n/d" otherwise.
std::string rational_text(const Rational& r);
std::optional<Rational> parse_rational_text(std::string_view text);

}  // namespace mbmt::harness::detail
