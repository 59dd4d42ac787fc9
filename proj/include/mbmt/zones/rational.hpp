#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace mbmt {

// Exact time values. All model constants are integers, so every value the
// engine produces is a small dyadic rational.
using Rational = boost::rational<std::int64_t>;

// Renders with at most `max_fraction_digits` fractional digits. Values whose
// decimal expansion is longer are rounded half away from zero.
std::string to_decimal(const Rational& value, int max_fraction_digits = 6);

// Accepts "12", "-3", "4.5", "0.125"; at most 18 significant digits.
std::optional<Rational> parse_decimal(std::string_view text);

inline double to_double(const Rational& value) {
  return boost::rational_cast<double>(value);
}

}  // namespace mbmt
