#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>

namespace mbmt::zones {

// Upper bound on a clock difference, x_i - x_j < c or x_i - x_j <= c.
//
// Encoded as 2c | weak so that integer order equals bound order: smaller
// constant first, strict before weak at equal constant. Infinity is even and
// therefore reads as strict.
class Bound {
 public:
  constexpr Bound() = default;

  static constexpr Bound weak(std::int32_t c) { return Bound(c * 2 + 1); }
  static constexpr Bound strict(std::int32_t c) { return Bound(c * 2); }
  static constexpr Bound infinity() { return Bound(kInfinity); }
  static constexpr Bound zero() { return weak(0); }

  constexpr bool is_infinite() const { return raw_ == kInfinity; }
  constexpr bool is_strict() const { return (raw_ & 1) == 0; }
  constexpr std::int32_t value() const { return raw_ >> 1; }
  constexpr std::int32_t raw() const { return raw_; }

  constexpr Bound operator+(Bound other) const {
    if (is_infinite() || other.is_infinite()) return infinity();
    return Bound(((raw_ & ~1) + (other.raw_ & ~1)) | (raw_ & other.raw_ & 1));
  }

  // The complement of x_i - x_j ≺ c as a bound on x_j - x_i.
  constexpr Bound negated() const { return Bound(1 - raw_); }

  constexpr auto operator<=>(const Bound&) const = default;

  std::string to_string() const;

 private:
  explicit constexpr Bound(std::int32_t raw) : raw_(raw) {}

  static constexpr std::int32_t kInfinity =
      std::numeric_limits<std::int32_t>::max() & ~1;

  std::int32_t raw_ = kInfinity;
};

}  // namespace mbmt::zones
