#pragma once

#include <optional>
#include <string>

#include "mbmt/zones/rational.hpp"

namespace mbmt::zones {

// A set of non-negative delays {d : lower ⊲ d ⊲ upper}. An absent upper end
// means unbounded.
struct DelayInterval {
  Rational lower{0};
  bool lower_closed = true;
  std::optional<Rational> upper;
  bool upper_closed = false;
  bool empty = false;

  bool contains(const Rational& d) const;

  // Picks a representative: the midpoint when bounded, `lower` when the
  // interval is a point or closed-unbounded, lower + step when open-unbounded.
  Rational representative(const Rational& unbounded_step) const;

  std::string to_string() const;
};

DelayInterval intersect(const DelayInterval& a, const DelayInterval& b);

}  // namespace mbmt::zones
