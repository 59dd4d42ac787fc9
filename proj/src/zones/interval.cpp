#include "mbmt/zones/interval.hpp"

namespace mbmt::zones {

bool DelayInterval::contains(const Rational& d) const {
  if (empty) return false;
  if (d < lower || (d == lower && !lower_closed)) return false;
  if (upper && (d > *upper || (d == *upper && !upper_closed))) return false;
  return true;
}

Rational DelayInterval::representative(const Rational& unbounded_step) const {
  if (!upper) return lower_closed ? lower : lower + unbounded_step;
  if (*upper == lower) return lower;
  return (lower + *upper) / 2;
}

std::string DelayInterval::to_string() const {
  if (empty) return "{}";
  std::string out = lower_closed ? "[" : "(";
  out += to_decimal(lower) + ", ";
  out += upper ? to_decimal(*upper) + (upper_closed ? "]" : ")") : "inf)";
  return out;
}

DelayInterval intersect(const DelayInterval& a, const DelayInterval& b) {
  DelayInterval out;
  if (a.empty || b.empty) {
    out.empty = true;
    return out;
  }
  if (a.lower > b.lower) {
    out.lower = a.lower;
    out.lower_closed = a.lower_closed;
  } else if (b.lower > a.lower) {
    out.lower = b.lower;
    out.lower_closed = b.lower_closed;
  } else {
    out.lower = a.lower;
    out.lower_closed = a.lower_closed && b.lower_closed;
  }
  if (!a.upper) {
    out.upper = b.upper;
    out.upper_closed = b.upper_closed;
  } else if (!b.upper || *a.upper < *b.upper) {
    out.upper = a.upper;
    out.upper_closed = a.upper_closed;
  } else if (*b.upper < *a.upper) {
    out.upper = b.upper;
    out.upper_closed = b.upper_closed;
  } else {
    out.upper = a.upper;
    out.upper_closed = a.upper_closed && b.upper_closed;
  }
  if (out.upper && (*out.upper < out.lower ||
                    (*out.upper == out.lower &&
                     !(out.lower_closed && out.upper_closed)))) {
    out.empty = true;
  }
  return out;
}

}  // namespace mbmt::zones
