#include "mbmt/zones/bound.hpp"

namespace mbmt::zones {

std::string Bound::to_string() const {
  if (is_infinite()) return "<inf";
  return (is_strict() ? "<" : "<=") + std::to_string(value());
}

}  // namespace mbmt::zones
