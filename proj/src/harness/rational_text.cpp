#include "rational_text.hpp"

#include <charconv>

namespace mbmt::harness::detail {

std::string rational_text(const Rational& r) {
  const std::string decimal = to_decimal(r);
  if (parse_decimal(decimal) == r) return decimal;
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::optional<Rational> parse_rational_text(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  std::int64_t n = 0;
  std::int64_t d = 0;
  const auto num = text.substr(0, slash);
  const auto den = text.substr(slash + 1);
  if (std::from_chars(num.data(), num.data() + num.size(), n).ptr != num.data() + num.size() ||
      std::from_chars(den.data(), den.data() + den.size(), d).ptr != den.data() + den.size() ||
      num.empty() || den.empty() || d <= 0) {
    return std::nullopt;
  }
  return Rational(n, d);
}

}  // namespace mbmt::harness::detail
