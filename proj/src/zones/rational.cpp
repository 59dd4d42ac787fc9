#include "mbmt/zones/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace mbmt {

std::string to_decimal(const Rational& value, int max_fraction_digits) {
  std::int64_t num = value.numerator();
  const std::int64_t den = value.denominator();
  const bool negative = num < 0;
  if (negative) num = -num;

  std::int64_t whole = num / den;
  std::int64_t rem = num % den;
  std::string digits;
  for (int i = 0; i < max_fraction_digits && rem != 0; ++i) {
    rem *= 10;
    digits.push_back(static_cast<char>('0' + rem / den));
    rem %= den;
  }
  if (rem * 2 >= den && rem != 0) {
    // Round half away from zero, propagating carries.
    int pos = static_cast<int>(digits.size()) - 1;
    while (pos >= 0 && digits[pos] == '9') digits[pos--] = '0';
    if (pos >= 0) {
      ++digits[pos];
    } else {
      ++whole;
    }
  }
  while (!digits.empty() && digits.back() == '0') digits.pop_back();

  std::string out = negative && (whole != 0 || !digits.empty()) ? "-" : "";
  out += std::to_string(whole);
  if (!digits.empty()) out += "." + digits;
  return out;
}

std::optional<Rational> parse_decimal(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::int64_t num = 0;
  std::int64_t den = 1;
  int significant = 0;
  bool any_digit = false;
  bool in_fraction = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c == '.' && !in_fraction) {
      in_fraction = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    if (++significant > 18) return std::nullopt;
    any_digit = true;
    num = num * 10 + (c - '0');
    if (in_fraction) den *= 10;
  }
  if (!any_digit) return std::nullopt;
  return Rational(negative ? -num : num, den);
}

}  // namespace mbmt
