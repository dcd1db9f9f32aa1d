#include "qidm/numeric.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

namespace qidm {

std::string format_scalar(const Rational& x) {
  const BigInt num = numerator(x);
  const BigInt den = denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string format_scalar(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

BigInt pow10(long long k) {
  BigInt r = 1;
  for (long long i = 0; i < k; ++i) r *= 10;
  return r;
}

// Base-10 only. The cpp_int string constructor treats a leading zero as an
// octal prefix, so digits are accumulated by hand.
BigInt parse_signed_decimal(std::string_view s, const std::string& context) {
  std::size_t pos = 0;
  bool neg = false;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    neg = s[pos] == '-';
    ++pos;
  }
  if (pos == s.size()) throw JsonSchemaError("bad integer: '" + context + "'");
  BigInt r = 0;
  for (; pos < s.size(); ++pos) {
    const char c = s[pos];
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw JsonSchemaError("bad integer: '" + context + "'");
    r *= 10;
    r += c - '0';
  }
  return neg ? BigInt(-r) : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw JsonSchemaError("empty numeric string");

  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    const BigInt num = parse_signed_decimal(s.substr(0, slash), s);
    const BigInt den = parse_signed_decimal(s.substr(slash + 1), s);
    if (den == 0) throw JsonSchemaError("zero denominator in '" + s + "'");
    return Rational(num, den);
  }

  std::size_t pos = 0;
  bool neg = false;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    neg = s[pos] == '-';
    ++pos;
  }
  std::string digits;
  long long frac_len = 0;
  bool seen_digit = false, seen_dot = false;
  for (; pos < s.size(); ++pos) {
    const char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      seen_digit = true;
      if (seen_dot) ++frac_len;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if (c == 'e' || c == 'E') {
      break;
    } else {
      throw JsonSchemaError("bad decimal: '" + s + "'");
    }
  }
  if (!seen_digit) throw JsonSchemaError("bad decimal: '" + s + "'");

  long long exp10 = 0;
  if (pos < s.size()) {  // exponent part
    ++pos;               // skip e/E
    const auto res =
        std::from_chars(s.data() + pos, s.data() + s.size(), exp10);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
      throw JsonSchemaError("bad exponent: '" + s + "'");
  }

  BigInt mantissa = parse_signed_decimal(digits, s);
  if (neg) mantissa = -mantissa;
  const long long shift = exp10 - frac_len;
  if (shift >= 0) return Rational(mantissa * pow10(shift));
  return Rational(mantissa, pow10(-shift));
}

}  // namespace qidm
