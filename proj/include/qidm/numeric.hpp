#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "qidm/errors.hpp"

namespace qidm {

// Exact backend. All oracle and uniqueness claims run on Rational; the
// float backend is for characteristic-function / FFT work.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

template <class T>
struct backend;

template <>
struct backend<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* name() { return "rational"; }
};

template <>
struct backend<double> {
  static constexpr bool exact = false;
  static constexpr const char* name() { return "float"; }
};

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }

inline double nabs(double x) { return std::fabs(x); }
inline Rational nabs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

inline bool is_zero(double x) { return x == 0.0; }
inline bool is_zero(const Rational& x) { return x.is_zero(); }

// 1 ∧ x²
template <class T>
T min_one_x2(const T& x) {
  T sq = x * x;
  return sq < T(1) ? sq : T(1);
}

// Clamp to [-1, 1]; the truncation used in every Levy-Khintchine exponent here.
template <class T>
T truncate_tau(const T& x) {
  if (x > T(1)) return T(1);
  if (x < T(-1)) return T(-1);
  return x;
}

inline int sign_of(const Rational& x) { return x.is_zero() ? 0 : (x < 0 ? -1 : 1); }
inline int sign_of(double x) { return x == 0.0 ? 0 : (x < 0 ? -1 : 1); }

// Equality under the backend's convention: exact for rationals, absolute
// tolerance for floats (default 1e-9 unless an operation states otherwise).
inline bool scalar_eq(const Rational& a, const Rational& b, double /*tol*/ = 0.0) {
  return a == b;
}
inline bool scalar_eq(double a, double b, double tol = 1e-9) {
  return std::fabs(a - b) <= tol;
}

std::string format_scalar(const Rational& x);
std::string format_scalar(double x);

// Accepts "n", "n/d", and decimal/scientific forms ("-3.25", "1e-3").
Rational parse_rational(std::string_view text);

template <class T>
T parse_scalar(std::string_view text);

template <>
inline Rational parse_scalar<Rational>(std::string_view text) {
  return parse_rational(text);
}
template <>
inline double parse_scalar<double>(std::string_view text) {
  try {
    return std::stod(std::string(text));
  } catch (const std::exception&) {
    throw JsonSchemaError("not a number: '" + std::string(text) + "'");
  }
}

template <class T>
T scalar_from_double(double x);

template <>
inline double scalar_from_double<double>(double x) { return x; }
// Doubles are dyadic rationals; the conversion is exact.
template <>
inline Rational scalar_from_double<Rational>(double x) {
  if (!std::isfinite(x)) throw JsonSchemaError("non-finite weight");
  Rational r(x);
  return r;
}

}  // namespace qidm
