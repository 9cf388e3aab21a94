#pragma once

// Scalar support for the circle-map templates. Two instantiations are used
// throughout: `double` for fast orbit work and `Rational` (GMP) when exact
// periodic-orbit detection matters.

#include <gmpxx.h>

#include <cmath>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>

#include "primend/error.hpp"

namespace primend {

using Rational = mpq_class;

template <typename T>
concept Scalar = std::same_as<T, double> || std::same_as<T, Rational>;

template <Scalar T>
inline constexpr bool is_exact_v = std::same_as<T, Rational>;

inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return v.get_d(); }

inline double floor_of(double v) { return std::floor(v); }
inline Rational floor_of(const Rational& v) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  return Rational(q);
}

/// Integer part and fractional part in [0,1), with v == whole + part up to
/// rounding. For doubles v - floor(v) can round up to exactly 1 when v is a
/// tiny negative number; the carry goes into the integer part.
template <Scalar T>
struct FloorFrac {
  T whole;
  T part;
};

template <Scalar T>
FloorFrac<T> floor_frac(const T& v) {
  FloorFrac<T> r{floor_of(v), T(0)};
  r.part = v - r.whole;
  if constexpr (std::same_as<T, double>) {
    if (r.part >= 1.0) {
      r.part = 0.0;
      r.whole += 1.0;
    }
  }
  return r;
}

template <Scalar T>
T frac(const T& v) {
  return floor_frac(v).part;
}

template <Scalar T>
T from_int(long long n) {
  if constexpr (std::same_as<T, double>) {
    return static_cast<double>(n);
  } else {
    return Rational(mpz_class(std::to_string(n)));
  }
}

/// Exact conversion; every finite double is a dyadic rational.
inline Rational to_rational(double v) {
  if (!std::isfinite(v)) throw Error(ErrorCode::ParseError, "non-finite number");
  return Rational(v);
}

template <Scalar T>
T convert(const Rational& v) {
  if constexpr (std::same_as<T, double>) return v.get_d();
  else return v;
}

template <Scalar T>
T convert(double v) {
  if constexpr (std::same_as<T, double>) return v;
  else return to_rational(v);
}

/// Parses "p/q", "p" or a decimal literal. Decimals are converted through
/// double, so "0.1" becomes the nearest dyadic rational, not 1/10.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.find('/') != std::string::npos || s.find_first_of(".eE") == std::string::npos) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw Error(ErrorCode::ParseError, "bad rational '" + s + "'");
    if (r.get_den() == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
  }
  std::size_t used = 0;
  double d = 0.0;
  try {
    d = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "bad number '" + s + "'");
  }
  if (used != s.size()) throw Error(ErrorCode::ParseError, "bad number '" + s + "'");
  return to_rational(d);
}

inline std::string to_string(const Rational& r) {
  Rational c(r);
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

}  // namespace primend
