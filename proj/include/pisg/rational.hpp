#pragma once

// Exact rational scalar used throughout the library, plus parsing and
// fixed-point display helpers.

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

#include "pisg/errors.hpp"

namespace pisg {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

// Base 10 explicitly: a leading zero would otherwise select octal.
inline Integer decimal(const std::string& digits) {
  Integer v;
  mpz_set_str(v.backend().data(), digits.c_str(), 10);
  return v;
}

inline Integer pow10(unsigned k) {
  Integer r = 1;
  for (unsigned i = 0; i < k; ++i) r *= 10;
  return r;
}

inline Integer parse_integer(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s))
    throw ParseError("not a rational number: '" + std::string(whole) + "'");
  Integer v = decimal(std::string(s));
  return neg ? Integer(-v) : v;
}

}  // namespace detail

// Accepts "p/q", integers, and decimals with an optional exponent
// ("1.6", "-0.25", "2e-3"). Decimals convert exactly: "1.6" -> 8/5.
inline Rational parse_rational(std::string_view text) {
  const std::string_view s = detail::trim(text);
  if (s.empty()) throw ParseError("empty rational literal");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = detail::parse_integer(detail::trim(s.substr(0, slash)), s);
    Integer den = detail::parse_integer(detail::trim(s.substr(slash + 1)), s);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
    return Rational(num, den);
  }

  std::string_view mantissa = s;
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = s.substr(0, e);
    std::string_view exp_part = s.substr(e + 1);
    Integer ev = detail::parse_integer(exp_part, s);
    if (abs(ev) > 4096) throw ParseError("exponent out of range in '" + std::string(s) + "'");
    exponent = ev.convert_to<long>();
  }

  bool neg = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    neg = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  long frac_digits = 0;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    std::string_view ip = mantissa.substr(0, dot);
    std::string_view fp = mantissa.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !detail::all_digits(ip)) ||
        (!fp.empty() && !detail::all_digits(fp)))
      throw ParseError("not a rational number: '" + std::string(s) + "'");
    digits = std::string(ip) + std::string(fp);
    frac_digits = static_cast<long>(fp.size());
  } else {
    if (!detail::all_digits(mantissa))
      throw ParseError("not a rational number: '" + std::string(s) + "'");
    digits = std::string(mantissa);
  }

  Rational value{detail::decimal(digits)};
  long shift = exponent - frac_digits;
  if (shift > 0) value *= detail::pow10(static_cast<unsigned>(shift));
  if (shift < 0) value /= detail::pow10(static_cast<unsigned>(-shift));
  return neg ? Rational(-value) : value;
}

// Canonical text form: "n" for integers, otherwise "p/q" in lowest terms.
inline std::string to_string(const Rational& r) {
  const Integer num = boost::multiprecision::numerator(r);
  const Integer den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Rounds half away from zero to `places` decimals, computed exactly.
inline std::string format_fixed(const Rational& r, unsigned places = 4) {
  const Integer scale = detail::pow10(places);
  const bool neg = r < 0;
  const Rational scaled = (neg ? Rational(-r) : r) * scale + Rational(1, 2);
  const Integer q = boost::multiprecision::numerator(scaled) /
                    boost::multiprecision::denominator(scaled);
  std::string digits = q.str();
  if (places > 0) {
    if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
    digits.insert(digits.size() - places, ".");
  }
  if (neg && q != 0) digits.insert(0, "-");
  return digits;
}

}  // namespace pisg
