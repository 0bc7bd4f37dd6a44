#pragma once

// Scalar policy for the two arithmetic modes.
//
// Exact mode uses GMP rationals (always canonical: reduced, positive
// denominator). Float mode uses double and every zero/sign decision goes
// through a relative tolerance.

#include <gmpxx.h>

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace boxqp {

using Rational = mpq_class;

/// Tolerances consulted only in float mode.
struct Tolerances {
  double sign = 1e-9;  // |g^T y| <= sign * |g| * |y| counts as zero
  double lp = 1e-8;    // phase-1 feasibility
  double rank = 1e-9;  // pivot threshold relative to max |entry|
};

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* name = "exact";

  static bool is_zero(const Rational& v, double /*scale*/ = 1.0, double /*tol*/ = 0.0) {
    return sgn(v) == 0;
  }
  static int sign(const Rational& v, double /*scale*/ = 1.0, double /*tol*/ = 0.0) {
    return sgn(v);
  }
  static double magnitude(const Rational& v) { return std::fabs(v.get_d()); }
  static double to_double(const Rational& v) { return v.get_d(); }
  static Rational from_int(long v) { return Rational(v); }
  static std::string to_string(const Rational& v) { return v.get_str(); }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float";

  static bool is_zero(double v, double scale = 1.0, double tol = 1e-9) {
    return std::fabs(v) <= tol * scale;
  }
  static int sign(double v, double scale = 1.0, double tol = 1e-9) {
    if (is_zero(v, scale, tol)) return 0;
    return v > 0 ? 1 : -1;
  }
  static double magnitude(double v) { return std::fabs(v); }
  static double to_double(double v) { return v; }
  static double from_int(long v) { return static_cast<double>(v); }
  static std::string to_string(double v);
};

inline std::string ScalarTraits<double>::to_string(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class T>
concept ExactScalar = ScalarTraits<T>::exact;

/// Parses "p/d", an integer, or a plain decimal literal ("-1.25", "3e-2")
/// into an exact rational using the literal decimal expansion.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("not a number: \"" + s + "\"");
  };
  if (s.empty()) return fail();

  if (auto slash = s.find('/'); slash != std::string::npos) {
    mpz_class num, den;
    if (num.set_str(s.substr(0, slash), 10) != 0) return fail();
    std::string d = s.substr(slash + 1);
    if (d.empty() || d[0] == '-' || d[0] == '+' || den.set_str(d, 10) != 0) return fail();
    if (den == 0) throw std::invalid_argument("zero denominator in \"" + s + "\"");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (c >= '0' && c <= '9') {
      digits += c;
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (digits.empty()) return fail();
  long exponent = 0;
  if (pos < s.size()) {
    if (s[pos] != 'e' && s[pos] != 'E') return fail();
    std::string e = s.substr(pos + 1);
    if (e.empty()) return fail();
    std::size_t used = 0;
    try {
      exponent = std::stol(e, &used);
    } catch (const std::exception&) {
      return fail();
    }
    if (used != e.size()) return fail();
  }
  mpz_class mant(digits, 10);
  if (negative) mant = -mant;
  long shift = exponent - frac_digits;
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational r = shift >= 0 ? Rational(mant * pow10) : Rational(mant, pow10);
  r.canonicalize();
  return r;
}

/// Converts between modes. Rational -> double rounds; double -> Rational is exact.
template <class To, class From>
To scalar_cast(const From& v) {
  if constexpr (std::is_same_v<To, From>) {
    return v;
  } else if constexpr (std::is_same_v<To, double>) {
    return ScalarTraits<From>::to_double(v);
  } else {
    return Rational(v);
  }
}

}  // namespace boxqp
