#pragma once

// Scalar backends for the whole library: exact rationals (arbitrary-precision
// integer numerator/denominator) and IEEE doubles with an explicit tolerance
// policy.  Every algorithm is templated on the scalar type; mixing backends in
// one expression is therefore a compile-time error, and conversions go through
// the explicit to_float() helpers.

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

namespace bops {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// |a - b| <= atol + rtol * max(|a|, |b|).  Applies to the float backend only;
// exact scalars compare exactly and ignore the tolerance argument.
struct Tolerance {
  double atol = 1e-10;
  double rtol = 1e-9;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid input: malformed literals, bad shapes, unknown families, ...
class SpecError : public Error {
 public:
  using Error::Error;
};

// A Gram block required by the construction is (numerically) singular.
class QuasiDefiniteError : public Error {
 public:
  QuasiDefiniteError(const std::string& msg, int degree) : Error(msg), degree_(degree) {}
  int degree() const noexcept { return degree_; }

 private:
  int degree_;
};

// An iterative scheme (eigen sweep, quadrature refinement) failed to settle.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool is_exact = true;

  static const char* backend_name() noexcept { return "rational"; }
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_int(long long v) { return Rational(v); }
  static Rational abs(const Rational& a) { return a < 0 ? Rational(-a) : a; }
  static bool equal(const Rational& a, const Rational& b, const Tolerance& = {}) { return a == b; }
  static bool is_zero(const Rational& a, const Tolerance& = {}) { return a.is_zero(); }
  static bool abs_less(const Rational& a, const Rational& b) { return abs(a) < abs(b); }
  static double to_double(const Rational& a) { return a.convert_to<double>(); }

  // "p" for integers, "p/q" otherwise; q is always positive and the fraction
  // is in lowest terms because cpp_rational keeps itself canonical.
  static std::string str(const Rational& a) {
    if (denominator(a) == 1) return numerator(a).str();
    return numerator(a).str() + "/" + denominator(a).str();
  }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool is_exact = false;

  static const char* backend_name() noexcept { return "float"; }
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from_int(long long v) { return static_cast<double>(v); }
  static double abs(double a) { return std::fabs(a); }
  static bool equal(double a, double b, const Tolerance& tol = {}) {
    return std::fabs(a - b) <= tol.atol + tol.rtol * std::fmax(std::fabs(a), std::fabs(b));
  }
  static bool is_zero(double a, const Tolerance& tol = {}) { return std::fabs(a) <= tol.atol; }
  static bool abs_less(double a, double b) { return std::fabs(a) < std::fabs(b); }
  static double to_double(double a) { return a; }

  static std::string str(double a) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", a);
    return std::string(buf);
  }
};

// x^e for integer e >= 0 with the convention 0^0 = 1.
template <class S>
S scalar_pow(const S& x, int e) {
  if (e < 0) throw SpecError("scalar_pow: negative exponent");
  S r = ScalarTraits<S>::one();
  for (int k = 0; k < e; ++k) r = r * x;
  return r;
}

namespace detail {

inline bool parse_big_int(const std::string& s, BigInt& out) {
  if (s.empty()) return false;
  std::size_t k = 0;
  if (s[0] == '+' || s[0] == '-') k = 1;
  if (k == s.size()) return false;
  for (std::size_t i = k; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  // the big-int constructor accepts '-' but not a redundant '+'
  out = BigInt(s[0] == '+' ? s.substr(1) : s);
  return true;
}

}  // namespace detail

// Accepts "p/q", integers, and decimal literals with optional exponent
// ("1/2", "-3", "0.5", "2.75e-3").  Decimal literals convert exactly
// (0.5 -> 1/2, 0.1 -> 1/10); malformed input raises SpecError.
inline Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw SpecError("empty rational literal");

  std::size_t slash = s.find('/');
  if (slash != std::string::npos) {
    BigInt num, den;
    if (!detail::parse_big_int(s.substr(0, slash), num) ||
        !detail::parse_big_int(s.substr(slash + 1), den))
      throw SpecError("malformed fraction literal: '" + text + "'");
    if (den == 0) throw SpecError("zero denominator in '" + text + "'");
    if (den < 0) {  // keep the denominator positive; the ctor rejects it otherwise
      num = -num;
      den = -den;
    }
    return Rational(num, den);
  }

  // [sign] digits [. digits] [ (e|E) [sign] digits ]
  std::string mantissa;
  long long exp10 = 0;
  std::size_t epos = s.find_first_of("eE");
  std::string body = (epos == std::string::npos) ? s : s.substr(0, epos);
  if (epos != std::string::npos) {
    BigInt e;
    if (!detail::parse_big_int(s.substr(epos + 1), e) || e > 4096 || e < -4096)
      throw SpecError("malformed exponent in '" + text + "'");
    exp10 = e.convert_to<long long>();
  }
  std::size_t dot = body.find('.');
  if (dot != std::string::npos) {
    std::string frac = body.substr(dot + 1);
    if (frac.empty()) throw SpecError("malformed decimal literal: '" + text + "'");
    mantissa = body.substr(0, dot) + frac;
    exp10 -= static_cast<long long>(frac.size());
    if (mantissa == "+" || mantissa == "-" || mantissa.empty()) mantissa += "0";
  } else {
    mantissa = body;
  }
  BigInt m;
  if (!detail::parse_big_int(mantissa, m))
    throw SpecError("malformed scalar literal: '" + text + "'");
  Rational r(m);
  BigInt p10 = 1;
  for (long long k = 0; k < (exp10 < 0 ? -exp10 : exp10); ++k) p10 *= 10;
  if (exp10 >= 0)
    r *= Rational(p10);
  else
    r /= Rational(p10);
  return r;
}

// Exact value of the double's binary expansion.
inline Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw SpecError("non-finite value is not a valid scalar");
  return Rational(v);
}

inline double parse_finite_double(const std::string& text) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw SpecError("malformed float literal: '" + text + "'");
  }
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos != text.size()) throw SpecError("malformed float literal: '" + text + "'");
  if (!std::isfinite(v)) throw SpecError("non-finite value is not a valid scalar");
  return v;
}

template <class S>
S parse_scalar(const std::string& text);

template <>
inline Rational parse_scalar<Rational>(const std::string& text) {
  return parse_rational(text);
}

template <>
inline double parse_scalar<double>(const std::string& text) {
  // Allow "p/q" in float mode too, so one spec file can serve both backends.
  std::size_t slash = text.find('/');
  if (slash != std::string::npos)
    return ScalarTraits<Rational>::to_double(parse_rational(text));
  return parse_finite_double(text);
}

}  // namespace bops
