#pragma once

// Scalar types shared by every module: exact rationals (GMP) for
// certification and variable-precision binary floats (MPFR) for search.

#include <gmpxx.h>

#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <string_view>
#include <type_traits>

namespace lplab {

using Rational = mpq_class;
using Real = boost::multiprecision::mpfr_float;

enum class Mode { exact, floating };

/// Arithmetic configuration. `bits` is the working precision of float mode;
/// `mono_slack` is the tolerance of the nondecreasing test in float mode.
struct Arithmetic {
  Mode mode = Mode::exact;
  unsigned bits = 256;
  double mono_slack = 0.0;
};

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

/// Precision in bits of newly created Real values.
unsigned working_bits();

/// Sets the default Real precision for its lifetime and restores the
/// previous one afterwards. Never lowers an enclosing precision unless
/// `allow_lower` is set.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits, bool allow_lower = false);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_digits_;
};

/// Unit roundoff 2^(1-p) for the current working precision.
Real unit_roundoff();

Real to_real(const Rational& q);
inline Real to_real(const Real& x) { return x; }
inline Real to_real(long v) { return Real(v); }

/// Exact value of a binary float.
Rational to_rational(const Real& x);
inline Rational to_rational(const Rational& x) { return x; }

double to_double(const Rational& q);
double to_double(const Real& x);

/// Parses "p/q", integers, or decimal/scientific notation ("3.25", "1e-9")
/// into an exact rational. Throws Error(ParseError) on malformed input.
Rational parse_rational(std::string_view text);

enum class Round { nearest, down, up };

/// Decimal rendering with `digits` significant digits, using directed
/// rounding when requested (keeps enclosures valid across a text round trip).
std::string to_decimal(const Real& x, int digits = 40, Round dir = Round::nearest);
std::string to_decimal(const Rational& q, int digits = 40);

std::string to_decimal(const Rational& q, int digits, Round dir);

/// Parses a decimal string into a Real with directed rounding.
Real parse_real(std::string_view text, Round dir = Round::nearest);

Real to_real(const Rational& q, Round dir);

/// floor-ish log2 |q| (within one); q = 0 gives LONG_MIN.
long log2_magnitude(const Rational& q);

/// Generic helpers over both scalar types.
template <class T>
T abs_of(const T& x) {
  if constexpr (is_exact_v<T>) {
    return abs(x);
  } else {
    return boost::multiprecision::abs(x);
  }
}

template <class T>
int sign_of(const T& x) {
  if constexpr (is_exact_v<T>) {
    return sgn(x);
  } else {
    return x > 0 ? 1 : (x < 0 ? -1 : 0);
  }
}

/// Exact or rounded conversion of a rational into scalar type T.
template <class T>
T from_rational(const Rational& q) {
  if constexpr (is_exact_v<T>) {
    return q;
  } else {
    return to_real(q);
  }
}

/// Integer power with nonnegative exponent.
template <class T>
T pow_int(T base, unsigned long e) {
  T result(1);
  while (e != 0) {
    if (e & 1UL) result *= base;
    e >>= 1;
    if (e != 0) base *= base;
  }
  return result;
}

}  // namespace lplab
