#include "lplab/numeric.hpp"

#include <mpfr.h>

#include <cctype>
#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "lplab/error.hpp"

namespace lplab {

namespace {

unsigned digits_for_bits(unsigned bits) {
  return static_cast<unsigned>(std::ceil(static_cast<double>(bits) * 0.30102999566398120));
}

mpfr_rnd_t to_mpfr(Round dir) {
  switch (dir) {
    case Round::down:
      return MPFR_RNDD;
    case Round::up:
      return MPFR_RNDU;
    case Round::nearest:
      break;
  }
  return MPFR_RNDN;
}

}  // namespace

unsigned working_bits() {
  Real probe(0);
  return static_cast<unsigned>(mpfr_get_prec(probe.backend().data()));
}

PrecisionScope::PrecisionScope(unsigned bits, bool allow_lower)
    : saved_digits_(Real::default_precision()) {
  unsigned digits = digits_for_bits(bits);
  if (allow_lower || digits > saved_digits_) Real::default_precision(digits);
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_digits_); }

Real unit_roundoff() {
  Real u(1);
  mpfr_mul_2si(u.backend().data(), u.backend().data(), 1 - static_cast<long>(working_bits()),
               MPFR_RNDN);
  return u;
}

Real to_real(const Rational& q) { return Real(q.get_mpq_t()); }

Real to_real(const Rational& q, Round dir) {
  Real out;
  mpfr_set_q(out.backend().data(), q.get_mpq_t(), to_mpfr(dir));
  return out;
}

Rational to_rational(const Real& x) {
  Rational out;
  mpfr_get_q(out.get_mpq_t(), x.backend().data());
  return out;
}

double to_double(const Rational& q) { return q.get_d(); }

double to_double(const Real& x) { return x.convert_to<double>(); }

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw Error(ErrorKind::ParseError, "empty number");

  auto bad = [&] { return Error(ErrorKind::ParseError, "malformed number '" + s + "'"); };

  if (auto slash = s.find('/'); slash != std::string::npos) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw bad();
    if (q.get_den() == 0) throw bad();
    q.canonicalize();
    return q;
  }

  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_dot = false;
  bool any_digit = false;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      any_digit = true;
      if (seen_dot) --scale;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw bad();
  if (pos < s.size()) {
    if (s[pos] != 'e' && s[pos] != 'E') throw bad();
    ++pos;
    std::size_t used = 0;
    long exponent = 0;
    try {
      exponent = std::stol(s.substr(pos), &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (pos + used != s.size()) throw bad();
    scale += exponent;
  }
  mpz_class mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  Rational q = scale < 0 ? Rational(mantissa, ten_pow) : Rational(mantissa * ten_pow, 1);
  q.canonicalize();
  return q;
}

namespace {

/// sign * 0.mant * 10^e rendered in plain or scientific notation.
std::string format_decimal(bool negative, std::string mant, long e) {
  while (mant.size() > 1 && mant.back() == '0') mant.pop_back();
  std::string out = negative ? "-" : "";
  if (e > 0 && e <= 30) {
    if (static_cast<long>(mant.size()) <= e) {
      out += mant + std::string(static_cast<std::size_t>(e) - mant.size(), '0');
    } else {
      out += mant.substr(0, static_cast<std::size_t>(e)) + "." + mant.substr(static_cast<std::size_t>(e));
    }
  } else if (e <= 0 && e > -6) {
    out += "0." + std::string(static_cast<std::size_t>(-e), '0') + mant;
  } else {
    out += mant.substr(0, 1);
    if (mant.size() > 1) out += "." + mant.substr(1);
    out += "e" + std::to_string(e - 1);
  }
  return out;
}

mpz_class pow10(long k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(k));
  return r;
}

}  // namespace

std::string to_decimal(const Real& x, int digits, Round dir) {
  if (x == 0) return "0";
  mpfr_exp_t exp10 = 0;
  std::unique_ptr<char, void (*)(char*)> raw(
      mpfr_get_str(nullptr, &exp10, 10, static_cast<std::size_t>(digits), x.backend().data(),
                   to_mpfr(dir)),
      mpfr_free_str);
  std::string mant(raw.get());
  bool negative = !mant.empty() && mant[0] == '-';
  if (negative) mant.erase(0, 1);
  return format_decimal(negative, mant, static_cast<long>(exp10));
}

std::string to_decimal(const Rational& q, int digits) { return to_decimal(q, digits, Round::nearest); }

std::string to_decimal(const Rational& q, int digits, Round dir) {
  if (q.get_den() == 1) return q.get_num().get_str();
  if (digits < 1) digits = 1;
  const bool negative = q < 0;
  Rational a = abs(q);
  // e with 10^(e-1) <= a < 10^e
  long e = static_cast<long>(std::floor((static_cast<double>(log2_magnitude(a))) * 0.30102999566398120));
  auto scaled = [&](long k) { return k >= 0 ? Rational(a * pow10(k)) : Rational(a / pow10(-k)); };
  while (scaled(-e) >= 1) ++e;
  while (scaled(1 - e) < 1) --e;
  Rational n = scaled(digits - e);
  mpz_class m = n.get_num() / n.get_den();
  Rational frac = n - Rational(m);
  // Directions refer to the signed value.
  Round mag = dir;
  if (negative && dir == Round::down) mag = Round::up;
  else if (negative && dir == Round::up) mag = Round::down;
  if (frac > 0) {
    if (mag == Round::up || (mag == Round::nearest && frac * 2 >= 1)) ++m;
  }
  mpz_class limit = pow10(digits);
  if (m >= limit) {
    m /= 10;
    ++e;
  }
  if (m == 0) return "0";
  return format_decimal(negative, m.get_str(), e);
}

Real parse_real(std::string_view text, Round dir) { return to_real(parse_rational(text), dir); }

long log2_magnitude(const Rational& q) {
  if (q == 0) return std::numeric_limits<long>::min();
  return static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2)) -
         static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
}

}  // namespace lplab
