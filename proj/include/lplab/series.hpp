#pragma once

// Truncated power series with positive coefficients, their first and second
// quotients p_n = a_{n-1}/a_n and q_n = p_n/p_{n-1}, and certified
// evaluation of phi(x) = f(-x).

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lplab/error.hpp"
#include "lplab/numeric.hpp"

namespace lplab {

enum class TailKind { none, constant_q, partial_theta, q_kummer };

/// Describes the coefficients beyond the stored truncation through their
/// second quotients, so the description survives rescaling of the series.
///   constant_q:    q_n = param for every n beyond the truncation
///   partial_theta: q_n = param (param = a^2)
///   q_kummer:      q_n = (a^n + 1)/(a^(n-1) + 1), param = a
struct TailModel {
  TailKind kind = TailKind::none;
  Rational param = 0;

  bool modeled() const { return kind != TailKind::none; }
  /// q_n of the modeled function. Throws BadParameter for TailKind::none.
  Rational quotient(long n) const;
  /// True when every modeled q_n is >= 1, so p_n never decreases beyond
  /// the truncation.
  bool quotients_at_least_one() const;
  std::string describe() const;
};

TailModel constant_tail(Rational q_limit);
TailModel partial_theta_tail(Rational a_squared);
TailModel q_kummer_tail(Rational a);

/// Coefficients a_0..a_N, all strictly positive.
template <class T>
class Series {
 public:
  Series(std::vector<T> coefficients, TailModel tail = {});

  const std::vector<T>& coefficients() const { return coeffs_; }
  const T& operator[](std::size_t k) const { return coeffs_[k]; }
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const TailModel& tail() const { return tail_; }
  bool is_normalized() const { return coeffs_[0] == 1 && coeffs_[1] == 1; }

  /// Copy truncated or extended to degree n; extension follows the tail
  /// model and throws BadParameter when there is none.
  Series resized(long n) const;

 private:
  std::vector<T> coeffs_;
  TailModel tail_;
};

using ExactSeries = Series<Rational>;
using FloatSeries = Series<Real>;

template <class T>
struct QuotientProfile {
  std::vector<T> p_values;  // p_1..p_N
  std::vector<T> q_values;  // q_2..q_N
  bool nondecreasing = true;
  TailModel tail;

  const T& p(long n) const { return p_values.at(static_cast<std::size_t>(n - 1)); }
  const T& q(long n) const { return q_values.at(static_cast<std::size_t>(n - 2)); }
  /// Largest n with q_n available.
  long max_index() const { return static_cast<long>(q_values.size()) + 1; }
};

struct CertifiedValue {
  Real value = 0;
  Real radius = 0;
  long terms = 0;

  Real lower() const { return value - radius; }
  Real upper() const { return value + radius; }
  bool contains(const Real& x) const { return lower() <= x && x <= upper(); }
};

// --- construction --------------------------------------------------------

template <class T>
Series<T> from_coefficients(std::vector<T> coeffs);

/// a_n = a1 (a1/a0)^(n-1) / (q_2^(n-1) q_3^(n-2) ... q_n). Exact mode uses
/// cumulative products; float mode works in log space.
template <class T>
Series<T> from_quotients(const std::vector<T>& q, const T& a0, const T& a1);

/// Degree-n truncation of sum a^(-k^2) z^k with rational a > 1.
ExactSeries partial_theta(const Rational& a, long n);
/// g_a(a z) truncated at degree n, i.e. coefficients (a^2)^(-k(k-1)/2); the
/// normalized form of the partial theta function for a given a^2.
ExactSeries partial_theta_normalized(const Rational& a_squared, long n);
/// sum z^k / ((a^k+1)...(a+1)), a > 1.
ExactSeries q_kummer(const Rational& a, long n);

template <class T>
Series<T> with_tail(const Series<T>& s, TailModel tail);

Series<Real> to_float(const ExactSeries& s);

// --- transforms -----------------------------------------------------------

template <class T>
QuotientProfile<T> quotients(const Series<T>& s, double mono_slack = 0.0);

/// g(x) = a_0^{-1} f(a_0 a_1^{-1} x); result has a_0 = a_1 = 1 and the same q_n.
template <class T>
Series<T> normalize(const Series<T>& s);

/// phi(x) = f(-x) = sum (-1)^k a_k x^k, kept as positive a_k plus the sign flag.
template <class T>
struct PhiSeries {
  Series<T> base;
  bool alternating = true;

  /// phi restricted to the stored terms.
  T evaluate(const T& x) const { return section(base.degree(), x); }
  /// S_n(x, phi) = sum_{k<=n} (-1)^k a_k x^k (n <= stored degree).
  T section(long n, const T& x) const;
};

template <class T>
PhiSeries<T> phi_transform(const Series<T>& s);

struct EvalOptions {
  long max_degree = 20000;
};

/// phi(x) with a certified enclosure. With a tail model the series is
/// continued until the terms are verified to decrease in modulus, and the
/// remainder is enclosed between 0 and the first omitted term.
template <class T>
CertifiedValue evaluate_phi_certified(const Series<T>& s, const Rational& x, const Real& target_error,
                                      const EvalOptions& options = {});

extern template class Series<Rational>;
extern template class Series<Real>;

}  // namespace lplab
