#include "lplab/series.hpp"

#include <algorithm>

namespace lplab {

// --- TailModel ------------------------------------------------------------

Rational TailModel::quotient(long n) const {
  switch (kind) {
    case TailKind::constant_q:
    case TailKind::partial_theta:
      return param;
    case TailKind::q_kummer: {
      Rational an = pow_int(param, static_cast<unsigned long>(n));
      Rational an1 = pow_int(param, static_cast<unsigned long>(n - 1));
      Rational q = (an + 1) / (an1 + 1);
      return q;
    }
    case TailKind::none:
      break;
  }
  throw Error(ErrorKind::BadParameter, "series has no tail model");
}

bool TailModel::quotients_at_least_one() const {
  switch (kind) {
    case TailKind::constant_q:
    case TailKind::partial_theta:
      return param >= 1;
    case TailKind::q_kummer:
      return param >= 1;
    case TailKind::none:
      break;
  }
  return false;
}

std::string TailModel::describe() const {
  switch (kind) {
    case TailKind::none: return "none";
    case TailKind::constant_q: return "constant_q(" + to_decimal(param) + ")";
    case TailKind::partial_theta: return "partial_theta(a2=" + to_decimal(param) + ")";
    case TailKind::q_kummer: return "q_kummer(a=" + to_decimal(param) + ")";
  }
  return "unknown";
}

TailModel constant_tail(Rational q_limit) {
  if (q_limit <= 0) throw Error(ErrorKind::NonPositiveQuotient, "tail quotient must be positive");
  return {TailKind::constant_q, std::move(q_limit)};
}

TailModel partial_theta_tail(Rational a_squared) {
  if (a_squared <= 1) throw Error(ErrorKind::BadParameter, "partial theta needs a > 1");
  return {TailKind::partial_theta, std::move(a_squared)};
}

TailModel q_kummer_tail(Rational a) {
  if (a <= 1) throw Error(ErrorKind::BadParameter, "q-Kummer needs a > 1");
  return {TailKind::q_kummer, std::move(a)};
}

// --- Series ---------------------------------------------------------------

template <class T>
Series<T>::Series(std::vector<T> coefficients, TailModel tail)
    : coeffs_(std::move(coefficients)), tail_(std::move(tail)) {
  if (coeffs_.size() < 2) throw Error(ErrorKind::DegreeTooSmall, "a series needs a_0 and a_1");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (!(coeffs_[k] > 0))
      throw Error(ErrorKind::NonPositiveCoefficient,
                  "coefficient a_" + std::to_string(k) + " is not positive", static_cast<long>(k));
  }
}

template <class T>
Series<T> Series<T>::resized(long n) const {
  if (n < 1) throw Error(ErrorKind::DegreeTooSmall, "degree must be >= 1");
  std::vector<T> out(coeffs_.begin(), coeffs_.begin() + std::min<long>(n, degree()) + 1);
  if (n > degree()) {
    if (!tail_.modeled())
      throw Error(ErrorKind::BadParameter, "cannot extend a series without a tail model");
    out.reserve(static_cast<std::size_t>(n) + 1);
    for (long k = degree() + 1; k <= n; ++k) {
      const T& prev = out[static_cast<std::size_t>(k - 1)];
      const T& prev2 = out[static_cast<std::size_t>(k - 2)];
      T next = prev * prev / (prev2 * from_rational<T>(tail_.quotient(k)));
      out.push_back(std::move(next));
    }
  }
  return Series<T>(std::move(out), tail_);
}

template class Series<Rational>;
template class Series<Real>;

// --- construction ---------------------------------------------------------

template <class T>
Series<T> from_coefficients(std::vector<T> coeffs) {
  return Series<T>(std::move(coeffs));
}

template Series<Rational> from_coefficients(std::vector<Rational>);
template Series<Real> from_coefficients(std::vector<Real>);

namespace {

template <class T>
void check_quotient_inputs(const std::vector<T>& q, const T& a0, const T& a1) {
  if (!(a0 > 0)) throw Error(ErrorKind::NonPositiveCoefficient, "a0 must be positive", 0);
  if (!(a1 > 0)) throw Error(ErrorKind::NonPositiveCoefficient, "a1 must be positive", 1);
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!(q[i] > 0))
      throw Error(ErrorKind::NonPositiveQuotient, "q_" + std::to_string(i + 2) + " is not positive",
                  static_cast<long>(i + 2));
  }
}

}  // namespace

template <>
Series<Rational> from_quotients(const std::vector<Rational>& q, const Rational& a0,
                                const Rational& a1) {
  check_quotient_inputs(q, a0, a1);
  std::vector<Rational> a{a0, a1};
  a.reserve(q.size() + 2);
  // p_n = p_{n-1} q_n, a_n = a_{n-1} / p_n
  Rational p = a0 / a1;
  for (const Rational& qn : q) {
    p *= qn;
    Rational next = a.back() / p;
    a.push_back(std::move(next));
  }
  return Series<Rational>(std::move(a));
}

template <>
Series<Real> from_quotients(const std::vector<Real>& q, const Real& a0, const Real& a1) {
  check_quotient_inputs(q, a0, a1);
  std::vector<Real> a{a0, a1};
  a.reserve(q.size() + 2);
  // log a_n = log a_1 + (n-1) log(a_1/a_0) - sum_{j=2}^{n} log p_j/p_1 telescoped
  Real log_a = log(a1);
  Real log_p = log(a0) - log(a1);
  for (const Real& qn : q) {
    log_p += log(qn);
    log_a -= log_p;
    a.push_back(exp(log_a));
  }
  return Series<Real>(std::move(a));
}

ExactSeries partial_theta(const Rational& a, long n) {
  if (a <= 1) throw Error(ErrorKind::BadParameter, "partial theta needs a > 1");
  if (n < 1) throw Error(ErrorKind::DegreeTooSmall, "degree must be >= 1");
  std::vector<Rational> c;
  c.reserve(static_cast<std::size_t>(n) + 1);
  Rational inv = 1 / a;
  for (long k = 0; k <= n; ++k) c.push_back(pow_int(inv, static_cast<unsigned long>(k * k)));
  return ExactSeries(std::move(c), partial_theta_tail(a * a));
}

ExactSeries partial_theta_normalized(const Rational& a_squared, long n) {
  if (a_squared <= 1) throw Error(ErrorKind::BadParameter, "partial theta needs a^2 > 1");
  if (n < 1) throw Error(ErrorKind::DegreeTooSmall, "degree must be >= 1");
  std::vector<Rational> c{Rational(1), Rational(1)};
  c.reserve(static_cast<std::size_t>(n) + 1);
  Rational step = 1;  // t^{-(k-1)}
  Rational inv = 1 / a_squared;
  for (long k = 2; k <= n; ++k) {
    step *= inv;
    Rational next = c.back() * step;
    c.push_back(std::move(next));
  }
  return ExactSeries(std::move(c), partial_theta_tail(a_squared));
}

ExactSeries q_kummer(const Rational& a, long n) {
  if (a <= 1) throw Error(ErrorKind::BadParameter, "q-Kummer needs a > 1");
  if (n < 1) throw Error(ErrorKind::DegreeTooSmall, "degree must be >= 1");
  std::vector<Rational> c{Rational(1)};
  c.reserve(static_cast<std::size_t>(n) + 1);
  Rational a_pow = 1;
  for (long k = 1; k <= n; ++k) {
    a_pow *= a;
    Rational next = c.back() / (a_pow + 1);
    c.push_back(std::move(next));
  }
  return ExactSeries(std::move(c), q_kummer_tail(a));
}

template <class T>
Series<T> with_tail(const Series<T>& s, TailModel tail) {
  return Series<T>(s.coefficients(), std::move(tail));
}

template Series<Rational> with_tail(const Series<Rational>&, TailModel);
template Series<Real> with_tail(const Series<Real>&, TailModel);

Series<Real> to_float(const ExactSeries& s) {
  std::vector<Real> c;
  c.reserve(s.coefficients().size());
  for (const Rational& a : s.coefficients()) c.push_back(to_real(a));
  return Series<Real>(std::move(c), s.tail());
}

// --- transforms -------------------------------------------------------------

template <class T>
QuotientProfile<T> quotients(const Series<T>& s, double mono_slack) {
  if (s.degree() < 2) throw Error(ErrorKind::DegreeTooSmall, "quotients need degree >= 2");
  QuotientProfile<T> out;
  out.tail = s.tail();
  const auto& a = s.coefficients();
  out.p_values.reserve(a.size() - 1);
  for (std::size_t n = 1; n < a.size(); ++n) out.p_values.push_back(a[n - 1] / a[n]);
  out.q_values.reserve(a.size() - 2);
  for (std::size_t n = 2; n < a.size(); ++n) {
    T q = a[n - 1] * a[n - 1] / (a[n - 2] * a[n]);
    out.q_values.push_back(std::move(q));
  }
  out.nondecreasing = true;
  for (std::size_t i = 1; i < out.q_values.size(); ++i) {
    bool ok;
    if constexpr (is_exact_v<T>) {
      ok = out.q_values[i - 1] <= out.q_values[i];
    } else {
      ok = out.q_values[i - 1] <= out.q_values[i] + Real(mono_slack);
    }
    if (!ok) {
      out.nondecreasing = false;
      break;
    }
  }
  return out;
}

template QuotientProfile<Rational> quotients(const Series<Rational>&, double);
template QuotientProfile<Real> quotients(const Series<Real>&, double);

template <class T>
Series<T> normalize(const Series<T>& s) {
  // g(x) = f(a0/a1 x)/a0: b_k = a_k (a0/a1)^k / a0
  const auto& a = s.coefficients();
  T ratio = a[0] / a[1];
  T scale = T(1) / a[0];
  std::vector<T> b;
  b.reserve(a.size());
  for (const T& ak : a) {
    b.push_back(ak * scale);
    scale *= ratio;
  }
  b[0] = 1;
  b[1] = 1;
  return Series<T>(std::move(b), s.tail());
}

template Series<Rational> normalize(const Series<Rational>&);
template Series<Real> normalize(const Series<Real>&);

template <class T>
T PhiSeries<T>::section(long n, const T& x) const {
  if (n > base.degree())
    throw Error(ErrorKind::BadParameter, "section index beyond stored degree", n);
  T acc(0);
  for (long k = n; k >= 0; --k) {
    const T& ak = base[static_cast<std::size_t>(k)];
    acc = acc * x;
    if (k % 2 == 0) {
      acc += ak;
    } else {
      acc -= ak;
    }
  }
  return acc;
}

template struct PhiSeries<Rational>;
template struct PhiSeries<Real>;

template <class T>
PhiSeries<T> phi_transform(const Series<T>& s) {
  if (!s.is_normalized())
    throw Error(ErrorKind::NotNormalized, "phi form requires a_0 = a_1 = 1");
  return PhiSeries<T>{s, true};
}

template PhiSeries<Rational> phi_transform(const Series<Rational>&);
template PhiSeries<Real> phi_transform(const Series<Real>&);

// --- certified evaluation ---------------------------------------------------

template <class T>
CertifiedValue evaluate_phi_certified(const Series<T>& s, const Rational& x, const Real& target_error,
                                      const EvalOptions& options) {
  if (x < 0) throw Error(ErrorKind::BadParameter, "evaluation point must be >= 0");
  const long n_stored = s.degree();
  const auto& a = s.coefficients();

  CertifiedValue out;
  if (x == 0) {
    if constexpr (is_exact_v<T>) {
      out.value = to_real(a[0]);
      out.radius = (to_rational(out.value) == a[0]) ? Real(0) : abs(out.value) * unit_roundoff();
    } else {
      out.value = a[0];
      out.radius = 0;
    }
    out.terms = 1;
    return out;
  }

  const Real u = unit_roundoff();
  const Real xr = to_real(x);
  const bool has_tail = s.tail().modeled();
  if (has_tail && !s.tail().quotients_at_least_one())
    throw Error(ErrorKind::TailNotDecreasing, "tail quotients below 1 give no decreasing cut");

  // p_k as Real; beyond the stored degree p_k = p_{k-1} q_k from the model.
  std::vector<Real> p;  // p[k] = p_k, p[0] unused
  p.reserve(static_cast<std::size_t>(n_stored) + 2);
  p.push_back(Real(0));
  for (long k = 1; k <= n_stored; ++k) {
    if constexpr (is_exact_v<T>) {
      Rational ratio = a[static_cast<std::size_t>(k - 1)] / a[static_cast<std::size_t>(k)];
      p.push_back(to_real(ratio));
    } else {
      p.push_back(a[static_cast<std::size_t>(k - 1)] / a[static_cast<std::size_t>(k)]);
    }
  }
  auto p_at = [&](long k) -> const Real& {
    while (static_cast<long>(p.size()) <= k) {
      long next = static_cast<long>(p.size());
      p.push_back(p.back() * to_real(s.tail().quotient(next)));
    }
    return p[static_cast<std::size_t>(k)];
  };

  // Stored range: smallest index from which p_k > x holds up to n_stored.
  long decreasing_from = n_stored + 1;  // terms k >= decreasing_from shrink
  for (long k = n_stored; k >= 1; --k) {
    if (p[static_cast<std::size_t>(k)] > xr) {
      decreasing_from = k;
    } else {
      break;
    }
  }
  // term_k / term_{k-1} = x / p_k, so terms shrink from index m-1 on when
  // p_k > x for every k >= m.

  Real term = to_real(a[0]);
  Real sum = term;
  Real abs_sum = abs(term);
  long k = 0;

  if (!has_tail) {
    for (k = 1; k <= n_stored; ++k) {
      term = term * xr / p[static_cast<std::size_t>(k)];
      if (k % 2 == 1) {
        sum -= term;
      } else {
        sum += term;
      }
      abs_sum += term;
    }
    out.value = sum;
    out.radius = Real(2 * (5 * n_stored + 4)) * u * abs_sum;
    out.terms = n_stored + 1;
    if (out.radius > target_error)
      throw Error(ErrorKind::PrecisionExhausted, "rounding error exceeds target at this precision");
    return out;
  }

  // With a tail: beyond the stored degree p_k is nondecreasing, so the first
  // k > n_stored with p_k > x starts a decreasing run that never ends.
  long cut_min = decreasing_from;
  if (decreasing_from == n_stored + 1) {
    long j = n_stored + 1;
    while (!(p_at(j) > xr)) {
      if (j > options.max_degree)
        throw Error(ErrorKind::TailNotDecreasing, "no decreasing cut within the degree budget",
                    options.max_degree);
      ++j;
    }
    cut_min = j;
  }
  // Sum terms 0..K-1 with K >= cut_min; the remainder R_K lies between 0 and
  // the signed term_K because |term_k| decreases for k >= K-1 >= cut_min-1.
  const Real half_target = target_error / 2;
  for (k = 1;; ++k) {
    if (k > options.max_degree)
      throw Error(ErrorKind::PrecisionExhausted, "tail term not below target within the degree budget",
                  options.max_degree);
    Real next = term * xr / p_at(k);
    if (k >= cut_min && next <= half_target) {
      Real signed_next = (k % 2 == 1) ? Real(-next) : next;
      Real rounding = Real(2 * (5 * k + 4)) * u * (abs_sum + next);
      out.value = sum + signed_next / 2;
      out.radius = next / 2 + rounding;
      out.terms = k;
      if (rounding > half_target)
        throw Error(ErrorKind::PrecisionExhausted, "rounding error exceeds target at this precision");
      return out;
    }
    term = next;
    if (k % 2 == 1) {
      sum -= term;
    } else {
      sum += term;
    }
    abs_sum += term;
  }
}

template CertifiedValue evaluate_phi_certified(const Series<Rational>&, const Rational&, const Real&,
                                               const EvalOptions&);
template CertifiedValue evaluate_phi_certified(const Series<Real>&, const Rational&, const Real&,
                                               const EvalOptions&);

}  // namespace lplab
