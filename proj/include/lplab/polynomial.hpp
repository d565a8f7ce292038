#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "lplab/error.hpp"
#include "lplab/numeric.hpp"

namespace lplab {

/// Dense polynomial c_0 + c_1 x + ... + c_d x^d over a field. Trailing zero
/// coefficients are stripped; the zero polynomial has degree -1.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

  const std::vector<T>& coefficients() const { return c_; }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const T& operator[](std::size_t k) const { return c_[k]; }
  const T& leading() const { return c_.back(); }

  template <class X>
  X operator()(const X& x) const {
    X acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + X(*it);
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> d;
    d.reserve(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * T(static_cast<long>(k)));
    return Polynomial(std::move(d));
  }

  Polynomial scaled(const T& s) const {
    std::vector<T> out(c_);
    for (auto& v : out) v *= s;
    return Polynomial(std::move(out));
  }

  Polynomial operator-() const { return scaled(T(-1)); }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<T> out(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
    return Polynomial(std::move(out));
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> out(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(out));
  }

  /// Quotient and remainder of Euclidean division by a nonzero divisor.
  friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) throw Error(ErrorKind::BadParameter, "division by the zero polynomial");
    if (num.degree() < den.degree()) return {Polynomial(), num};
    std::vector<T> rem(num.c_);
    const long dd = den.degree();
    std::vector<T> quot(static_cast<std::size_t>(num.degree() - dd + 1), T(0));
    const T& lead = den.leading();
    for (long k = num.degree() - dd; k >= 0; --k) {
      T factor = rem[static_cast<std::size_t>(k + dd)] / lead;
      if (factor != 0) {
        for (long j = 0; j <= dd; ++j)
          rem[static_cast<std::size_t>(k + j)] -= factor * den.c_[static_cast<std::size_t>(j)];
      }
      rem[static_cast<std::size_t>(k + dd)] = 0;
      quot[static_cast<std::size_t>(k)] = std::move(factor);
    }
    rem.resize(static_cast<std::size_t>(dd));
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
  }

  /// Divides by |leading coefficient| so the leading coefficient is +-1.
  Polynomial sign_normalized() const {
    if (is_zero()) return {};
    T inv = T(1) / abs_of(leading());
    return scaled(inv);
  }

  Polynomial monic() const {
    if (is_zero()) return {};
    T inv = T(1) / leading();
    return scaled(inv);
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<T> c_;
};

using RealPolynomial = Polynomial<Real>;
using ExactPolynomial = Polynomial<Rational>;

template <class T>
Polynomial<T> gcd(Polynomial<T> a, Polynomial<T> b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = r.sign_normalized();
  }
  return a.monic();
}

inline RealPolynomial to_float(const ExactPolynomial& p) {
  std::vector<Real> c;
  c.reserve(p.coefficients().size());
  for (const auto& v : p.coefficients()) c.push_back(to_real(v));
  return RealPolynomial(std::move(c));
}

}  // namespace lplab
