#include "lplab/zerogeom.hpp"

#include <algorithm>

namespace lplab {

namespace {

Rational quotient_at(const QuotientProfile<Rational>& q, long n) {
  if (n <= q.max_index()) return q.q(n);
  if (!q.tail.modeled())
    throw Error(ErrorKind::InsufficientProfile, "q_" + std::to_string(n) + " is beyond the profile", n);
  return q.tail.quotient(n);
}

ExactPolynomial truncation(const ExactSeries& s, long n) {
  ExactSeries g = normalize(s);
  if (g.degree() != n) g = g.resized(n);
  return ExactPolynomial(g.coefficients());
}

}  // namespace

Rational rho_squared(const QuotientProfile<Rational>& q, long k) {
  if (k < 1) throw Error(ErrorKind::BadParameter, "k must be >= 1");
  Rational prod = 1;
  for (long i = 2; i <= k; ++i) prod *= quotient_at(q, i);
  return prod * prod * quotient_at(q, k + 1);
}

Real rho(const QuotientProfile<Rational>& q, long k) {
  if (k < 1) throw Error(ErrorKind::BadParameter, "k must be >= 1");
  Real lg = log(to_real(quotient_at(q, k + 1))) / 2;
  for (long i = 2; i <= k; ++i) lg += log(to_real(quotient_at(q, i)));
  return exp(lg);
}

DiskCount zeros_in_rho_disk(const ExactSeries& s, long k, long n, unsigned bits) {
  if (!s.tail().modeled()) throw Error(ErrorKind::PreconditionViolated, "disk counts need a tail model");
  if (k < 1) throw Error(ErrorKind::BadParameter, "k must be >= 1");
  if (n < k + 5) throw Error(ErrorKind::PreconditionViolated, "truncation degree must be >= k + 5");
  if (!s.tail().quotients_at_least_one())
    throw Error(ErrorKind::TailNotDecreasing, "tail quotients below 1");
  PrecisionScope scope(bits);
  ExactSeries g = normalize(s).resized(n);
  auto q = quotients(g);
  DiskCount out;
  out.k = k;
  out.truncation_degree = n;
  out.radius = rho(q, k);
  const Real& r = out.radius;

  std::vector<Real> b;
  for (const auto& v : g.coefficients()) b.push_back(to_real(v));
  RealPolynomial poly(b);
  auto roots = complex_roots(poly, ldexp(Real(1), -static_cast<int>(bits / 2)));
  for (const auto& z : roots)
    if (z.z.abs() < r) ++out.zeros_in_disk;

  // Tail beyond N: terms b_j r^j shrink at least by r / p_{N+2} per step.
  Rational p_n = g[static_cast<std::size_t>(n - 1)] / g[static_cast<std::size_t>(n)];
  Rational p_n1 = p_n * s.tail().quotient(n + 1);
  Rational p_n2 = p_n1 * s.tail().quotient(n + 2);
  Real ratio = r / to_real(p_n2);
  const Real u = unit_roundoff();
  Real inflate = Real(1) + u * Real(64 * n);
  if (!(ratio < 1)) {
    out.tail_certified = false;
    out.tail_bound = Real(-1);
    out.note = "tail terms do not shrink on |z| = rho_k";
  } else {
    Real first = to_real(g[static_cast<std::size_t>(n)] / p_n1) * pow_int(r, static_cast<unsigned long>(n + 1));
    out.tail_bound = first / (1 - ratio) * inflate;
  }

  // Lipschitz constant of S_N on the circle and the rounding scale.
  Real lip = 0;
  Real scale = 0;
  {
    Real rp(1);
    for (long j = 0; j <= n; ++j) {
      if (j >= 1) lip += Real(j) * b[static_cast<std::size_t>(j)] * pow_int(r, static_cast<unsigned long>(j - 1));
      scale += b[static_cast<std::size_t>(j)] * rp;
      rp *= r;
    }
  }
  const Real two_pi = 2 * acos(Real(-1));
  for (long m = 4 * n; m <= 64 * n; m *= 2) {
    Real smallest;
    for (long i = 0; i < m; ++i) {
      Complex z = polar(r, two_pi * Real(i) / Real(m));
      Complex v(b.back());
      for (std::size_t j = b.size() - 1; j-- > 0;) v = v * z + Complex(b[j]);
      Real mod = v.abs();
      if (i == 0 || mod < smallest) smallest = mod;
    }
    Real margin = lip * two_pi * r / Real(m);
    Real rounding = Real(8 * n + 8) * u * scale;
    out.samples = m;
    out.min_modulus_on_circle = smallest - margin - rounding;
    if (out.tail_bound >= 0 && out.tail_bound < out.min_modulus_on_circle) {
      out.tail_certified = true;
      break;
    }
  }
  if (!out.tail_certified && out.note.empty()) out.note = "tail bound not below the circle minimum";
  if (out.zeros_in_disk != k)
    out.note += std::string(out.note.empty() ? "" : "; ") + "count differs from k (only large k are covered)";
  return out;
}

std::optional<long> sign_point_threshold(const QuotientProfile<Rational>& q, ConstantsCache* cache,
                                         const Rational& tol, long max_m0) {
  std::optional<long> best;
  for (long m0 = 1; m0 <= max_m0; ++m0) {
    if (best && 2 * m0 >= *best) break;
    if (q.q(q.max_index()) < Rational(323, 100)) break;  // below every c_{2m}
    ThresholdResult c = c_bracket(2 * m0, tol, cache, {}, true);
    for (long j0 = 3; j0 <= q.max_index(); ++j0) {
      if (q.q(j0) >= c.hi) {
        long v = j0 + 2 * m0 - 3;
        if (!best || v < *best) best = v;
        break;
      }
    }
  }
  return best;
}

std::vector<SignPoint> sign_change_points(const ExactSeries& s, long j_lo, long j_hi, long samples,
                                          std::optional<long> min_j) {
  if (!s.is_normalized()) throw Error(ErrorKind::PreconditionViolated, "sign_change_points needs a normalized series");
  if (j_lo < 2 || j_hi < j_lo) throw Error(ErrorKind::BadParameter, "need 2 <= j_lo <= j_hi");
  if (samples < 1) throw Error(ErrorKind::BadParameter, "samples must be >= 1");
  auto q = quotients(s);
  if (!q.nondecreasing || q.q(2) <= 1)
    throw Error(ErrorKind::PreconditionViolated, "sign_change_points needs nondecreasing q_n > 1");
  std::vector<SignPoint> out;
  Rational prod = 1;
  for (long i = 2; i < j_lo; ++i) prod *= quotient_at(q, i);
  for (long j = j_lo; j <= j_hi; ++j) {
    prod *= quotient_at(q, j);
    SignPoint sp;
    sp.j = j;
    sp.lo = prod;
    Rational next = quotient_at(q, j + 1);
    sp.hi = prod * next;
    if (!min_j || j < *min_j) {
      sp.skipped = true;
      sp.note = min_j ? "below the hypothesis threshold j >= " + std::to_string(*min_j)
                      : "no (j0, m0) satisfies the hypothesis";
      out.push_back(std::move(sp));
      continue;
    }
    const int sign = j % 2 == 0 ? 1 : -1;
    PrecisionScope scope(256);
    Real base = to_real(sp.lo);
    Real lstep = log(to_real(next)) / Real(samples + 1);
    std::optional<Real> best_score;
    for (long i = 1; i <= samples; ++i) {
      Rational x = decimal_rational(base * exp(lstep * Real(i)), 30);
      if (!(x > sp.lo && x < sp.hi)) continue;
      CertifiedValue v = certified_phi(s, x, 256);
      Real score = sign > 0 ? v.lower() : -v.upper();  // certified lower bound of (-1)^j phi(x)
      if (score >= 0 && (!best_score || score > *best_score)) {
        best_score = score;
        sp.x = x;
        sp.value = v;
      }
    }
    if (!sp.x) sp.note = "no certified point at this resolution";
    out.push_back(std::move(sp));
  }
  return out;
}

NonrealBoundResult nonreal_bound(const QuotientProfile<Rational>& q, ConstantsCache* cache,
                                 const NonrealBoundOptions& options) {
  NonrealBoundResult res;
  const std::string range_note = "j0 scanned from 2; the sign-point step itself is stated for j0 >= 3";
  if (!q.nondecreasing) {
    res.note = "not applicable: requires nondecreasing q_n";
    return res;
  }
  const Rational& q2 = q.q(2);
  if (q2 * q2 * q2 < 16) {
    res.note = "not applicable: q_2 < 2 * 2^(1/3)";
    return res;
  }
  for (long m0 = 1; m0 <= options.max_m0; ++m0) {
    if (res.bound && 2 * m0 >= res.bound->bound) break;
    if (q.q(q.max_index()) < Rational(323, 100)) break;  // below every c_{2m}
    ThresholdResult c = c_bracket(2 * m0, options.tol, cache, options.theta, true);
    for (long j0 = 2; j0 <= q.max_index(); ++j0) {
      if (q.q(j0) >= c.hi) {
        long value = j0 + 2 * m0 - 2;
        if (!res.bound || value < res.bound->bound) res.bound = NonrealBound{j0, m0, value, q.q(j0), c};
        break;
      }
    }
  }
  res.note = res.bound ? range_note : "not applicable: no q_j reaches any c_{2m} bracket; " + range_note;
  return res;
}

EmpiricalCount nonreal_empirical(const ExactSeries& s, long n, Mode mode, unsigned bits) {
  if (n < 1 || n > 100) throw Error(ErrorKind::BadParameter, "truncation degree must lie in 1..100");
  ExactPolynomial p = truncation(s, n);
  EmpiricalCount out;
  if (mode == Mode::exact) out.exact = classify_roots(p).nonreal;
  PrecisionScope scope(bits);
  auto roots = complex_roots(to_float(p), ldexp(Real(1), -static_cast<int>(bits / 2)));
  out.approx = count_nonreal(roots);
  out.agree = !out.exact || *out.exact == *out.approx;
  return out;
}

}  // namespace lplab
