#include "lplab/rootcert.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace lplab {

namespace {

[[noreturn]] void requires_exact(const char* what) {
  throw Error(ErrorKind::RequiresExactMode, std::string(what) + " needs exact rational coefficients");
}

void require_nonzero(const ExactPolynomial& p) {
  if (p.is_zero()) throw Error(ErrorKind::BadParameter, "zero polynomial");
}

long variations(const std::vector<int>& signs) {
  long count = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

long variations_at(const std::vector<ExactPolynomial>& chain, const Rational& x) {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& f : chain) signs.push_back(sgn(f(x)));
  return variations(signs);
}

long variations_at_infinity(const std::vector<ExactPolynomial>& chain, bool positive) {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& f : chain) {
    int s = sgn(f.leading());
    if (!positive && f.degree() % 2 == 1) s = -s;
    signs.push_back(s);
  }
  return variations(signs);
}

/// Half of a lower bound on the distance from a simple root e of p to the
/// other roots (Cauchy bound applied to p(e + y) / y).
Rational root_free_radius(const ExactPolynomial& p, const Rational& e) {
  std::vector<Rational> c = p.coefficients();
  const long d = p.degree();
  for (long i = 0; i < d; ++i)
    for (long j = d - 1; j >= i; --j) c[static_cast<std::size_t>(j)] += e * c[static_cast<std::size_t>(j + 1)];
  Rational c1 = abs(c[1]);
  Rational m = 0;
  for (long k = 2; k <= d; ++k) m = std::max<Rational>(m, abs(c[static_cast<std::size_t>(k)]));
  if (c1 == 0) throw Error(ErrorKind::BadParameter, "endpoint is a multiple root");
  Rational r = c1 / (c1 + m) / 2;
  return r;
}

}  // namespace

ExactPolynomial square_free_part(const ExactPolynomial& p) {
  require_nonzero(p);
  if (p.degree() <= 0) return ExactPolynomial({Rational(1)});
  ExactPolynomial g = gcd(p, p.derivative());
  return divmod(p, g).first.monic();
}

RealPolynomial square_free_part(const RealPolynomial&) { requires_exact("square_free_part"); }

std::vector<ExactPolynomial> square_free_factors(const ExactPolynomial& p) {
  require_nonzero(p);
  std::vector<ExactPolynomial> factors;
  if (p.degree() <= 0) return factors;
  // Yun's algorithm.
  ExactPolynomial dp = p.derivative();
  ExactPolynomial a = gcd(p, dp);
  ExactPolynomial b = divmod(p, a).first;
  ExactPolynomial c = divmod(dp, a).first;
  ExactPolynomial d = c + (-b.derivative());
  while (b.degree() > 0) {
    ExactPolynomial ai = gcd(b, d);
    factors.push_back(ai.monic());
    ExactPolynomial nb = divmod(b, ai).first;
    c = divmod(d, ai).first;
    b = std::move(nb);
    d = c + (-b.derivative());
  }
  // drop trailing constant factors beyond the highest multiplicity
  while (!factors.empty() && factors.back().degree() == 0) factors.pop_back();
  return factors;
}

std::vector<ExactPolynomial> sturm_chain(const ExactPolynomial& p) {
  require_nonzero(p);
  std::vector<ExactPolynomial> chain{p.sign_normalized()};
  if (p.degree() <= 0) return chain;
  chain.push_back(p.derivative().sign_normalized());
  while (true) {
    auto rem = divmod(chain[chain.size() - 2], chain.back()).second;
    if (rem.is_zero()) break;
    chain.push_back((-rem).sign_normalized());
  }
  return chain;
}

namespace {

/// Count in (lo, hi] using a precomputed chain of the square-free `sf`.
long count_with_chain(const std::vector<ExactPolynomial>& chain, const ExactPolynomial& sf,
                      const std::optional<Rational>& lo, const std::optional<Rational>& hi) {
  std::optional<Rational> a = lo;
  std::optional<Rational> b = hi;
  auto shift_for = [&](const Rational& e) {
    Rational delta = root_free_radius(sf, e);
    if (lo && hi) delta = std::min<Rational>(delta, (*hi - *lo) / 4);
    return delta;
  };
  // (lo, hi]: a root at lo is excluded, a root at hi is included.
  if (a && sf(*a) == 0) a = *a + shift_for(*a);
  if (b && sf(*b) == 0) b = *b + shift_for(*b);

  long va = a ? variations_at(chain, *a) : variations_at_infinity(chain, false);
  long vb = b ? variations_at(chain, *b) : variations_at_infinity(chain, true);
  return va - vb;
}

}  // namespace

long sturm_count(const ExactPolynomial& p, const std::optional<Rational>& lo,
                 const std::optional<Rational>& hi) {
  require_nonzero(p);
  if (lo && hi && !(*lo < *hi)) throw Error(ErrorKind::BadParameter, "sturm_count needs lo < hi");
  if (p.degree() <= 0) return 0;
  auto chain = sturm_chain(p);
  if (chain.back().degree() == 0) return count_with_chain(chain, p, lo, hi);
  ExactPolynomial sf = square_free_part(p);
  return count_with_chain(sturm_chain(sf), sf, lo, hi);
}

long sturm_count(const RealPolynomial&, const std::optional<Rational>&, const std::optional<Rational>&) {
  requires_exact("sturm_count");
}

RootCountReport classify_roots(const ExactPolynomial& p) {
  require_nonzero(p);
  RootCountReport r;
  r.degree = p.degree();
  if (r.degree <= 0) return r;

  auto count_in = [](const ExactPolynomial& f, const std::vector<ExactPolynomial>& chain,
                     RootCountReport& acc, long multiplicity) {
    long total = variations_at_infinity(chain, false) - variations_at_infinity(chain, true);
    long positive = count_with_chain(chain, f, Rational(0), std::nullopt);
    bool zero_root = f(Rational(0)) == 0;
    acc.distinct_real += total;
    acc.real_with_multiplicity += multiplicity * total;
    if (positive > 0) acc.all_nonpositive = false;
    if (positive > 0 || zero_root) acc.all_negative = false;
  };

  auto chain = sturm_chain(p);
  if (chain.back().degree() == 0) {
    count_in(p, chain, r, 1);
  } else {
    r.all_simple = false;
    auto factors = square_free_factors(p);
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (factors[i].degree() > 0)
        count_in(factors[i], sturm_chain(factors[i]), r, static_cast<long>(i + 1));
    }
  }
  r.nonreal = r.degree - r.real_with_multiplicity;
  r.all_real = r.nonreal == 0;
  return r;
}

RootCountReport classify_roots(const RealPolynomial&) { requires_exact("classify_roots"); }

// --- Aberth iteration ---------------------------------------------------------

namespace {

struct EvalResult {
  Complex value;
  Complex derivative;
  Real scale;  // sum |c_k| |z|^k
};

EvalResult evaluate(const RealPolynomial& p, const Complex& z) {
  const auto& c = p.coefficients();
  Complex v(c.back());
  Complex dv(Real(0));
  Real az = z.abs();
  Real scale = abs(c.back());
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    dv = dv * z + v;
    v = v * z + Complex(c[k]);
    scale = scale * az + abs(c[k]);
  }
  return {v, dv, scale};
}

/// Initial approximations on circles whose radii come from the upper convex
/// hull of (k, log|c_k|).
std::vector<Complex> initial_guesses(const RealPolynomial& p, double angle_offset) {
  const auto& c = p.coefficients();
  const long d = p.degree();
  std::vector<long> idx;
  std::vector<double> lg;
  for (long k = 0; k <= d; ++k) {
    if (c[static_cast<std::size_t>(k)] != 0) {
      idx.push_back(k);
      lg.push_back(to_double(log(abs(c[static_cast<std::size_t>(k)]))));
    }
  }
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    while (hull.size() >= 2) {
      std::size_t a = hull[hull.size() - 2];
      std::size_t b = hull.back();
      double cross = (static_cast<double>(idx[b] - idx[a])) * (lg[i] - lg[a]) -
                     (lg[b] - lg[a]) * static_cast<double>(idx[i] - idx[a]);
      if (cross >= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(i);
  }
  std::vector<Complex> z;
  z.reserve(static_cast<std::size_t>(d));
  const double two_pi = 6.283185307179586;
  for (std::size_t h = 1; h < hull.size(); ++h) {
    long i = idx[hull[h - 1]];
    long j = idx[hull[h]];
    long count = j - i;
    double log_r = (lg[hull[h - 1]] - lg[hull[h]]) / static_cast<double>(count);
    Real r = exp(Real(log_r));
    for (long m = 0; m < count; ++m) {
      double theta = two_pi * static_cast<double>(m) / static_cast<double>(count) + two_pi * static_cast<double>(h) / static_cast<double>(d) + angle_offset;
      z.push_back(polar(r, Real(theta)));
    }
  }
  return z;
}

bool aberth(const RealPolynomial& p, std::vector<Complex>& z, const Real& tol, int max_iters) {
  const std::size_t n = z.size();
  const Real u = unit_roundoff();
  std::vector<bool> done(n, false);
  for (int it = 0; it < max_iters; ++it) {
    bool all_done = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      EvalResult e = evaluate(p, z[i]);
      if (e.value.abs() <= tol * e.scale) {
        done[i] = true;
        continue;
      }
      all_done = false;
      if (e.derivative.norm() == 0) {
        z[i] = z[i] + Complex(Real(u * 1024), Real(u * 512)) * (z[i].abs() + 1);
        continue;
      }
      Complex newton = e.value / e.derivative;
      Complex sum(Real(0));
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        Complex diff = z[i] - z[j];
        if (diff.norm() == 0) continue;
        sum += Complex(Real(1)) / diff;
      }
      Complex step = newton / (Complex(Real(1)) - newton * sum);
      z[i] -= step;
      if (step.abs() <= 16 * u * z[i].abs()) done[i] = true;
    }
    if (all_done) return true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    EvalResult e = evaluate(p, z[i]);
    if (!(e.value.abs() <= tol * e.scale) && !done[i]) return false;
  }
  return true;
}

}  // namespace

std::vector<ApproxRoot> complex_roots(const RealPolynomial& p, const Real& tol,
                                      const SolverOptions& options) {
  if (p.degree() < 1) throw Error(ErrorKind::BadParameter, "complex_roots needs degree >= 1");
  // Exact zero roots first.
  const auto& c = p.coefficients();
  std::size_t zeros = 0;
  while (c[zeros] == 0) ++zeros;
  RealPolynomial q(std::vector<Real>(c.begin() + static_cast<long>(zeros), c.end()));

  std::vector<Complex> z;
  if (q.degree() >= 1) {
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> jitter(0.0, 1.0);
    bool ok = false;
    for (int attempt = 0; attempt <= options.restarts && !ok; ++attempt) {
      double offset = 0.4 + (attempt == 0 ? 0.0 : 6.0 * jitter(rng));
      z = initial_guesses(q, offset);
      if (attempt > 0) {
        for (auto& zi : z) zi = zi * Real(1.0 + 0.1 * (jitter(rng) - 0.5));
      }
      ok = aberth(q, z, tol, options.max_iters);
    }
    if (!ok)
      throw Error(ErrorKind::NoConvergence, "Aberth iteration did not converge", options.max_iters);
  }
  const long d = q.degree();

  std::vector<ApproxRoot> roots;
  roots.reserve(static_cast<std::size_t>(p.degree()));
  for (std::size_t k = 0; k < zeros; ++k) roots.push_back({Complex(), Real(0), Real(0), true});
  std::vector<ApproxRoot> rest;
  for (auto& zi : z) {
    EvalResult e = evaluate(q, zi);
    ApproxRoot r;
    r.z = zi;
    r.residual = e.value.abs();
    Real dabs = e.derivative.abs();
    r.inclusion_radius = dabs == 0 ? Real(zi.abs() + 1) : Real(Real(d) * r.residual / dabs);
    Real real_cut = std::max(Real(2 * r.inclusion_radius), Real(tol * (zi.abs() + 1)));
    r.real = abs(zi.im) <= real_cut;
    rest.push_back(std::move(r));
  }

  // Pair the nonreal roots into conjugates; an unmatched one is declared real.
  std::vector<std::size_t> upper;
  std::vector<std::size_t> lower;
  for (std::size_t i = 0; i < rest.size(); ++i) {
    if (rest[i].real) continue;
    (rest[i].z.im > 0 ? upper : lower).push_back(i);
  }
  std::vector<bool> used(rest.size(), false);
  for (std::size_t ui : upper) {
    std::size_t best = rest.size();
    Real best_dist = 0;
    for (std::size_t li : lower) {
      if (used[li]) continue;
      Real dist = (rest[ui].z - rest[li].z.conj()).abs();
      if (best == rest.size() || dist < best_dist) {
        best = li;
        best_dist = dist;
      }
    }
    if (best == rest.size()) {
      rest[ui].real = true;
      continue;
    }
    used[best] = true;
    used[ui] = true;
    Complex avg((rest[ui].z.re + rest[best].z.re) / 2, (rest[ui].z.im - rest[best].z.im) / 2);
    rest[ui].z = avg;
    rest[best].z = avg.conj();
  }
  for (std::size_t li : lower)
    if (!used[li]) rest[li].real = true;
  for (auto& r : rest) {
    if (r.real) r.z.im = 0;
    EvalResult e = evaluate(q, r.z);
    r.residual = e.value.abs();
    roots.push_back(std::move(r));
  }
  return roots;
}

long count_nonreal(const std::vector<ApproxRoot>& roots) {
  return static_cast<long>(std::count_if(roots.begin(), roots.end(), [](const ApproxRoot& r) { return !r.real; }));
}

// --- Hutchinson -----------------------------------------------------------------

template <class T>
HutchinsonVerdict hutchinson_check(const Series<T>& s) {
  auto profile = quotients(s);
  for (long n = 2; n <= profile.max_index(); ++n) {
    if (profile.q(n) < 4) return {false, n};
  }
  return {true, std::nullopt};
}

template HutchinsonVerdict hutchinson_check(const Series<Rational>&);
template HutchinsonVerdict hutchinson_check(const Series<Real>&);

WindowVerdict consecutive_sections_hyperbolic(const ExactSeries& s, long max_window, long scan_degree) {
  if (s.degree() < 2) throw Error(ErrorKind::DegreeTooSmall, "window scan needs degree >= 2");
  if (max_window < 1) throw Error(ErrorKind::BadParameter, "max_window must be >= 1");
  const long top = scan_degree < 0 ? s.degree() : std::min(scan_degree, s.degree());
  WindowVerdict v;
  for (long m = 0; m < top; ++m) {
    for (long n = m + 1; n <= std::min(top, m + max_window); ++n) {
      // z^m (a_m + ... + a_n z^{n-m}); scale by 1/a_m to keep the numbers small
      std::vector<Rational> c;
      c.reserve(static_cast<std::size_t>(n - m + 1));
      const Rational& am = s[static_cast<std::size_t>(m)];
      for (long k = m; k <= n; ++k) {
        Rational ratio = s[static_cast<std::size_t>(k)] / am;
        c.push_back(std::move(ratio));
      }
      RootCountReport rep = classify_roots(ExactPolynomial(std::move(c)));
      ++v.windows_checked;
      if (!rep.all_simple && rep.all_real) ++v.boundary_windows;
      if (!(rep.all_real && rep.all_nonpositive)) {
        v.all_pass = false;
        v.first_failure = std::make_pair(m, n);
        v.failure_report = rep;
        return v;
      }
    }
  }
  return v;
}

WindowVerdict consecutive_sections_hyperbolic(const FloatSeries&, long, long) {
  requires_exact("consecutive_sections_hyperbolic");
}

}  // namespace lplab
