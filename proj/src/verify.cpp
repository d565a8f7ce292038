#include "lplab/verify.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "lplab/criteria.hpp"
#include "lplab/io.hpp"
#include "lplab/rootcert.hpp"
#include "lplab/zerogeom.hpp"

namespace lplab {

namespace {

Rational fraction(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  /// Uniform-ish integer in [lo, hi] from raw generator output.
  long integer(long lo, long hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(rng_() % span);
  }
  /// Rational in [lo, hi] on a grid of random denominator <= max_den.
  Rational rational(const Rational& lo, const Rational& hi, long max_den) {
    long den = integer(1, max_den);
    Rational width = (hi - lo) * den;
    mpz_class steps = width.get_num() / width.get_den();
    long k = integer(0, steps.get_si());
    return lo + fraction(k, den);
  }

 private:
  std::mt19937_64 rng_;
};

std::string join(const std::vector<Rational>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
  return s + "]";
}

long lemma3_suite(Draw& d, long trials, std::ostream& log) {
  long failures = 0;
  for (long t = 0; t < trials; ++t) {
    long n = d.integer(1, 5);
    bool constant = t % 8 == 0;
    std::vector<Rational> q;
    if (constant) {
      q.assign(static_cast<std::size_t>(2 * n), d.rational(3, 6, 1000));
    } else {
      for (long i = 0; i < 2 * n; ++i) q.push_back(d.rational(3, 6, 1000));
      std::sort(q.begin(), q.end());
    }
    Rational x = 1 + (q[0] - 1) * fraction(d.integer(1, 1000000), 1000000);
    auto profile = quotients(from_quotients(q, Rational(1), Rational(1)));
    auto [lhs, rhs] = lemma3_gap(profile, x, n);
    bool ok = constant ? lhs == rhs : lhs >= rhs;
    if (!ok) {
      ++failures;
      log << "FAIL lemma3 trial=" << t << " n=" << n << " q=" << join(q) << " x=" << x.get_str()
          << " lhs=" << lhs.get_str() << " rhs=" << rhs.get_str() << '\n';
    }
  }
  return failures;
}

long roundtrip_suite(Draw& d, long trials, std::ostream& log) {
  long failures = 0;
  for (long t = 0; t < trials; ++t) {
    long len = d.integer(1, 30);
    std::vector<Rational> q;
    for (long i = 0; i < len; ++i) q.push_back(fraction(d.integer(1, 1000000), d.integer(1, 1000000)));
    Rational a0 = fraction(d.integer(1, 1000), d.integer(1, 1000));
    Rational a1 = fraction(d.integer(1, 1000), d.integer(1, 1000));
    ExactSeries s = from_quotients(q, a0, a1);
    std::string why;
    if (quotients(s).q_values != q) why = "quotients(from_quotients(q)) != q";
    if (why.empty() && quotients(normalize(s)).q_values != q) why = "normalize changed q";
    if (why.empty()) {
      std::stringstream buf;
      write_coefficients_csv(buf, s.coefficients());
      if (read_coefficients_csv(buf) != s.coefficients()) why = "coefficient CSV round trip";
    }
    if (why.empty()) {
      std::stringstream buf;
      write_quotients_csv(buf, q);
      if (read_quotients_csv(buf) != q) why = "quotient CSV round trip";
    }
    if (!why.empty()) {
      ++failures;
      log << "FAIL roundtrip trial=" << t << " (" << why << ") q=" << join(q) << " a0=" << a0.get_str()
          << " a1=" << a1.get_str() << '\n';
    }
  }
  return failures;
}

long oracle_suite(Draw& d, long trials, std::ostream& log) {
  long failures = 0;
  for (long t = 0; t < trials; ++t) {
    long deg = d.integer(1, 15);
    std::vector<Rational> c;
    for (long i = 0; i <= deg; ++i) c.emplace_back(d.integer(-10, 10));
    while (c.back() == 0) c.back() = d.integer(-10, 10);
    ExactPolynomial p(c);
    long sturm = classify_roots(p).nonreal;
    PrecisionScope scope(256);
    long solver = count_nonreal(complex_roots(to_float(p), ldexp(Real(1), -128)));
    if (sturm != solver) {
      ++failures;
      log << "FAIL oracle trial=" << t << " coeffs=" << join(c) << " sturm=" << sturm << " solver=" << solver
          << '\n';
    }
  }
  return failures;
}

long lemma4_suite(Draw& d, long trials, ConstantsCache* cache, std::ostream& log) {
  long failures = 0;
  for (long t = 0; t < trials; ++t) {
    Rational a2 = d.rational(Rational(33, 10), 6, 100);
    ExactSeries s = partial_theta_normalized(a2, 60);
    auto q = quotients(s);
    auto threshold = sign_point_threshold(q, cache);
    std::string why;
    if (!threshold) {
      why = "no (j0, m0) pair";
    } else {
      long j_lo = std::max<long>(2, *threshold);
      auto pts = sign_change_points(s, j_lo, j_lo + 4, 64, threshold);
      for (std::size_t i = 0; i < pts.size() && why.empty(); ++i) {
        const auto& p = pts[i];
        if (!p.x) why = "no point for j=" + std::to_string(p.j);
        else if (!(*p.x > p.lo && *p.x < p.hi)) why = "point outside interval j=" + std::to_string(p.j);
        else if (i > 0 && !(*pts[i - 1].x < *p.x)) why = "points not increasing at j=" + std::to_string(p.j);
        else if ((p.j % 2 == 0 ? p.value->lower() : -p.value->upper()) < 0)
          why = "sign not certified at j=" + std::to_string(p.j);
      }
    }
    if (!why.empty()) {
      ++failures;
      log << "FAIL lemma4 trial=" << t << " a2=" << a2.get_str() << " (" << why << ")\n";
    }
  }
  return failures;
}

long theorem2_suite(Draw& d, long trials, ConstantsCache* cache, std::ostream& log) {
  long failures = 0;
  for (long t = 0; t < trials; ++t) {
    Rational a2 = d.rational(Rational(33, 10), Rational(39, 10), 100);
    long n = d.integer(0, 1) ? 40 : 30;
    ExactSeries s = partial_theta_normalized(a2, n);
    NonrealBoundResult b = nonreal_bound(quotients(s), cache);
    EmpiricalCount e = nonreal_empirical(s, n);
    bool ok = b.bound && e.agree && e.count() <= b.bound->bound;
    log << (ok ? "ok" : "FAIL") << " theorem2 trial=" << t << " a2=" << a2.get_str() << " N=" << n
        << " bound=" << (b.bound ? std::to_string(b.bound->bound) : "n/a") << " empirical=" << e.count() << '\n';
    if (!ok) ++failures;
  }
  return failures;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lemma3", "lemma4", "theorem2", "roundtrip", "oracle"};
  return names;
}

long default_trials(const std::string& suite) {
  if (suite == "lemma3") return 1000;
  if (suite == "lemma4") return 5;
  if (suite == "theorem2") return 3;
  if (suite == "roundtrip") return 200;
  if (suite == "oracle") return 500;
  throw Error(ErrorKind::BadParameter, "unknown suite '" + suite + "'");
}

SuiteResult run_suite(const std::string& suite, std::uint64_t seed, long trials, ConstantsCache* cache,
                      std::ostream& log) {
  SuiteResult r;
  r.suite = suite;
  r.seed = seed;
  r.trials = trials < 0 ? default_trials(suite) : trials;
  Draw d(seed);
  if (suite == "lemma3") r.failures = lemma3_suite(d, r.trials, log);
  else if (suite == "lemma4") r.failures = lemma4_suite(d, r.trials, cache, log);
  else if (suite == "theorem2") r.failures = theorem2_suite(d, r.trials, cache, log);
  else if (suite == "roundtrip") r.failures = roundtrip_suite(d, r.trials, log);
  else if (suite == "oracle") r.failures = oracle_suite(d, r.trials, log);
  else throw Error(ErrorKind::BadParameter, "unknown suite '" + suite + "'");
  return r;
}

}  // namespace lplab
