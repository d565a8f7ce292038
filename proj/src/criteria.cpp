#include "lplab/criteria.hpp"

#include <algorithm>
#include <cmath>

#include "lplab/rootcert.hpp"

namespace lplab {

std::string_view to_string(Status s) noexcept {
  switch (s) {
    case Status::satisfied:
      return "satisfied";
    case Status::violated:
      return "violated";
    case Status::inconclusive:
      break;
  }
  return "inconclusive";
}

std::string_view to_string(Overall o) noexcept {
  switch (o) {
    case Overall::not_member:
      return "certified NOT in L-P I (under nondecreasing-q hypothesis)";
    case Overall::no_violation:
      return "no violation found";
    case Overall::inconclusive_only:
      break;
  }
  return "inconclusive";
}

Rational decimal_rational(const Real& x, int digits) { return parse_rational(to_decimal(x, digits)); }

namespace {

CriterionVerdict verdict(std::string id, Status st, std::string details) {
  CriterionVerdict v;
  v.id = std::move(id);
  v.status = st;
  v.details = std::move(details);
  return v;
}

std::string dec(const Rational& q, int digits = 30) { return to_decimal(q, digits); }

/// Coefficients b_k = 1 / (q_2^(k-1) ... q_k) of the normalized series.
template <class T>
std::vector<T> normalized_coefficients(const QuotientProfile<T>& q, long degree) {
  std::vector<T> b{T(1), T(1)};
  T p(1);
  for (long k = 2; k <= degree; ++k) {
    p *= q.q(k);
    b.push_back(b.back() / p);
  }
  return b;
}

template <class T>
T alternating_sum(const std::vector<T>& b, const T& x, long n) {
  T acc(0);
  for (long k = n; k >= 0; --k) {
    acc = acc * x;
    if (k % 2 == 0)
      acc += b[static_cast<std::size_t>(k)];
    else
      acc -= b[static_cast<std::size_t>(k)];
  }
  return acc;
}

/// q_{N+1} from the tail must not drop below q_N.
bool tail_keeps_monotone(const ExactSeries& s, const QuotientProfile<Rational>& q) {
  if (!s.tail().modeled()) return true;
  Rational prev = q.q(q.max_index());
  for (long n = q.max_index() + 1; n <= q.max_index() + 8; ++n) {
    Rational next = s.tail().quotient(n);
    if (next < prev) return false;
    prev = next;
  }
  return true;
}

void require_monotone_normalized(const ExactSeries& s, const QuotientProfile<Rational>& q, const char* what) {
  if (!s.is_normalized())
    throw Error(ErrorKind::PreconditionViolated, std::string(what) + " needs a normalized series");
  if (!q.nondecreasing || !tail_keeps_monotone(s, q))
    throw Error(ErrorKind::PreconditionViolated, std::string(what) + " needs nondecreasing q_n");
  if (q.q(2) <= 1) throw Error(ErrorKind::PreconditionViolated, std::string(what) + " needs q_2 > 1");
}

}  // namespace

CertifiedValue certified_phi(const ExactSeries& s, const Rational& x, unsigned bits) {
  for (;; bits *= 2) {
    PrecisionScope scope(bits);
    try {
      return evaluate_phi_certified(s, x, ldexp(Real(1), -static_cast<int>(bits / 2)));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PrecisionExhausted || bits >= 4096) throw;
    }
  }
}

ThresholdResult c_bracket(long n, const Rational& tol, ConstantsCache* cache, const ThetaOptions& options,
                          bool exact_constants) {
  if (exact_constants) {
    if (auto c = known_exact_constant(n)) {
      ThresholdResult r;
      r.n = n;
      r.lo = *c;
      r.hi = *c;
      r.tol = tol;
      return r;
    }
  }
  return cache ? cache->get_c(n, tol, options) : compute_c(n, tol, options);
}

CriterionVerdict unit_interval_positivity(const ExactSeries& s) {
  if (s.degree() < 2) throw Error(ErrorKind::DegreeTooSmall, "need degree >= 2");
  auto q = quotients(s);
  require_monotone_normalized(s, q, "unit_interval_positivity");
  // term_k / term_{k-1} = x / p_k with p_1 = 1 and p_k = q_2 ... q_k.
  Rational p = 1;
  for (long k = 2; k <= q.max_index(); ++k) {
    p *= q.q(k);
    if (!(p > 1))
      return verdict("unit_interval_positivity", Status::inconclusive,
                     "term chain not strictly decreasing at k = " + std::to_string(k));
  }
  if (s.tail().modeled() && !s.tail().quotients_at_least_one())
    return verdict("unit_interval_positivity", Status::inconclusive, "tail quotients below 1");
  return verdict("unit_interval_positivity", Status::satisfied,
                 "1 >= x > x^2/p_2 > ... on [0,1]; alternating series with decreasing terms and "
                 "phi(x) >= 1 - x + x^2/q_2 - x^3/(q_2^2 q_3) > 0");
}

CriterionVerdict find_nonpositive_point(const ExactSeries& s, const CriteriaOptions& options) {
  if (s.degree() < 2) throw Error(ErrorKind::DegreeTooSmall, "need degree >= 2");
  auto q = quotients(s);
  require_monotone_normalized(s, q, "find_nonpositive_point");
  if (options.grid < 2) throw Error(ErrorKind::BadParameter, "grid must be >= 2");
  const Rational q2 = q.q(2);
  const unsigned bits = options.bits;
  PrecisionScope scope(bits);

  struct Sample {
    Rational x;
    CertifiedValue v;
  };
  std::optional<Sample> best;
  std::optional<Sample> witness;
  long evaluated = 0;
  auto visit = [&](const Rational& x) {
    Sample smp{x, certified_phi(s, x, bits)};
    ++evaluated;
    if (!best || smp.v.value < best->v.value) best = smp;
    if (smp.v.upper() <= 0 && (!witness || smp.v.value < witness->v.value)) witness = smp;
    return smp.v.value;
  };

  const Rational step = (q2 - 1) / options.grid;
  long best_index = 1;
  Real best_grid;
  const Rational top = parse_rational(to_decimal(q2, 24, Round::down));
  auto snap = [&](const Rational& x) {
    Rational d = decimal_rational(to_real(x), 24);
    return d > top ? top : d;
  };
  for (long i = 1; i <= options.grid; ++i) {
    Real v = visit(snap(1 + step * i));
    if (i == 1 || v < best_grid) {
      best_grid = v;
      best_index = i;
    }
  }

  // Golden-section refinement around the smallest grid value.
  Real lo = to_real(1 + step * (best_index - 1));
  Real hi = to_real(1 + step * std::min<long>(best_index + 1, options.grid));
  const Real width_stop = to_real(options.refine_tol * q2);
  const Real ratio = (sqrt(Real(5)) - 1) / 2;
  auto f = [&](const Real& xr) {
    Rational x = decimal_rational(xr, 24);
    if (!(x > 1)) x = snap(1 + step / 1024);
    if (x > top) x = top;
    return visit(x);
  };
  Real c = hi - ratio * (hi - lo);
  Real d = lo + ratio * (hi - lo);
  Real fc = f(c);
  Real fd = f(d);
  for (int it = 0; it < 400 && hi - lo > width_stop; ++it) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - ratio * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + ratio * (hi - lo);
      fd = f(d);
    }
  }

  CriterionVerdict v;
  v.id = "nonpositive_point";
  const std::string tail_note = s.tail().modeled() ? "" : " (no tail model: refers to the stored polynomial)";
  if (witness) {
    v.status = s.tail().modeled() ? Status::satisfied : Status::inconclusive;
    v.witness = dec(witness->x, 40);
    v.details = "phi(x0) <= " + to_decimal(witness->v.upper(), 6, Round::up) + " certified with x0 in (1, q_2]" +
                tail_note;
  } else {
    v.status = Status::inconclusive;
    v.details = "smallest certified value " + to_decimal(best->v.lower(), 6, Round::down) + " over " +
                std::to_string(evaluated) +
                " points in (1, q_2]; no witness at this resolution, which does not prove absence" + tail_note;
  }
  return v;
}

CriterionVerdict odd_sections_negative(const ExactSeries& s, const Rational& x0, long n_max) {
  if (s.degree() < 2) throw Error(ErrorKind::DegreeTooSmall, "need degree >= 2");
  if (!s.is_normalized()) throw Error(ErrorKind::PreconditionViolated, "odd_sections_negative needs a normalized series");
  auto q = quotients(s);
  if (!(x0 > 1 && x0 <= q.q(2)))
    throw Error(ErrorKind::PreconditionViolated, "x0 must lie in (1, q_2]");
  if (n_max < 0) throw Error(ErrorKind::BadParameter, "n_max must be >= 0");
  if (n_max == 0) return verdict("odd_sections_negative", Status::satisfied, "vacuous: n_max = 0");
  CertifiedValue at = certified_phi(s, x0, 256);
  if (!(at.upper() <= 0))
    throw Error(ErrorKind::PreconditionViolated, "phi(x0) <= 0 is not certified at x0 = " + dec(x0));
  ExactSeries full = s.degree() >= 2 * n_max + 1 ? s : s.resized(2 * n_max + 1);
  auto phi = phi_transform(full);
  for (long n = 1; n <= n_max; ++n) {
    Rational v = phi.section(2 * n + 1, x0);
    if (!(v < 0)) {
      CriterionVerdict out = verdict("odd_sections_negative", Status::violated,
                                     "S_" + std::to_string(2 * n + 1) + "(x0) = " + dec(v) + " is not negative");
      out.witness = dec(x0, 40);
      out.witness_index = n;
      return out;
    }
  }
  CriterionVerdict out = verdict("odd_sections_negative", Status::satisfied,
                                 "S_{2n+1}(x0) < 0 exactly for n = 1.." + std::to_string(n_max));
  out.witness = dec(x0, 40);
  return out;
}

template <class T>
std::pair<T, T> lemma3_gap(const QuotientProfile<T>& q, const T& x, long n) {
  if (n < 1) throw Error(ErrorKind::PreconditionViolated, "n must be >= 1");
  const long top = 2 * n + 1;
  if (q.max_index() < top) throw Error(ErrorKind::PreconditionViolated, "profile too short for q_{2n+1}");
  if (q.q(2) < 3) throw Error(ErrorKind::PreconditionViolated, "needs q_2 >= 3");
  for (long k = 3; k <= top; ++k)
    if (q.q(k) < q.q(k - 1)) throw Error(ErrorKind::PreconditionViolated, "needs nondecreasing q", k);
  if (!(x > 1 && x <= q.q(2))) throw Error(ErrorKind::PreconditionViolated, "x must lie in (1, q_2]");

  auto b = normalized_coefficients(q, top);
  T lhs = alternating_sum(b, x, top);
  const T& big = q.q(top);
  std::vector<T> c{T(1)};
  T step(1);
  for (long k = 1; k <= top; ++k) {
    c.push_back(c.back() / step);
    step *= big;
  }
  T rhs = alternating_sum(c, x, top);
  return {lhs, rhs};
}

template std::pair<Rational, Rational> lemma3_gap(const QuotientProfile<Rational>&, const Rational&, long);
template std::pair<Real, Real> lemma3_gap(const QuotientProfile<Real>&, const Real&, long);

CriterionVerdict theorem1_check(const QuotientProfile<Rational>& q, ConstantsCache* cache,
                                const CriteriaOptions& options) {
  const std::string note = " (index read as q_{2k+1} > c_{2k+1} for each k)";
  if (!q.nondecreasing) return verdict("theorem1", Status::inconclusive, "requires nondecreasing q_n");
  long top = std::min(q.max_index(), options.max_odd_index);
  if (top < 3) return verdict("theorem1", Status::inconclusive, "profile has no odd index >= 3");
  std::vector<long> undecided;
  long checked = 0;
  for (long j = 3; j <= top; j += 2) {
    const Rational& qj = q.q(j);
    ThresholdResult c = c_bracket(j, options.tol, cache, options.theta, options.exact_constants);
    ++checked;
    bool violated = false;
    bool decided = true;
    if (qj <= c.lo) {
      violated = true;
    } else if (qj > c.hi) {
      violated = false;
    } else if (options.exact_tiebreak && qj > 1) {
      // Real-rooted with simple zeros implies t > c_j; not real-rooted implies t < c_j.
      if (!section_real_rooted(j, qj, options.theta)) {
        violated = true;
      } else if (classify_roots(theta_section_scaled(j, qj)).all_simple) {
        violated = false;
      } else {
        decided = false;
      }
    } else {
      decided = false;
    }
    if (!decided) {
      undecided.push_back(j);
      continue;
    }
    if (violated) {
      CriterionVerdict v = verdict("theorem1", Status::violated,
                                   "q_" + std::to_string(j) + " = " + dec(qj) + " <= c_" + std::to_string(j) +
                                       " (bracket [" + to_decimal(c.lo, 20, Round::down) + ", " +
                                       to_decimal(c.hi, 20, Round::up) + "])" + note);
      v.witness = std::to_string((j - 1) / 2);
      v.witness_index = j;
      return v;
    }
  }
  if (!undecided.empty()) {
    std::string list;
    for (long j : undecided) list += (list.empty() ? "" : ", ") + std::to_string(j);
    CriterionVerdict v = verdict("theorem1", Status::inconclusive,
                                 "q_j inside the c_j bracket for j = " + list + "; tighten the tolerance" + note);
    v.witness_index = undecided.front();
    return v;
  }
  return verdict("theorem1", Status::satisfied,
                 "q_j > c_j for every odd j = 3.." + std::to_string(top - (top % 2 == 0 ? 1 : 0)) + note);
}

CriterionVerdict corollary1_check(const QuotientProfile<Rational>& q) {
  if (!q.nondecreasing) return verdict("corollary1", Status::inconclusive, "requires nondecreasing q_n");
  const Rational& q2 = q.q(2);
  if (q2 <= 3) {
    CriterionVerdict v = verdict("corollary1", Status::violated, "q_2 = " + dec(q2) + " <= 3");
    v.witness = dec(q2);
    v.witness_index = 2;
    return v;
  }
  return verdict("corollary1", Status::satisfied, "q_2 = " + dec(q2) + " > 3");
}

std::optional<Rational> q3_bound_exact(const Rational& q2) {
  if (q2 < 3 || q2 >= 4) return std::nullopt;
  Rational disc = q2 * (q2 - 3);
  mpz_class num = disc.get_num();
  mpz_class den = disc.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
  mpz_class rn = sqrt(num);
  mpz_class rd = sqrt(den);
  Rational root(rn, rd);
  root.canonicalize();
  return (-q2 * (2 * q2 - 9) + 2 * (q2 - 3) * root) / (q2 * (4 - q2));
}

Real q3_bound_value(const Rational& q2) {
  Real x = to_real(q2);
  return (-x * (2 * x - 9) + 2 * (x - 3) * sqrt(x * (x - 3))) / (x * (4 - x));
}

CriterionVerdict q3_bound_check(const QuotientProfile<Rational>& q) {
  if (!q.nondecreasing) return verdict("q3_bound", Status::inconclusive, "requires nondecreasing q_n");
  if (q.max_index() < 3) return verdict("q3_bound", Status::inconclusive, "profile has no q_3");
  const Rational& q2 = q.q(2);
  const Rational& q3 = q.q(3);
  if (q2 < 3 || q2 >= 4)
    return verdict("q3_bound", Status::inconclusive, "not applicable: needs 3 <= q_2 < 4, q_2 = " + dec(q2));
  // q3 <= B  <=>  L <= 2 (q2 - 3) sqrt(q2 (q2 - 3)),  L = q3 q2 (4 - q2) + q2 (2 q2 - 9)
  Rational lhs = q3 * q2 * (4 - q2) + q2 * (2 * q2 - 9);
  bool holds = lhs <= 0 || lhs * lhs <= 4 * (q2 - 3) * (q2 - 3) * q2 * (q2 - 3);
  std::string b;
  if (auto exact = q3_bound_exact(q2)) {
    b = dec(*exact);
  } else {
    PrecisionScope scope(256);
    b = to_decimal(q3_bound_value(q2), 30);
  }
  CriterionVerdict v = verdict("q3_bound", holds ? Status::satisfied : Status::violated,
                               "q_3 = " + dec(q3) + (holds ? " <= " : " > ") + "B(q_2) = " + b);
  if (!holds) {
    v.witness = dec(q3);
    v.witness_index = 3;
  }
  return v;
}

NecessaryReport necessary_report(const ExactSeries& s, ConstantsCache* cache, const CriteriaOptions& options) {
  if (!s.is_normalized()) throw Error(ErrorKind::PreconditionViolated, "necessary_report needs a normalized series");
  auto q = quotients(s);
  bool monotone = q.nondecreasing && tail_keeps_monotone(s, q);
  NecessaryReport rep;
  auto gate = [&](const std::string& id) {
    rep.verdicts.push_back(verdict(id, Status::inconclusive, "requires nondecreasing q_n"));
  };
  if (!monotone) {
    for (const char* id : {"corollary1", "theorem1", "q3_bound", "nonpositive_point"}) gate(id);
  } else {
    rep.verdicts.push_back(corollary1_check(q));
    rep.verdicts.push_back(theorem1_check(q, cache, options));
    rep.verdicts.push_back(q3_bound_check(q));
    if (q.q(2) > 1) {
      rep.verdicts.push_back(unit_interval_positivity(s));
      CriterionVerdict np = find_nonpositive_point(s, options);
      std::optional<Rational> x0;
      if (np.witness) x0 = parse_rational(*np.witness);
      bool certified = np.status == Status::satisfied;
      rep.verdicts.push_back(std::move(np));
      if (x0 && certified) rep.verdicts.push_back(odd_sections_negative(s, *x0, options.odd_sections_max));
    } else {
      rep.verdicts.push_back(verdict("nonpositive_point", Status::inconclusive, "needs q_2 > 1"));
    }
  }
  bool any_violated = false;
  bool any_satisfied = false;
  for (const auto& v : rep.verdicts) {
    any_violated |= v.status == Status::violated;
    any_satisfied |= v.status == Status::satisfied;
  }
  rep.overall = any_violated ? Overall::not_member : (any_satisfied ? Overall::no_violation : Overall::inconclusive_only);
  rep.summary = std::string(to_string(rep.overall));
  if (rep.overall == Overall::no_violation)
    rep.summary += "; necessary conditions never certify membership";
  return rep;
}

}  // namespace lplab
