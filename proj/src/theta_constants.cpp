#include "lplab/theta_constants.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "lplab/rootcert.hpp"

namespace lplab {

namespace {

void check_section_args(long n, const Rational& t) {
  if (n < 2) throw Error(ErrorKind::BadParameter, "section index must be >= 2");
  if (t <= 1) throw Error(ErrorKind::BadParameter, "a^2 must exceed 1");
}

unsigned bits_for_width(const Rational& width, unsigned floor_bits) {
  if (width <= 0) return floor_bits;
  long e = -log2_magnitude(width);
  long want = std::max<long>(0, e) + 96;
  return std::max<unsigned>(floor_bits, static_cast<unsigned>(want));
}

struct Eval {
  Real v, d1, d2;
  Real s0, s1, s2;  // sum |c_j| |w|^j and the analogous sums for P', P''
};

/// P_t on [-t, -1] at the working precision, with error bounds.
class ScaledSection {
 public:
  ScaledSection(long n, const Rational& t) : n_(n) {
    Real tr = to_real(t);
    Real inv = Real(1) / tr;
    c_.reserve(static_cast<std::size_t>(n + 1));
    Real c(1);
    Real step(1);
    c_.push_back(c);
    for (long j = 1; j <= n; ++j) {
      c *= step;
      c_.push_back(c);
      step *= inv;
    }
    left_in_ = -to_real(t, Round::down);
    left_out_ = -to_real(t, Round::up);
    Real r = -left_out_;
    m2_ = 0;
    m3_ = 0;
    for (long j = 2; j <= n; ++j) {
      m2_ += Real(j * (j - 1)) * c_[static_cast<std::size_t>(j)] * pow_int(r, static_cast<unsigned long>(j - 2));
      if (j >= 3)
        m3_ += Real(j * (j - 1) * (j - 2)) * c_[static_cast<std::size_t>(j)] *
               pow_int(r, static_cast<unsigned long>(j - 3));
    }
    Real slack = Real(1) + Real(1) / Real(1 << 20);
    m2_ *= slack;
    m3_ *= slack;
    k_ = Real(n * n + 8 * n + 8) * unit_roundoff();
  }

  Eval at(const Real& w) const {
    Eval e;
    Real aw = abs(w);
    e.v = c_.back();
    e.d1 = 0;
    e.d2 = 0;
    e.s0 = c_.back();
    e.s1 = 0;
    e.s2 = 0;
    for (std::size_t k = c_.size() - 1; k-- > 0;) {
      e.d2 = e.d2 * w + e.d1 * 2;
      e.d1 = e.d1 * w + e.v;
      e.v = e.v * w + c_[k];
      e.s2 = e.s2 * aw + e.s1 * 2;
      e.s1 = e.s1 * aw + e.s0;
      e.s0 = e.s0 * aw + c_[k];
    }
    return e;
  }

  Real rad(const Real& s) const { return k_ * s; }
  const Real& m2() const { return m2_; }
  const Real& m3() const { return m3_; }
  const Real& left_in() const { return left_in_; }
  const Real& left_out() const { return left_out_; }
  long degree() const { return n_; }

 private:
  long n_;
  std::vector<Real> c_;
  Real left_in_, left_out_;
  Real m2_, m3_, k_;
};

/// Safeguarded Newton for a zero of P' in [l, r] where P' changes sign.
Real critical_point(const ScaledSection& p, Real l, Real r) {
  Real dl = p.at(l).d1;
  Real w = (l + r) / 2;
  Real u = unit_roundoff();
  for (int it = 0; it < 400; ++it) {
    Eval e = p.at(w);
    if (e.d1 == 0) return w;
    if ((e.d1 > 0) == (dl > 0)) {
      l = w;
      dl = e.d1;
    } else {
      r = w;
    }
    Real next = e.d2 != 0 ? Real(w - e.d1 / e.d2) : Real((l + r) / 2);
    if (!(next > l && next < r)) next = (l + r) / 2;
    Real step = abs(next - w);
    w = next;
    if (step <= u * abs(w) * 4 || r - l <= u * abs(w) * 4) break;
  }
  return w;
}

struct Minimum {
  Real best;     // computed minimum over sampled points
  Real best_w;
  Real upper;    // certified upper bound on the true minimum
  Real lower;    // certified lower bound on the true minimum
  bool lower_known = false;
};

/// Certified bounds for min P_t on [-t, -1]. Cells are accepted once their
/// lower bound reaches `accept(best, upper)`; returning nullopt from it ends
/// the search after the upper bound.
template <class Accept>
Minimum minimize(const ScaledSection& p, const ThetaOptions& options, Accept accept) {
  const long n = p.degree();
  const long cells = 8 * n;
  const Real right(-1);
  std::vector<Real> grid;
  grid.reserve(static_cast<std::size_t>(cells + 1));
  Real span = right - p.left_out();
  for (long i = 0; i <= cells; ++i) grid.push_back(p.left_out() + span * Real(i) / Real(cells));
  grid.front() = p.left_out();
  grid.back() = right;

  Minimum m;
  bool have = false;
  auto consider = [&](const Real& w) {
    Real wc = w < p.left_in() ? p.left_in() : (w > right ? right : w);
    Eval e = p.at(wc);
    Real up = e.v + p.rad(e.s0);
    if (!have || e.v < m.best) {
      m.best = e.v;
      m.best_w = wc;
    }
    if (!have || up < m.upper) m.upper = up;
    have = true;
  };

  std::vector<Real> d1(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    d1[i] = p.at(i == 0 ? p.left_in() : grid[i]).d1;
    consider(i == 0 ? p.left_in() : grid[i]);
  }
  std::vector<Real> crit;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if ((d1[i] < 0 && d1[i + 1] > 0) || (d1[i] > 0 && d1[i + 1] < 0)) {
      Real c = critical_point(p, i == 0 ? p.left_in() : grid[i], grid[i + 1]);
      crit.push_back(c);
      consider(c);
    } else if (d1[i + 1] == 0) {
      crit.push_back(grid[i + 1]);
    }
  }

  std::optional<Real> level = accept(m.best, m.upper);
  if (!level) return m;

  Real floor_h = ldexp(abs(p.left_out()), -static_cast<int>(working_bits() / 2));
  std::vector<std::pair<Real, Real>> stack;
  for (std::size_t i = grid.size() - 1; i-- > 0;) stack.emplace_back(grid[i], grid[i + 1]);
  Real lower;
  bool first = true;
  long budget = options.max_cells;
  while (!stack.empty()) {
    auto [l, r] = stack.back();
    stack.pop_back();
    Real mid = (l + r) / 2;
    Real h = (r - l) / 2;
    Eval e = p.at(mid);
    Real lb;
    Real slope = abs(e.d1) - p.rad(e.s1);
    if (slope > p.m2() * h) {
      Eval el = p.at(l);
      Eval er = p.at(r);
      lb = std::min(el.v - p.rad(el.s0), er.v - p.rad(er.s0));
    } else {
      lb = e.v - p.rad(e.s0) - (abs(e.d1) + p.rad(e.s1)) * h - p.m2() * h * h / 2;
      for (const Real& c : crit) {
        if (c < l || c > r) continue;
        Eval ec = p.at(c);
        if (ec.d2 - p.rad(ec.s2) - p.m3() * (r - l) > 0) {
          Real conv = ec.v - p.rad(ec.s0) - (abs(ec.d1) + p.rad(ec.s1)) * (r - l);
          if (conv > lb) lb = conv;
        }
      }
    }
    if (lb < *level && h > floor_h && budget > 0) {
      --budget;
      stack.emplace_back(mid, r);
      stack.emplace_back(l, mid);
      continue;
    }
    if (first || lb < lower) lower = lb;
    first = false;
  }
  m.lower = std::min(lower, m.upper);
  m.lower_known = true;
  return m;
}

}  // namespace

RealPolynomial theta_section(long n, const Real& a) {
  if (n < 2) throw Error(ErrorKind::BadParameter, "section index must be >= 2");
  if (!(a > 1)) throw Error(ErrorKind::BadParameter, "a must exceed 1");
  std::vector<Real> c;
  c.reserve(static_cast<std::size_t>(n + 1));
  Real inv = Real(1) / a;
  Real inv2 = inv * inv;
  Real value(1);
  Real step = inv;
  for (long j = 0; j <= n; ++j) {
    c.push_back(value);
    value *= step;
    step *= inv2;
  }
  return RealPolynomial(std::move(c));
}

ExactPolynomial theta_section_scaled(long n, const Rational& a_squared) {
  check_section_args(n, a_squared);
  std::vector<Rational> c;
  c.reserve(static_cast<std::size_t>(n + 1));
  Rational inv = 1 / a_squared;
  Rational value = 1;
  Rational step = 1;
  for (long j = 0; j <= n; ++j) {
    c.push_back(value);
    value *= step;
    step *= inv;
  }
  return ExactPolynomial(std::move(c));
}

CertifiedValue min_on_bracket(long n, const Rational& a_squared, const Real& target_radius,
                              const ThetaOptions& options) {
  check_section_args(n, a_squared);
  if (!(target_radius > 0)) throw Error(ErrorKind::BadParameter, "target radius must be positive");
  unsigned bits = options.bits;
  if (target_radius < 1) {
    Real lg = -log2(target_radius);
    bits = std::max<unsigned>(bits, static_cast<unsigned>(lg.convert_to<double>()) + 64);
  }
  PrecisionScope scope(bits);
  ScaledSection p(n, a_squared);
  Real target(target_radius);
  Minimum m = minimize(p, options, [&](const Real& best, const Real&) -> std::optional<Real> {
    return best - target;
  });
  CertifiedValue out;
  out.value = (m.upper + m.lower) / 2;
  out.radius = (m.upper - m.lower) / 2;
  out.radius += out.radius * unit_roundoff() * 4;
  out.terms = n + 1;
  if (out.radius > target_radius)
    throw Error(ErrorKind::PrecisionExhausted, "minimum enclosure wider than requested");
  return out;
}

bool section_real_rooted(long n, const Rational& a_squared, const ThetaOptions& options, long* evaluations) {
  check_section_args(n, a_squared);
  unsigned bits = options.bits;
  for (int round = 0;; ++round) {
    if (evaluations) ++*evaluations;
    PrecisionScope scope(bits);
    ScaledSection p(n, a_squared);
    Minimum m = minimize(p, options, [](const Real& best, const Real& upper) -> std::optional<Real> {
      if (upper <= 0) return std::nullopt;
      Real margin = best - (upper - best);
      if (margin <= 0) return std::nullopt;
      return margin / 2;
    });
    if (m.upper <= 0) return true;
    if (m.lower_known && m.lower > 0) return false;
    // The sampled minimum sits within rounding of zero: test it exactly.
    Rational w = to_rational(m.best_w);
    if (w >= -a_squared && w <= -1 && theta_section_scaled(n, a_squared)(w) <= 0) return true;
    if (bits * 2 > options.max_bits) break;
    bits *= 2;
  }
  return classify_roots(theta_section_scaled(n, a_squared)).all_real;
}

std::optional<Rational> known_exact_constant(long n) {
  if (n == 2) return Rational(4);
  if (n == 3) return Rational(3);
  return std::nullopt;
}

ThresholdResult refine_c(ThresholdResult r, const Rational& tol, const ThetaOptions& options) {
  if (tol <= 0) throw Error(ErrorKind::BadParameter, "tolerance must be positive");
  while (r.width() > tol) {
    ThetaOptions local = options;
    local.bits = bits_for_width(r.width(), options.bits);
    Rational mid = (r.lo + r.hi) / 2;
    if (section_real_rooted(r.n, mid, local, &r.evaluations))
      r.hi = mid;
    else
      r.lo = mid;
  }
  if (r.tol == 0 || tol < r.tol) r.tol = tol;
  return r;
}

ThresholdResult compute_c(long n, const Rational& tol, const ThetaOptions& options) {
  if (n < 2) throw Error(ErrorKind::BadParameter, "section index must be >= 2");
  if (tol <= 0) throw Error(ErrorKind::BadParameter, "tolerance must be positive");
  ThresholdResult r;
  r.n = n;
  r.lo = 3;
  r.hi = 4;
  auto pred = [&](const Rational& t) { return section_real_rooted(n, t, options, &r.evaluations); };
  bool at_lo = pred(r.lo);
  bool at_hi = pred(r.hi);
  if (at_lo) {
    r.hi = r.lo;
    r.lo = Rational(29, 10);
    if (pred(r.lo))
      throw Error(ErrorKind::BracketInvalid, "section " + std::to_string(n) + " real-rooted at a^2 = 2.9", n);
  } else if (!at_hi) {
    r.lo = r.hi;
    r.hi = Rational(41, 10);
    if (!pred(r.hi))
      throw Error(ErrorKind::BracketInvalid, "section " + std::to_string(n) + " not real-rooted at a^2 = 4.1",
                  n);
  }
  r.tol = tol;
  return refine_c(r, tol, options);
}

namespace {

ThresholdResult fetch_c(long n, const Rational& tol, const ThetaOptions& options, ConstantsCache* cache) {
  return cache ? cache->get_c(n, tol, options) : compute_c(n, tol, options);
}

}  // namespace

ThresholdResult compute_q_infinity(const Rational& tol, const ThetaOptions& options, ConstantsCache* cache) {
  if (tol <= 0) throw Error(ErrorKind::BadParameter, "tolerance must be positive");
  Rational part = tol / 4;
  for (long m = 1; 2 * m + 1 <= options.max_n; ++m) {
    ThresholdResult odd = fetch_c(2 * m + 1, part, options, cache);
    ThresholdResult even = fetch_c(2 * m, part, options, cache);
    ThresholdResult r;
    r.n = kInfinityIndex;
    r.lo = odd.lo;
    r.hi = even.hi;
    r.tol = tol;
    r.evaluations = odd.evaluations + even.evaluations;
    if (r.lo > r.hi)
      throw Error(ErrorKind::BracketInvalid, "odd threshold bracket above the even one", 2 * m + 1);
    if (r.width() <= tol) return r;
  }
  throw Error(ErrorKind::BudgetExceeded, "q_inf tolerance not reached within section index " +
                                             std::to_string(options.max_n),
              options.max_n);
}

std::vector<ThresholdResult> parity_table(long max_n, const Rational& tol, const ThetaOptions& options,
                                          ConstantsCache* cache) {
  if (max_n < 2) throw Error(ErrorKind::BadParameter, "max_n must be >= 2");
  std::map<long, ThresholdResult> rows;
  for (long n = 2; n <= max_n; ++n) rows[n] = fetch_c(n, tol, options, cache);

  std::vector<long> chain;
  for (long n = 3; n <= max_n; n += 2) chain.push_back(n);
  for (long n = max_n % 2 == 0 ? max_n : max_n - 1; n >= 2; n -= 2) chain.push_back(n);

  for (int round = 0;; ++round) {
    bool ok = true;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      ThresholdResult& a = rows[chain[i]];
      ThresholdResult& b = rows[chain[i + 1]];
      if (a.hi < b.lo) continue;
      ok = false;
      Rational gap = abs((b.lo + b.hi) / 2 - (a.lo + a.hi) / 2);
      Rational target = std::min(a.width(), b.width()) / 16;
      if (gap > 0) target = std::min<Rational>(target, gap / 8);
      a = refine_c(a, std::min(target, a.tol), options);
      b = refine_c(b, std::min(target, b.tol), options);
      if (cache) {
        a = cache->store(a);
        b = cache->store(b);
      }
    }
    if (ok) break;
    if (round > 64)
      throw Error(ErrorKind::BudgetExceeded, "threshold brackets still overlap after refinement", max_n);
  }
  std::vector<ThresholdResult> out;
  for (auto& [n, r] : rows) out.push_back(r);
  return out;
}

// --- cache --------------------------------------------------------------------

namespace {

constexpr const char* kHeader = "n,tol,lo,hi,evaluations,timestamp";

std::string now_utc() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int digits_for(const ThresholdResult& r) {
  Rational w = r.width() > 0 ? r.width() : r.tol;
  long e = w > 0 ? -log2_magnitude(w) : 0;
  return static_cast<int>(std::max<long>(20, static_cast<long>(static_cast<double>(e) * 0.30103) + 14));
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

ConstantsCache::ConstantsCache(std::filesystem::path path) : path_(std::move(path)) { load(); }

std::filesystem::path ConstantsCache::default_path() {
  if (const char* env = std::getenv("LPLAB_CACHE"); env && *env) return env;
  const char* home = std::getenv("HOME");
  std::filesystem::path base = home && *home ? std::filesystem::path(home) : std::filesystem::temp_directory_path();
  return base / ".cache" / "lplab" / "constants.csv";
}

void ConstantsCache::load() {
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  long lineno = 0;
  std::map<long, ThresholdResult> rows;
  std::map<long, std::string> stamps;
  try {
    if (!std::getline(in, line)) return;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kHeader) throw Error(ErrorKind::CacheCorrupt, "unexpected header", lineno);
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      auto f = split_csv(line);
      if (f.size() != 6) throw Error(ErrorKind::CacheCorrupt, "expected 6 fields", lineno);
      ThresholdResult r;
      std::size_t used = 0;
      r.n = std::stol(f[0], &used);
      if (used != f[0].size() || (r.n < 2 && r.n != kInfinityIndex))
        throw Error(ErrorKind::CacheCorrupt, "bad index", lineno);
      r.tol = parse_rational(f[1]);
      r.lo = parse_rational(f[2]);
      r.hi = parse_rational(f[3]);
      r.evaluations = std::stol(f[4], &used);
      if (used != f[4].size() || r.evaluations < 0)
        throw Error(ErrorKind::CacheCorrupt, "bad evaluation count", lineno);
      if (!(r.lo <= r.hi) || r.lo < Rational(29, 10) || r.hi > Rational(41, 10) || r.tol <= 0)
        throw Error(ErrorKind::CacheCorrupt, "bracket out of range", lineno);
      rows[r.n] = r;
      stamps[r.n] = f[5];
    }
  } catch (const std::exception& e) {
    corruption_ = path_.string() + ": line " + std::to_string(lineno) + ": " + e.what();
    return;
  }
  rows_ = std::move(rows);
  stamps_ = std::move(stamps);
}

std::optional<ThresholdResult> ConstantsCache::lookup(long n, const Rational& tol) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = rows_.find(n);
  if (it == rows_.end() || it->second.width() > tol) return std::nullopt;
  return it->second;
}

ThresholdResult ConstantsCache::store(const ThresholdResult& r) {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = rows_.find(r.n);
  if (it != rows_.end() && it->second.width() <= r.width() && !corruption_) return it->second;
  ThresholdResult stored = r;
  int digits = digits_for(r);
  stored.lo = parse_rational(to_decimal(r.lo, digits, Round::down));
  stored.hi = parse_rational(to_decimal(r.hi, digits, Round::up));
  rows_[r.n] = stored;
  stamps_[r.n] = now_utc();
  write_locked();
  corruption_.reset();
  return stored;
}

void ConstantsCache::write_locked() const {
  std::error_code ec;
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path(), ec);
  std::filesystem::path tmp = path_;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error(ErrorKind::CacheCorrupt, "cannot write " + tmp.string());
    out << kHeader << '\n';
    auto emit = [&](const ThresholdResult& r) {
      int digits = digits_for(r);
      out << r.n << ',' << to_decimal(r.tol, 17, Round::nearest) << ',' << to_decimal(r.lo, digits, Round::down)
          << ',' << to_decimal(r.hi, digits, Round::up) << ',' << r.evaluations << ',' << stamps_.at(r.n)
          << '\n';
    };
    for (const auto& [n, r] : rows_)
      if (n != kInfinityIndex) emit(r);
    if (auto it = rows_.find(kInfinityIndex); it != rows_.end()) emit(it->second);
  }
  std::filesystem::rename(tmp, path_);
}

ThresholdResult ConstantsCache::get_c(long n, const Rational& tol, const ThetaOptions& options) {
  if (auto hit = lookup(n, tol)) {
    ++hits_;
    return *hit;
  }
  ++misses_;
  std::optional<ThresholdResult> start;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    if (auto it = rows_.find(n); it != rows_.end()) start = it->second;
  }
  // Slack for the outward decimal rounding applied by store.
  Rational target = tol * Rational(999999, 1000000);
  ThresholdResult r = start ? refine_c(*start, target, options) : compute_c(n, target, options);
  r.tol = tol;
  return store(r);
}

ThresholdResult ConstantsCache::get_q_infinity(const Rational& tol, const ThetaOptions& options) {
  if (auto hit = lookup(kInfinityIndex, tol)) {
    ++hits_;
    return *hit;
  }
  ++misses_;
  return store(compute_q_infinity(tol, options, this));
}

}  // namespace lplab
