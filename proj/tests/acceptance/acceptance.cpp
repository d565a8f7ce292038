#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "lplab/criteria.hpp"
#include "lplab/rootcert.hpp"
#include "lplab/theta_constants.hpp"
#include "lplab/verify.hpp"
#include "lplab/zerogeom.hpp"

using namespace lplab;

namespace {

Rational frac(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

// Pinned tolerances and limits.
const Rational kExactWidth = frac(1, 10000000000);  // c_2, c_3 bracket width
const Rational kTableTol = frac(1, 1000000000);
const Rational kQInfTol = frac(1, 1000000);
constexpr double kC4Dist = 1e-7;
constexpr double kC5to7Dist = 5e-5;
constexpr double kC5Ref = 3.23362;
constexpr double kC67Ref = 3.23364;
const Rational kQInfProbe = parse_rational("3.23363666");

struct Outcome {
  bool ok = true;
  std::string detail;
};

double to_double(const Rational& q) { return q.get_d(); }

/// Largest distance from x to a point of the bracket.
double distance(const ThresholdResult& r, double x) {
  return std::max(std::abs(to_double(r.lo) - x), std::abs(to_double(r.hi) - x));
}

std::string bracket(const ThresholdResult& r) {
  return "[" + to_decimal(r.lo, 14, Round::down) + ", " + to_decimal(r.hi, 14, Round::up) + "]";
}

QuotientProfile<Rational> profile(const std::vector<Rational>& q) {
  return quotients(from_quotients(q, Rational(1), Rational(1)));
}

Outcome criterion1() {
  Outcome o;
  std::ostringstream d;
  for (long n = 2; n <= 7; ++n) {
    ThresholdResult r = compute_c(n, n <= 3 ? kExactWidth : kTableTol);
    bool pass = true;
    if (n == 2 || n == 3) pass = r.contains(Rational(n == 2 ? 4 : 3)) && r.width() <= kExactWidth;
    if (n == 4) pass = distance(r, 1 + std::sqrt(5.0)) <= kC4Dist;
    if (n == 5) pass = distance(r, kC5Ref) <= kC5to7Dist;
    if (n >= 6) pass = distance(r, kC67Ref) <= kC5to7Dist;
    o.ok &= pass && r.width() <= kTableTol;
    d << " c" << n << "=" << bracket(r) << (pass ? "" : "!");
  }
  o.detail = d.str();
  return o;
}

Outcome criterion2() {
  ThresholdResult r = compute_q_infinity(kQInfTol);
  return {r.contains(kQInfProbe) && r.width() <= kQInfTol, " q_inf=" + bracket(r)};
}

Outcome criterion3() {
  auto rows = parity_table(20, kTableTol);
  auto c = [&](long n) { return rows[static_cast<std::size_t>(n - 2)]; };
  std::vector<ThresholdResult> chain;
  for (long n = 3; n <= 19; n += 2) chain.push_back(c(n));
  for (long n = 20; n >= 2; n -= 2) chain.push_back(c(n));
  Outcome o;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    if (!(chain[i].hi < chain[i + 1].lo)) {
      o.ok = false;
      o.detail += " overlap between n=" + std::to_string(chain[i].n) + " and n=" + std::to_string(chain[i + 1].n);
    }
  }
  for (const auto& r : rows) o.ok &= r.width() <= kTableTol;
  // q_inf sits in the gap (hi c_19, lo c_20), so its bracket must contain the gap.
  ThresholdResult q_inf = compute_q_infinity(kTableTol);
  o.ok &= q_inf.lo <= c(19).hi && c(20).lo <= q_inf.hi;
  o.detail += " " + std::to_string(chain.size()) + " disjoint brackets, gap c19.hi..c20.lo = " +
              to_decimal(c(20).lo - c(19).hi, 3) + ", q_inf=" + bracket(q_inf);
  return o;
}

Outcome criterion4() {
  ExactSeries s = partial_theta_normalized(parse_rational("4.41"), 30);
  WindowVerdict w = consecutive_sections_hyperbolic(s, 8);
  EmpiricalCount e = nonreal_empirical(s, 30);
  return {w.all_pass && e.agree && e.count() == 0,
          " windows=" + std::to_string(w.windows_checked) + " nonreal=" + std::to_string(e.count())};
}

Outcome criterion5(ConstantsCache& cache) {
  necessary_report(partial_theta_normalized(Rational(3), 40), &cache);  // warm the cache
  auto t0 = std::chrono::steady_clock::now();
  ExactSeries s3 = partial_theta_normalized(Rational(3), 40);
  CriterionVerdict t1 = theorem1_check(quotients(s3), &cache);
  NecessaryReport r3 = necessary_report(s3, &cache);
  NecessaryReport r33 = necessary_report(partial_theta_normalized(parse_rational("3.3"), 40), &cache);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool ok = t1.status == Status::violated && t1.witness_index == 3 && r3.overall == Overall::not_member &&
            r33.overall != Overall::not_member && secs < 10.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, " warm=%.2fs", secs);
  return {ok, std::string(" q=3: ") + std::string(to_string(t1.status)) + " at q_" +
                  std::to_string(t1.witness_index.value_or(0)) + ", q=3.3: " + std::string(to_string(r33.overall)) +
                  buf};
}

Outcome criterion6() {
  auto b = q3_bound_exact(Rational(3));
  CriterionVerdict v = q3_bound_check(profile({Rational(3), parse_rational("3.01")}));
  return {b && *b == 3 && v.status == Status::violated,
          " B(3)=" + (b ? b->get_str() : std::string("none")) + " q=(3,3.01): " + std::string(to_string(v.status))};
}

Outcome suite(const std::string& name, long trials, ConstantsCache& cache) {
  std::ostringstream log;
  SuiteResult r = run_suite(name, 1, trials, &cache, log);
  return {r.passed(), " trials=" + std::to_string(r.trials) + " failures=" + std::to_string(r.failures)};
}

Outcome criterion8(ConstantsCache& cache) {
  ExactSeries s = partial_theta_normalized(parse_rational("3.3"), 40);
  NonrealBoundResult b = nonreal_bound(quotients(s), &cache);
  EmpiricalCount e = nonreal_empirical(s, 40);
  bool ok = b.bound && b.bound->bound == 4 && b.bound->m0 == 2 && e.agree && e.count() <= 4;
  return {ok, " bound=" + (b.bound ? std::to_string(b.bound->bound) : std::string("n/a")) +
                  " empirical=" + std::to_string(e.count())};
}

Outcome criterion9() {
  ExactSeries s = partial_theta_normalized(Rational(9), 60);
  Outcome o;
  for (long k = 8; k <= 12; ++k) {
    DiskCount d = zeros_in_rho_disk(s, k, 60);
    o.ok &= d.zeros_in_disk == k && d.tail_certified;
    o.detail += " k" + std::to_string(k) + "=" + std::to_string(d.zeros_in_disk) + (d.tail_certified ? "" : "?");
  }
  return o;
}

Outcome criterion10(ConstantsCache& cache) {
  ExactSeries s = partial_theta_normalized(parse_rational("3.3"), 60);
  auto threshold = sign_point_threshold(quotients(s), &cache);
  if (!threshold) return {false, " no (j0, m0) pair"};
  auto pts = sign_change_points(s, 6, 10, 64, threshold);
  Outcome o;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    bool good = p.x && p.value && *p.x > p.lo && *p.x < p.hi &&
                (p.j % 2 == 0 ? p.value->lower() >= 0 : p.value->upper() <= 0) && (i == 0 || *pts[i - 1].x < *p.x);
    o.ok &= good;
    o.detail += " j" + std::to_string(p.j) + (good ? "+" : "-");
  }
  o.ok &= pts.size() == 5;
  return o;
}

}  // namespace

int main() {
  auto cache_file = std::filesystem::temp_directory_path() / "lplab-acceptance-constants.csv";
  std::filesystem::remove(cache_file);
  ConstantsCache cache(cache_file);

  struct Item {
    int id;
    double limit;
    std::function<Outcome()> run;
  };
  std::vector<Item> items{
      {1, 60, criterion1},
      {2, 600, criterion2},
      {3, 600, criterion3},
      {4, 300, criterion4},
      {5, 60, [&] { return criterion5(cache); }},
      {6, 10, criterion6},
      {7, 120, [&] { return suite("lemma3", 1000, cache); }},
      {8, 60, [&] { return criterion8(cache); }},
      {9, 120, criterion9},
      {10, 60, [&] { return criterion10(cache); }},
      {11, 120, [&] { return suite("oracle", 500, cache); }},
  };

  int failed = 0;
  for (const auto& it : items) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = it.run();
    } catch (const std::exception& e) {
      o = {false, std::string(" error: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = o.ok && secs < it.limit;
    if (!pass) ++failed;
    std::printf("criterion %2d: %s (%.1fs, limit %.0fs)%s\n", it.id, pass ? "PASS" : "FAIL", secs, it.limit,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::filesystem::remove(cache_file);
  std::printf("%d/%zu criteria passed\n", static_cast<int>(items.size()) - failed, items.size());
  return failed == 0 ? 0 : 1;
}
