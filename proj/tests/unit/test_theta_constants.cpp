#include <fstream>

#include "common.hpp"
#include "lplab/rootcert.hpp"
#include "lplab/theta_constants.hpp"

using namespace lplab;
using lplab::test::R;

namespace {

const Rational kTol = R(1, 1000000000);

std::filesystem::path temp_cache(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("lplab-test-" + name + ".csv");
  std::filesystem::remove(p);
  return p;
}

}  // namespace

TEST(ThetaSection, Coefficients) {
  PrecisionScope scope(256);
  auto p = theta_section(2, Real(2));
  ASSERT_EQ(p.degree(), 2);
  EXPECT_EQ(p[0], 1);
  EXPECT_EQ(p[1], Real(1) / 2);
  EXPECT_EQ(p[2], Real(1) / 16);
  auto r = theta_section(3, sqrt(Real(3)));
  EXPECT_LT(abs(r[1] - 1 / sqrt(Real(3))), Real(1e-70));
  EXPECT_LT(abs(r[2] - Real(1) / 9), Real(1e-70));
  EXPECT_LT(abs(r[3] - pow(Real(3), Real(-4.5))), Real(1e-70));
  EXPECT_GT(theta_section(9, Real(5))[9], 0);
  EXPECT_THROW(theta_section(1, Real(2)), Error);
  EXPECT_THROW(theta_section(3, Real(1)), Error);
}

TEST(MinOnBracket, Examples) {
  PrecisionScope scope(256);
  auto m2 = min_on_bracket(2, Rational(4), Real(1e-30));
  EXPECT_TRUE(m2.contains(Real(0)));
  // triple root at the left endpoint: the cell bound only reaches moderate radii
  EXPECT_LE(min_on_bracket(3, Rational(3), Real(1e-20)).lower(), 0);
  EXPECT_THROW(min_on_bracket(3, Rational(3), Real(1e-40)), Error);
  EXPECT_GT(min_on_bracket(2, R("3.61"), Real(1e-30)).lower(), 0);
}

TEST(MinOnBracket, SignMatchesSturm) {
  PrecisionScope scope(256);
  for (long n = 2; n <= 12; ++n) {
    for (const char* t : {"3.0", "3.1", "3.2", "3.2336", "3.2337", "3.25", "3.5", "3.9", "4.1"}) {
      Rational a2 = R(t);
      bool real_rooted = classify_roots(theta_section_scaled(n, a2)).all_real;
      EXPECT_EQ(section_real_rooted(n, a2), real_rooted) << n << " " << t;
      auto m = min_on_bracket(n, a2, Real(1e-20));
      if (m.upper() <= 0) EXPECT_TRUE(real_rooted) << n << " " << t;
      if (m.lower() > 0) EXPECT_FALSE(real_rooted) << n << " " << t;
    }
  }
}

TEST(ComputeC, KnownValues) {
  auto c2 = compute_c(2, R(1, 10000000000));
  EXPECT_TRUE(c2.contains(4));
  EXPECT_LE(c2.width(), R(1, 10000000000));
  auto c3 = compute_c(3, R(1, 10000000000));
  EXPECT_TRUE(c3.contains(3));
  auto c4 = compute_c(4, kTol);
  PrecisionScope scope(128);
  Real golden = 1 + sqrt(Real(5));
  EXPECT_LE(to_real(c4.lo), golden);
  EXPECT_GE(to_real(c4.hi), golden);
  EXPECT_LE(c4.width(), kTol);
  auto c5 = compute_c(5, kTol);
  EXPECT_LT(abs(to_real(c5.lo) - Real("3.23362")), Real(5e-5));
  auto c6 = compute_c(6, kTol);
  EXPECT_LT(abs(to_real(c6.lo) - Real("3.23364")), Real(5e-5));
  EXPECT_GT(c6.evaluations, 0);
}

TEST(ComputeC, ConsistencyWithRootCount) {
  for (long n = 4; n <= 8; ++n) {
    auto c = compute_c(n, R(1, 1000000));
    EXPECT_TRUE(classify_roots(theta_section_scaled(n, c.hi + R(1, 100))).all_real) << n;
    EXPECT_GE(classify_roots(theta_section_scaled(n, c.lo - R(1, 100))).nonreal, 2) << n;
  }
}

TEST(ComputeC, BadParameters) {
  EXPECT_THROW(compute_c(1, kTol), Error);
  EXPECT_THROW(compute_c(4, Rational(0)), Error);
}

TEST(QInfinity, Brackets) {
  auto coarse = compute_q_infinity(R(1, 100));
  EXPECT_GE(coarse.lo, Rational(323, 100));
  EXPECT_LE(coarse.hi, Rational(324, 100));
  EXPECT_TRUE(coarse.is_infinity());
  auto fine = compute_q_infinity(R(1, 1000000));
  EXPECT_LE(fine.lo, R("3.23363666"));
  EXPECT_GE(fine.hi, R("3.23363666"));
  EXPECT_GE(fine.lo, 3);
  EXPECT_LE(fine.hi, 4);
}

TEST(QInfinity, BudgetExceeded) {
  ThetaOptions opt;
  opt.max_n = 5;
  try {
    compute_q_infinity(R(1, 1000000000), opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BudgetExceeded);
  }
}

TEST(ParityTable, InterleavingAtCoarseTolerance) {
  auto rows = parity_table(9, R(1, 100));
  ASSERT_EQ(rows.size(), 8u);
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(rows[i].n, static_cast<long>(i) + 2);
  auto c = [&](long n) { return rows[static_cast<std::size_t>(n - 2)]; };
  EXPECT_LT(c(3).hi, c(5).lo);
  EXPECT_LT(c(5).hi, c(7).lo);
  EXPECT_LT(c(7).hi, c(9).lo);
  EXPECT_LT(c(9).hi, c(8).lo);
  EXPECT_LT(c(8).hi, c(6).lo);
  EXPECT_LT(c(6).hi, c(4).lo);
  EXPECT_LT(c(4).hi, c(2).lo);
}

TEST(Cache, MissThenHit) {
  auto path = temp_cache("hit");
  {
    ConstantsCache cache(path);
    auto r = cache.get_c(8, kTol);
    EXPECT_EQ(cache.misses(), 1);
    EXPECT_LE(r.width(), kTol);
    auto again = cache.get_c(8, kTol);
    EXPECT_EQ(cache.hits(), 1);
    EXPECT_EQ(again.lo, r.lo);
    EXPECT_EQ(again.hi, r.hi);
  }
  ConstantsCache reopened(path);
  auto hit = reopened.lookup(8, kTol);
  ASSERT_TRUE(hit);
  auto r = reopened.get_c(8, kTol);
  EXPECT_EQ(reopened.hits(), 1);
  EXPECT_EQ(reopened.misses(), 0);
  EXPECT_EQ(r.lo, hit->lo);
  EXPECT_EQ(r.evaluations, hit->evaluations);
}

TEST(Cache, StaleToleranceRefines) {
  auto path = temp_cache("stale");
  ConstantsCache cache(path);
  auto coarse = cache.get_c(5, R(1, 1000));
  auto fine = cache.get_c(5, kTol);
  EXPECT_EQ(cache.misses(), 2);
  EXPECT_LE(fine.width(), kTol);
  EXPECT_GE(fine.lo, coarse.lo);
  EXPECT_LE(fine.hi, coarse.hi);
  // a coarser request is served by the finer row
  cache.get_c(5, R(1, 100));
  EXPECT_EQ(cache.hits(), 1);
}

TEST(Cache, FileFormat) {
  auto path = temp_cache("format");
  {
    ConstantsCache cache(path);
    cache.get_c(4, R(1, 1000));
    cache.get_q_infinity(R(1, 100));
  }
  std::ifstream in(path);
  std::string header, line, last;
  std::getline(in, header);
  EXPECT_EQ(header, "n,tol,lo,hi,evaluations,timestamp");
  while (std::getline(in, line)) last = line;
  EXPECT_EQ(last.rfind("-1,", 0), 0u);
}

TEST(Cache, CorruptFileIsRebuilt) {
  auto path = temp_cache("corrupt");
  {
    std::ofstream out(path);
    out << "n,tol,lo,hi,evaluations,timestamp\n4,garbage\n";
  }
  ConstantsCache cache(path);
  ASSERT_TRUE(cache.corruption());
  EXPECT_FALSE(cache.lookup(4, R(1, 10)));
  auto r = cache.get_c(4, R(1, 1000));
  EXPECT_LE(r.width(), R(1, 1000));
  EXPECT_FALSE(cache.corruption());
  ConstantsCache reopened(path);
  EXPECT_FALSE(reopened.corruption());
  EXPECT_TRUE(reopened.lookup(4, R(1, 1000)));
}

TEST(Cache, WarmAndColdAgree) {
  auto path = temp_cache("warm");
  ThresholdResult cold;
  {
    ConstantsCache cache(path);
    cold = cache.get_c(6, kTol);
  }
  ConstantsCache warm(path);
  auto w = warm.get_c(6, kTol);
  EXPECT_EQ(w.lo, cold.lo);
  EXPECT_EQ(w.hi, cold.hi);
}

TEST(Cache, DefaultPathHonoursEnvironment) {
  const char* old = std::getenv("LPLAB_CACHE");
  std::string saved = old ? old : "";
  setenv("LPLAB_CACHE", "/tmp/lplab-env-test.csv", 1);
  EXPECT_EQ(ConstantsCache::default_path(), std::filesystem::path("/tmp/lplab-env-test.csv"));
  if (old) setenv("LPLAB_CACHE", saved.c_str(), 1);
  else unsetenv("LPLAB_CACHE");
}
