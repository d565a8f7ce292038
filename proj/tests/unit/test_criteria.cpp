#include <random>

#include "common.hpp"
#include "lplab/criteria.hpp"
#include "lplab/rootcert.hpp"

using namespace lplab;
using lplab::test::R;
using lplab::test::Rs;

namespace {

QuotientProfile<Rational> profile(const std::vector<Rational>& q) {
  return quotients(from_quotients(q, Rational(1), Rational(1)));
}

QuotientProfile<Rational> constant_profile(const Rational& t, long top) {
  return quotients(partial_theta_normalized(t, top));
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::ParseError;  // sentinel: nothing thrown
}

}  // namespace

TEST(UnitInterval, Satisfied) {
  EXPECT_EQ(unit_interval_positivity(partial_theta_normalized(R("3.61"), 20)).status, Status::satisfied);
  EXPECT_EQ(unit_interval_positivity(normalize(q_kummer(Rational(3), 20))).status, Status::satisfied);
}

TEST(UnitInterval, NeedsNormalized) {
  EXPECT_EQ(kind_of([] { unit_interval_positivity(partial_theta(R("1.9"), 10)); }), ErrorKind::PreconditionViolated);
}

TEST(NonpositivePoint, HutchinsonCaseHasWitness) {
  auto s = partial_theta_normalized(Rational(4), 40);
  auto v = find_nonpositive_point(s);
  ASSERT_EQ(v.status, Status::satisfied);
  ASSERT_TRUE(v.witness);
  Rational x0 = parse_rational(*v.witness);
  EXPECT_GT(x0, 1);
  EXPECT_LE(x0, 4);
  EXPECT_LE(certified_phi(s, x0).upper(), 0);
}

TEST(NonpositivePoint, BelowLimitIsInconclusive) {
  auto v = find_nonpositive_point(partial_theta_normalized(Rational(3), 40));
  EXPECT_EQ(v.status, Status::inconclusive);
  EXPECT_FALSE(v.witness);
}

TEST(NonpositivePoint, NeedsQ2AboveOne) {
  auto s = from_quotients(Rs({"1", "2"}), Rational(1), Rational(1));
  EXPECT_EQ(kind_of([&] { find_nonpositive_point(s); }), ErrorKind::PreconditionViolated);
}

TEST(NonpositivePoint, WitnessAlwaysInRange) {
  for (const char* t : {"3.3", "3.5", "4", "4.41", "6", "9"}) {
    auto s = partial_theta_normalized(R(t), 40);
    auto v = find_nonpositive_point(s);
    ASSERT_TRUE(v.witness) << t;
    Rational x0 = parse_rational(*v.witness);
    EXPECT_GT(x0, 1) << t;
    EXPECT_LE(x0, R(t)) << t;
  }
}

TEST(OddSections, AllNegativeAtWitness) {
  auto s = partial_theta_normalized(Rational(4), 40);
  auto v = find_nonpositive_point(s);
  ASSERT_TRUE(v.witness);
  Rational x0 = parse_rational(*v.witness);
  EXPECT_EQ(odd_sections_negative(s, x0, 10).status, Status::satisfied);
  EXPECT_EQ(odd_sections_negative(s, x0, 0).status, Status::satisfied);
}

TEST(OddSections, BoundaryExcluded) {
  auto s = partial_theta_normalized(Rational(4), 40);
  EXPECT_EQ(kind_of([&] { odd_sections_negative(s, Rational(1), 5); }), ErrorKind::PreconditionViolated);
}

TEST(ComparisonGap, ConstantProfileIsEquality) {
  for (long n = 1; n <= 5; ++n) {
    auto q = constant_profile(R("3.7"), 2 * n + 1);
    auto [lhs, rhs] = lemma3_gap(q, Rational(2), n);
    EXPECT_EQ(lhs, rhs) << n;
  }
}

TEST(ComparisonGap, IncreasingProfileStrict) {
  auto q = profile(Rs({"3", "3.1", "3.2", "3.3"}));
  auto [lhs, rhs] = lemma3_gap(q, Rational(2), 1);
  EXPECT_GT(lhs, rhs);
}

TEST(ComparisonGap, Preconditions) {
  auto q = profile(Rs({"3", "3.1", "3.2"}));
  EXPECT_EQ(kind_of([&] { lemma3_gap(q, Rational(1), 1); }), ErrorKind::PreconditionViolated);
  EXPECT_EQ(kind_of([&] { lemma3_gap(profile(Rs({"2.9", "3.1"})), Rational(2), 1); }),
            ErrorKind::PreconditionViolated);
  EXPECT_EQ(kind_of([&] { lemma3_gap(profile(Rs({"3.2", "3.1"})), Rational(2), 1); }),
            ErrorKind::PreconditionViolated);
}

TEST(ComparisonGap, RandomInstances) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 1000; ++t) {
    long n = 1 + static_cast<long>(rng() % 5);
    std::vector<Rational> q;
    for (long i = 0; i < 2 * n; ++i) q.push_back(3 + R(static_cast<long>(rng() % 3001), 1000));
    std::sort(q.begin(), q.end());
    Rational x = 1 + (q[0] - 1) * R(1 + static_cast<long>(rng() % 10000), 10000);
    auto [lhs, rhs] = lemma3_gap(profile(q), x, n);
    EXPECT_GE(lhs, rhs) << "trial " << t;
  }
}

TEST(ComparisonGap, FloatInstantiation) {
  PrecisionScope scope(256);
  auto q = quotients(from_quotients(std::vector<Real>{Real(3), Real("3.5"), Real(4), Real(5)}, Real(1), Real(1)));
  auto [lhs, rhs] = lemma3_gap(q, Real(2), 2);
  EXPECT_GE(lhs, rhs);
}

TEST(Theorem1Check, ThresholdCaseViolated) {
  auto v = theorem1_check(constant_profile(Rational(3), 20), &test::shared_cache());
  EXPECT_EQ(v.status, Status::violated);
  ASSERT_TRUE(v.witness);
  EXPECT_EQ(v.witness_index, 3);
}

TEST(Theorem1Check, ConstantProfileScan) {
  CriteriaOptions opt;
  opt.tol = R(1, 1000000);
  opt.max_odd_index = 10;
  for (const char* t : {"2", "2.5", "2.9", "3"})
    EXPECT_EQ(theorem1_check(constant_profile(R(t), 10), &test::shared_cache(), opt).status, Status::violated) << t;
  for (const char* t : {"3.3", "3.5", "4", "5"})
    EXPECT_EQ(theorem1_check(constant_profile(R(t), 10), &test::shared_cache(), opt).status, Status::satisfied) << t;
}

TEST(Theorem1Check, InsideBracketThenResolved) {
  auto c5 = compute_c(5, R(1, 100));
  Rational mid = (c5.lo + c5.hi) / 2;
  auto p = profile({R("3.1"), R("3.2"), mid, mid});
  CriteriaOptions coarse;
  coarse.tol = R(1, 100);
  coarse.exact_tiebreak = false;
  coarse.max_odd_index = 5;
  EXPECT_EQ(theorem1_check(p, nullptr, coarse).status, Status::inconclusive);
  CriteriaOptions fine = coarse;
  fine.tol = R(1, 1000000000);
  EXPECT_NE(theorem1_check(p, nullptr, fine).status, Status::inconclusive);
  coarse.exact_tiebreak = true;
  EXPECT_NE(theorem1_check(p, nullptr, coarse).status, Status::inconclusive);
}

TEST(Theorem1Check, NeedsMonotone) {
  EXPECT_EQ(theorem1_check(profile(Rs({"4", "3.5", "5"})), nullptr).status, Status::inconclusive);
}

TEST(Corollary1Check, Threshold) {
  EXPECT_EQ(corollary1_check(profile(Rs({"3", "3"}))).status, Status::violated);
  EXPECT_EQ(corollary1_check(profile(Rs({"3.001", "3.001"}))).status, Status::satisfied);
  auto v = corollary1_check(profile(Rs({"2", "2"})));
  EXPECT_EQ(v.status, Status::violated);
  EXPECT_TRUE(v.witness);
}

TEST(Q3Bound, ExactValueAtThree) {
  auto b = q3_bound_exact(Rational(3));
  ASSERT_TRUE(b);
  EXPECT_EQ(*b, 3);
}

TEST(Q3Bound, Checks) {
  EXPECT_EQ(q3_bound_check(profile(Rs({"3", "3"}))).status, Status::satisfied);
  auto v = q3_bound_check(profile(Rs({"3", "3.01"})));
  EXPECT_EQ(v.status, Status::violated);
  EXPECT_TRUE(v.witness);
  EXPECT_EQ(q3_bound_check(profile(Rs({"3.5", "100"}))).status, Status::violated);
  EXPECT_EQ(q3_bound_check(profile(Rs({"4", "4"}))).status, Status::inconclusive);
  EXPECT_EQ(q3_bound_check(profile(Rs({"2.9", "3"}))).status, Status::inconclusive);
}

TEST(Q3Bound, AgreesWithNumericValue) {
  PrecisionScope scope(256);
  for (const char* q2 : {"3.1", "3.5", "3.9"}) {
    Real b = q3_bound_value(R(q2));
    Rational below = decimal_rational(b - Real(1e-12), 30);
    Rational above = decimal_rational(b + Real(1e-12), 30);
    EXPECT_EQ(q3_bound_check(profile({R(q2), std::max(R(q2), below)})).status, Status::satisfied) << q2;
    EXPECT_EQ(q3_bound_check(profile({R(q2), above})).status, Status::violated) << q2;
  }
}

TEST(NecessaryReport, Examples) {
  auto& cache = test::shared_cache();
  EXPECT_EQ(necessary_report(partial_theta_normalized(Rational(3), 40), &cache).overall, Overall::not_member);
  EXPECT_EQ(necessary_report(partial_theta_normalized(R("4.41"), 40), &cache).overall, Overall::no_violation);
  EXPECT_EQ(necessary_report(normalize(q_kummer(Rational(2), 40)), &cache).overall, Overall::not_member);
}

TEST(NecessaryReport, ViolationsCarryWitnesses) {
  auto rep = necessary_report(partial_theta_normalized(R("2.5"), 40), &test::shared_cache());
  for (const auto& v : rep.verdicts)
    if (v.status == Status::violated) EXPECT_TRUE(v.witness) << v.id;
}

TEST(NecessaryReport, HutchinsonSeriesNeverViolated) {
  for (const char* a : {"2", "2.1", "2.5", "3"}) {
    auto s = normalize(partial_theta(R(a), 40));
    ASSERT_TRUE(hutchinson_check(s).holds);
    auto rep = necessary_report(s, &test::shared_cache());
    for (const auto& v : rep.verdicts) EXPECT_NE(v.status, Status::violated) << a << " " << v.id;
  }
}

TEST(NecessaryReport, NonMonotoneGated) {
  auto s = from_quotients(Rs({"4", "3.5", "5"}), Rational(1), Rational(1));
  auto rep = necessary_report(s, nullptr);
  EXPECT_EQ(rep.overall, Overall::inconclusive_only);
  for (const auto& v : rep.verdicts) EXPECT_EQ(v.status, Status::inconclusive) << v.id;
}
