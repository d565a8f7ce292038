#include <fstream>
#include <sstream>

#include "common.hpp"
#include "lplab/io.hpp"
#include "lplab/report.hpp"

using namespace lplab;
using lplab::test::R;
using lplab::test::Rs;

namespace {

Error error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  throw std::runtime_error("expected an lplab::Error");
}

std::vector<Rational> coeffs(const std::string& text) {
  std::istringstream in(text);
  return read_coefficients_csv(in);
}

std::vector<Rational> quots(const std::string& text) {
  std::istringstream in(text);
  return read_quotients_csv(in);
}

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
  auto p = std::filesystem::temp_directory_path() / ("lplab-test-" + name);
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST(Csv, ReadsDecimalAndFractions) {
  EXPECT_EQ(coeffs("k,a_k\n0,1\n1,1/2\n2,0.125\n"), Rs({"1", "1/2", "1/8"}));
  EXPECT_EQ(quots("n,q_n\n2,4\n3,9/2\n"), Rs({"4", "9/2"}));
}

TEST(Csv, Errors) {
  auto e = error_of([] { coeffs("k,a_k\n0,1\n1,0\n"); });
  EXPECT_EQ(e.kind(), ErrorKind::NonPositiveCoefficient);
  EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  EXPECT_EQ(error_of([] { quots("n,q_n\n2,-1\n"); }).kind(), ErrorKind::NonPositiveQuotient);
  EXPECT_EQ(error_of([] { coeffs("k,a_k\n0,1\n1,abc\n"); }).kind(), ErrorKind::ParseError);
  EXPECT_EQ(error_of([] { coeffs("x,y\n0,1\n"); }).kind(), ErrorKind::ParseError);
  EXPECT_EQ(error_of([] { coeffs("k,a_k\n0,1\n2,1\n"); }).kind(), ErrorKind::ParseError);
  EXPECT_EQ(error_of([] { quots("n,q_n\n3,4\n"); }).kind(), ErrorKind::ParseError);
}

TEST(Csv, RoundTrip) {
  std::vector<Rational> a = Rs({"1", "1/3", "2/27", "5"});
  std::stringstream buf;
  write_coefficients_csv(buf, a);
  EXPECT_EQ(read_coefficients_csv(buf), a);
  std::stringstream qb;
  write_quotients_csv(qb, Rs({"4", "17/4"}));
  EXPECT_EQ(read_quotients_csv(qb), Rs({"4", "17/4"}));
}

TEST(Inputs, FamilyParams) {
  EXPECT_EQ(family_input("partial-theta", {{"a2", "4"}}, 10).series.coefficients(),
            partial_theta_normalized(Rational(4), 10).coefficients());
  EXPECT_EQ(family_input("partial-theta", {{"a", "2"}}, 10).series.coefficients(),
            partial_theta_normalized(Rational(4), 10).coefficients());
  EXPECT_EQ(family_input("q-kummer", {{"a2", "9/4"}}, 10).series.coefficients(),
            normalize(q_kummer(R("3/2"), 10)).coefficients());
  EXPECT_EQ(error_of([] { family_input("q-kummer", {{"a2", "2"}}, 10); }).kind(), ErrorKind::BadParameter);
  EXPECT_EQ(error_of([] { family_input("partial-theta", {{"a", "2"}, {"a2", "4"}}, 10); }).kind(),
            ErrorKind::BadParameter);
  EXPECT_EQ(error_of([] { family_input("partial-theta", {{"b", "2"}}, 10); }).kind(), ErrorKind::BadParameter);
  EXPECT_EQ(error_of([] { family_input("partial-theta", {{"a2", "1"}}, 10); }).kind(), ErrorKind::BadParameter);
  EXPECT_EQ(error_of([] { family_input("nope", {{"a", "2"}}, 10); }).kind(), ErrorKind::BadParameter);
}

TEST(Inputs, FilesNormalizeAndTruncate) {
  auto p = write_temp("coeffs.csv", "k,a_k\n0,2\n1,1\n2,1/8\n3,1/256\n");
  auto in = coefficients_input(p);
  EXPECT_TRUE(in.series.is_normalized());
  EXPECT_TRUE(in.normalization_applied);
  EXPECT_EQ(coefficients_input(p, 2).series.degree(), 2);
  EXPECT_EQ(error_of([&] { coefficients_input(p, 9); }).kind(), ErrorKind::BadParameter);
  auto qp = write_temp("quotients.csv", "n,q_n\n2,4\n3,4\n4,5\n");
  auto qin = quotients_input(qp);
  EXPECT_EQ(qin.series.degree(), 4);
  EXPECT_EQ(quotients(qin.series).q_values, Rs({"4", "4", "5"}));
}

TEST(Analyze, ExitCodesAndShape) {
  auto& cache = test::shared_cache();
  auto bad = analyze(family_input("partial-theta", {{"a2", "3"}}, 30), &cache);
  EXPECT_EQ(bad.exit_code, 3);
  EXPECT_EQ(bad.report["overall"]["exit_code"], 3);
  EXPECT_EQ(bad.report["verdicts"]["corollary1"]["status"], "violated");
  EXPECT_EQ(bad.report["verdicts"]["hutchinson"]["status"], "fails");

  auto good = analyze(family_input("partial-theta", {{"a2", "4.41"}}, 30), &cache);
  EXPECT_EQ(good.exit_code, 0);
  EXPECT_EQ(good.report["verdicts"]["hutchinson"]["status"], "holds");
  EXPECT_EQ(good.report["nonreal_bound"]["bound"], 2);
  EXPECT_EQ(good.report["empirical_nonreal"]["count"], 0);

  std::vector<std::string> keys;
  for (const auto& [k, v] : good.report.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"schema", "tool", "arithmetic", "input", "normalization_applied",
                                            "q_profile", "verdicts", "overall", "nonreal_bound", "disk_counts",
                                            "empirical_nonreal", "warnings"}));
}

TEST(Analyze, NonMonotoneIsInconclusive) {
  auto qp = write_temp("nonmono.csv", "n,q_n\n2,3.5\n3,3.4\n4,5\n5,5\n");
  auto res = analyze(quotients_input(qp), &test::shared_cache());
  EXPECT_EQ(res.exit_code, 4);
  EXPECT_EQ(res.report["overall"]["verdict"], "inconclusive");
  EXPECT_EQ(res.report["q_profile"]["nondecreasing"], false);
}

TEST(Analyze, DiskErrorsStayInReport) {
  AnalyzeOptions opt;
  opt.disks = {3, 0};
  auto res = analyze(family_input("partial-theta", {{"a2", "9"}}, 30), &test::shared_cache(), opt);
  ASSERT_EQ(res.report["disk_counts"].size(), 2u);
  EXPECT_EQ(res.report["disk_counts"][0]["zeros_in_disk"], 3);
  EXPECT_TRUE(res.report["disk_counts"][1].contains("error"));
}

TEST(Analyze, Deterministic) {
  auto& cache = test::shared_cache();
  auto in = family_input("q-kummer", {{"a", "3"}}, 30);
  std::string first = analyze(in, &cache).report.dump();
  EXPECT_EQ(first, analyze(in, &cache).report.dump());
}
