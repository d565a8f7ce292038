#pragma once

// Necessary conditions for membership in the Laguerre-Polya class (type I)
// of a series with positive coefficients and nondecreasing second quotients.
// A violated condition certifies non-membership; a satisfied one proves
// nothing about membership.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lplab/series.hpp"
#include "lplab/theta_constants.hpp"

namespace lplab {

enum class Status { satisfied, violated, inconclusive };
std::string_view to_string(Status s) noexcept;

struct CriterionVerdict {
  std::string id;
  Status status = Status::inconclusive;
  std::optional<std::string> witness;  // decimal string
  std::optional<long> witness_index;
  std::string details;
};

struct CriteriaOptions {
  Rational tol{1, 1000000000};  // width of the c_n brackets
  long max_odd_index = 21;      // largest 2k+1 compared against c_{2k+1}
  bool exact_constants = true;  // use c_2 = 4 and c_3 = 3 directly
  bool exact_tiebreak = true;   // decide q inside a bracket by a Sturm count at t = q
  long grid = 512;
  Rational refine_tol{1, 1000000000000};  // relative width of the golden-section search
  long odd_sections_max = 10;
  unsigned bits = 256;
  ThetaOptions theta;
};

/// phi > 0 on [0, 1] through the strictly decreasing term chain.
CriterionVerdict unit_interval_positivity(const ExactSeries& s);

/// Searches (1, q_2] for a point with certified phi(x0) <= 0.
CriterionVerdict find_nonpositive_point(const ExactSeries& s, const CriteriaOptions& options = {});

/// S_{2n+1}(x0, phi) < 0 for n = 1..n_max, exactly.
CriterionVerdict odd_sections_negative(const ExactSeries& s, const Rational& x0, long n_max);

/// (S_{2n+1}(x, phi), sum_{k<=2n+1} (-1)^k x^k / Q^{k(k-1)/2}) with Q = q_{2n+1}.
template <class T>
std::pair<T, T> lemma3_gap(const QuotientProfile<T>& q, const T& x, long n);

/// q_{2k+1} > c_{2k+1} for every available odd index.
CriterionVerdict theorem1_check(const QuotientProfile<Rational>& q, ConstantsCache* cache,
                                const CriteriaOptions& options = {});

/// q_2 > 3.
CriterionVerdict corollary1_check(const QuotientProfile<Rational>& q);

/// B(q_2) = [-q_2(2q_2-9) + 2(q_2-3) sqrt(q_2(q_2-3))] / [q_2(4-q_2)] for 3 <= q_2 < 4.
/// Returns B when q_2(q_2-3) is a perfect square.
std::optional<Rational> q3_bound_exact(const Rational& q2);
Real q3_bound_value(const Rational& q2);
CriterionVerdict q3_bound_check(const QuotientProfile<Rational>& q);

enum class Overall { not_member, no_violation, inconclusive_only };
std::string_view to_string(Overall o) noexcept;

struct NecessaryReport {
  std::vector<CriterionVerdict> verdicts;
  Overall overall = Overall::inconclusive_only;
  std::string summary;
};

/// Runs every condition on a normalized series. Conditions that need
/// nondecreasing q are reported inconclusive when the profile is not.
NecessaryReport necessary_report(const ExactSeries& s, ConstantsCache* cache,
                                 const CriteriaOptions& options = {});

/// Bracket for c_n, with the closed forms c_2 = 4 and c_3 = 3 when enabled.
ThresholdResult c_bracket(long n, const Rational& tol, ConstantsCache* cache, const ThetaOptions& options,
                          bool exact_constants = true);

/// phi(x) enclosed to about 2^(-bits/2), raising the precision when rounding dominates.
CertifiedValue certified_phi(const ExactSeries& s, const Rational& x, unsigned bits = 256);

/// Short decimal approximation of x as an exact rational.
Rational decimal_rational(const Real& x, int digits = 20);

}  // namespace lplab
