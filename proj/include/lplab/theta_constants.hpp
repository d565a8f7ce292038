#pragma once

// Thresholds c_n: the least t = a^2 for which the section
// S_n(z, g_a) = sum_{j<=n} a^(-j^2) z^j has only real zeros, together with
// the common limit q_inf of the even and odd subsequences.
//
// All work is done in the variable w = z / a, where the section becomes
// P_t(w) = sum_j t^(-j(j-1)/2) w^j with rational coefficients and the
// real-rootedness test reads: min of P_t over [-t, -1] is <= 0.

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "lplab/polynomial.hpp"
#include "lplab/series.hpp"

namespace lplab {

inline constexpr long kInfinityIndex = -1;

struct ThresholdResult {
  long n = 0;  // kInfinityIndex for q_inf
  Rational lo = 0;
  Rational hi = 0;
  Rational tol = 0;
  long evaluations = 0;

  Rational width() const { return hi - lo; }
  bool is_infinity() const { return n == kInfinityIndex; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

struct ThetaOptions {
  unsigned bits = 256;       // floor for the working precision
  unsigned max_bits = 8192;  // precision ceiling before the exact fallback
  long max_n = 60;           // largest section index compute_q_infinity may use
  long max_cells = 200000;   // branch-and-bound budget per minimization
};

/// Coefficients a^(-j^2), j = 0..n, at the current working precision.
RealPolynomial theta_section(long n, const Real& a);
/// Exact P_t(w) = S_n(a w, g_a) with t = a^2.
ExactPolynomial theta_section_scaled(long n, const Rational& a_squared);

/// Certified minimum of S_n(z, g_a) over z in [-a^3, -a], with t = a^2
/// given exactly. The enclosure radius is at most max(target_radius, the
/// rounding floor of the working precision).
CertifiedValue min_on_bracket(long n, const Rational& a_squared, const Real& target_radius,
                              const ThetaOptions& options = {});

/// True iff S_n(., g_a) has only real zeros. Raises precision until the sign
/// of the minimum is certain, then falls back to an exact Sturm count.
bool section_real_rooted(long n, const Rational& a_squared, const ThetaOptions& options = {},
                         long* evaluations = nullptr);

/// c_2 = 4 and c_3 = 3 are known in closed form.
std::optional<Rational> known_exact_constant(long n);

/// Bisection in t over [3, 4] (widened to [2.9, 4.1] when an endpoint
/// disagrees) down to width <= tol.
ThresholdResult compute_c(long n, const Rational& tol, const ThetaOptions& options = {});
/// Continues the bisection of an existing bracket down to width <= tol.
ThresholdResult refine_c(ThresholdResult r, const Rational& tol, const ThetaOptions& options = {});

class ConstantsCache;

/// [lo(c_{2m+1}), hi(c_{2m})] for m = 1, 2, ... until the width is <= tol.
ThresholdResult compute_q_infinity(const Rational& tol, const ThetaOptions& options = {},
                                   ConstantsCache* cache = nullptr);

/// c_2..c_max_n at width <= tol, refined further until the chain
/// c_3 < c_5 < ... < c_6 < c_4 < c_2 has pairwise disjoint brackets.
std::vector<ThresholdResult> parity_table(long max_n, const Rational& tol, const ThetaOptions& options = {},
                                          ConstantsCache* cache = nullptr);

/// Read-through persistent table of brackets, one row per index.
/// File: CSV `n,tol,lo,hi,evaluations,timestamp`; n = -1 holds q_inf.
class ConstantsCache {
 public:
  explicit ConstantsCache(std::filesystem::path path);

  /// $LPLAB_CACHE, else ~/.cache/lplab/constants.csv.
  static std::filesystem::path default_path();

  const std::filesystem::path& path() const { return path_; }
  /// Stored bracket for n, if its width is at most tol.
  std::optional<ThresholdResult> lookup(long n, const Rational& tol) const;
  /// Keeps the narrower of the stored and the new bracket, then rewrites the
  /// file. Returns the kept row with the outward-rounded decimal endpoints
  /// exactly as persisted, so warm and cold lookups agree.
  ThresholdResult store(const ThresholdResult& r);

  ThresholdResult get_c(long n, const Rational& tol, const ThetaOptions& options = {});
  ThresholdResult get_q_infinity(const Rational& tol, const ThetaOptions& options = {});

  /// Set when the file existed but could not be parsed; its rows were dropped.
  const std::optional<std::string>& corruption() const { return corruption_; }
  long hits() const { return hits_; }
  long misses() const { return misses_; }

 private:
  void load();
  void write_locked() const;

  std::filesystem::path path_;
  std::map<long, ThresholdResult> rows_;
  std::map<long, std::string> stamps_;
  std::optional<std::string> corruption_;
  long hits_ = 0;
  long misses_ = 0;
  mutable std::mutex mutex_;
};

}  // namespace lplab
