#pragma once

// Zero localization for series with nondecreasing second quotients: the
// disks |z| < rho_k, sign-change points of phi, and the bound on the number
// of nonreal zeros in terms of the thresholds c_{2m}.

#include <optional>
#include <string>
#include <vector>

#include "lplab/criteria.hpp"
#include "lplab/rootcert.hpp"
#include "lplab/series.hpp"
#include "lplab/theta_constants.hpp"

namespace lplab {

/// rho_k = q_2 ... q_k sqrt(q_{k+1}), in log space. Falls back to the tail
/// model beyond the profile.
Real rho(const QuotientProfile<Rational>& q, long k);
/// rho_k^2, exactly.
Rational rho_squared(const QuotientProfile<Rational>& q, long k);

struct DiskCount {
  long k = 0;
  Real radius = 0;
  long truncation_degree = 0;
  long zeros_in_disk = 0;
  bool tail_certified = false;
  Real min_modulus_on_circle = 0;  // sampled minimum minus the Lipschitz margin
  Real tail_bound = 0;             // bound on |sum_{j>N} a_j z^j| for |z| = rho_k
  long samples = 0;
  std::string note;
};

/// Counts zeros of the degree-N truncation of the normalized series in
/// |z| < rho_k and tries to transfer the count to the full function.
DiskCount zeros_in_rho_disk(const ExactSeries& s, long k, long n, unsigned bits = 256);

struct SignPoint {
  long j = 0;
  Rational lo, hi;  // the open interval (q_2...q_j, q_2...q_j q_{j+1})
  std::optional<Rational> x;
  std::optional<CertifiedValue> value;  // phi(x)
  bool skipped = false;
  std::string note;
};

/// Smallest j0 + 2 m0 - 3 over j0 >= 3, m0 >= 1 with q_{j0} >= hi(c_{2m0}).
std::optional<long> sign_point_threshold(const QuotientProfile<Rational>& q, ConstantsCache* cache,
                                         const Rational& tol = Rational(1, 1000000000), long max_m0 = 10);

/// For j in [j_lo, j_hi], samples the interval geometrically at `samples`
/// points looking for (-1)^j phi(x_j) >= 0 certified. Indices below
/// `min_j` are skipped.
std::vector<SignPoint> sign_change_points(const ExactSeries& s, long j_lo, long j_hi, long samples,
                                          std::optional<long> min_j);

struct NonrealBound {
  long j0 = 0;
  long m0 = 0;
  long bound = 0;
  Rational witness_q;
  ThresholdResult witness_c;
};

struct NonrealBoundResult {
  std::optional<NonrealBound> bound;
  std::string note;  // reason when not applicable
};

struct NonrealBoundOptions {
  long max_m0 = 10;
  Rational tol{1, 1000000000};
  ThetaOptions theta;
};

NonrealBoundResult nonreal_bound(const QuotientProfile<Rational>& q, ConstantsCache* cache,
                                 const NonrealBoundOptions& options = {});

struct EmpiricalCount {
  std::optional<long> exact;   // Sturm
  std::optional<long> approx;  // paired complex roots
  bool agree = true;
  long count() const { return exact ? *exact : approx.value_or(-1); }
};

/// Nonreal zeros of the degree-N truncation. Mode::exact runs both engines;
/// Mode::floating only the complex solver.
EmpiricalCount nonreal_empirical(const ExactSeries& s, long n, Mode mode = Mode::exact, unsigned bits = 256);

}  // namespace lplab
