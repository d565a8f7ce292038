#pragma once

// Real-rootedness certification (exact Sturm sequences), an Aberth
// simultaneous-iteration solver for approximate complex roots, and the
// Hutchinson q_n >= 4 test.

#include <optional>
#include <utility>
#include <vector>

#include "lplab/complex.hpp"
#include "lplab/polynomial.hpp"
#include "lplab/series.hpp"

namespace lplab {

struct RootCountReport {
  long degree = 0;
  long distinct_real = 0;
  long real_with_multiplicity = 0;
  long nonreal = 0;
  bool all_real = true;
  bool all_negative = true;     // every real root < 0
  bool all_nonpositive = true;  // every real root <= 0
  bool all_simple = true;
};

/// p / gcd(p, p'): same distinct roots, all simple. Monic.
ExactPolynomial square_free_part(const ExactPolynomial& p);
[[noreturn]] RealPolynomial square_free_part(const RealPolynomial& p);

/// Square-free factorization p = c * prod f_i^i; entry i-1 holds f_i.
std::vector<ExactPolynomial> square_free_factors(const ExactPolynomial& p);

/// Sturm chain p, p', -rem(...), ... with every entry scaled by a positive
/// constant. The last entry is gcd(p, p') up to a constant.
std::vector<ExactPolynomial> sturm_chain(const ExactPolynomial& p);

/// Number of distinct real roots in (lo, hi]; an empty optional stands for
/// -infinity (lo) or +infinity (hi). Endpoints that are roots are moved by
/// an exact rational shift smaller than the distance to any other root.
long sturm_count(const ExactPolynomial& p, const std::optional<Rational>& lo,
                 const std::optional<Rational>& hi);
[[noreturn]] long sturm_count(const RealPolynomial& p, const std::optional<Rational>& lo,
                              const std::optional<Rational>& hi);

RootCountReport classify_roots(const ExactPolynomial& p);
[[noreturn]] RootCountReport classify_roots(const RealPolynomial& p);

struct ApproxRoot {
  Complex z;
  Real residual = 0;          // |p(z)|
  Real inclusion_radius = 0;  // deg * |p(z)| / |p'(z)|, a disk around z holding a root
  bool real = false;
};

struct SolverOptions {
  int max_iters = 200;
  int restarts = 3;
  unsigned long seed = 0x5eed;
};

/// All d roots with multiplicity. Iterates until |p(z)| <= tol * sum |c_k||z|^k
/// for every root; nonreal roots are returned as exact conjugate pairs.
std::vector<ApproxRoot> complex_roots(const RealPolynomial& p, const Real& tol,
                                      const SolverOptions& options = {});

long count_nonreal(const std::vector<ApproxRoot>& roots);

struct HutchinsonVerdict {
  bool holds = true;
  std::optional<long> fails_at;
};

template <class T>
HutchinsonVerdict hutchinson_check(const Series<T>& s);

struct WindowVerdict {
  bool all_pass = true;
  long windows_checked = 0;
  long boundary_windows = 0;  // real-rooted windows with a repeated root
  std::optional<std::pair<long, long>> first_failure;
  std::optional<RootCountReport> failure_report;
};

/// Checks sum_{k=m}^{n} a_k z^k for every 0 <= m < n <= scan_degree with
/// n - m <= max_window: all roots real and non-positive. scan_degree < 0
/// means the stored degree.
WindowVerdict consecutive_sections_hyperbolic(const ExactSeries& s, long max_window,
                                              long scan_degree = -1);
[[noreturn]] WindowVerdict consecutive_sections_hyperbolic(const FloatSeries& s, long max_window,
                                                           long scan_degree = -1);

}  // namespace lplab
