#pragma once

// Randomized property suites behind `lplab verify`. Every suite is a pure
// function of (seed, trials): instances are drawn from raw mt19937_64 output.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "lplab/theta_constants.hpp"

namespace lplab {

struct SuiteResult {
  std::string suite;
  std::uint64_t seed = 0;
  long trials = 0;
  long failures = 0;
  bool passed() const { return failures == 0; }
};

const std::vector<std::string>& suite_names();
long default_trials(const std::string& suite);

/// Runs one suite, printing one line per failing tuple (and per case for
/// theorem2) to `log`. trials < 0 selects the suite default.
SuiteResult run_suite(const std::string& suite, std::uint64_t seed, long trials, ConstantsCache* cache,
                      std::ostream& log);

}  // namespace lplab
