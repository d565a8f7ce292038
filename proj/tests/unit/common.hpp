#pragma once

#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "lplab/numeric.hpp"
#include "lplab/theta_constants.hpp"

namespace lplab::test {

inline Rational R(const char* s) { return parse_rational(s); }
inline Rational R(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline std::vector<Rational> Rs(std::initializer_list<const char*> xs) {
  std::vector<Rational> out;
  for (const char* x : xs) out.push_back(parse_rational(x));
  return out;
}

/// Shared constants cache for the test binary (LPLAB_CACHE or a temp file).
inline ConstantsCache& shared_cache() {
  static ConstantsCache cache([] {
    if (const char* env = std::getenv("LPLAB_CACHE"); env && *env) return std::filesystem::path(env);
    return std::filesystem::temp_directory_path() / "lplab-unit-constants.csv";
  }());
  return cache;
}

}  // namespace lplab::test
