#pragma once

// CSV readers and writers for coefficient files (`k,a_k`) and q-profile
// files (`n,q_n`, starting at n = 2). Values are decimal or `p/q` strings.
// Parse errors carry the 1-based line number as their index; nonpositive
// values raise NonPositiveCoefficient/NonPositiveQuotient with the k or n index.

#include <filesystem>
#include <istream>
#include <ostream>
#include <vector>

#include "lplab/series.hpp"

namespace lplab {

std::vector<Rational> read_coefficients_csv(std::istream& in);
std::vector<Rational> read_coefficients_csv(const std::filesystem::path& path);
void write_coefficients_csv(std::ostream& out, const std::vector<Rational>& a);

/// q_2..q_M in order.
std::vector<Rational> read_quotients_csv(std::istream& in);
std::vector<Rational> read_quotients_csv(const std::filesystem::path& path);
void write_quotients_csv(std::ostream& out, const std::vector<Rational>& q);

}  // namespace lplab
