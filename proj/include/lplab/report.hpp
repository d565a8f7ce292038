#pragma once

// Analysis driver shared by the command-line tool and the Python module:
// builds the input series, runs every check and assembles the JSON report.

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "lplab/criteria.hpp"
#include "lplab/series.hpp"
#include "lplab/theta_constants.hpp"

namespace lplab {

std::string version();

struct AnalysisInput {
  nlohmann::ordered_json descriptor;
  ExactSeries series{std::vector<Rational>{1, 1}};
  bool normalization_applied = false;
};

/// family: "partial-theta" (params a or a2) or "q-kummer" (param a, or a2
/// when it is a rational square). Throws BadParameter on unknown input.
AnalysisInput family_input(const std::string& family, const std::map<std::string, std::string>& params,
                           long degree);
AnalysisInput coefficients_input(const std::filesystem::path& path, long degree = -1);
AnalysisInput quotients_input(const std::filesystem::path& path, long degree = -1);

struct AnalyzeOptions {
  Mode mode = Mode::exact;
  unsigned bits = 256;
  Rational tol{1, 1000000000};
  std::vector<long> disks;  // k values for disk counts
  long max_odd_index = 21;
};

struct AnalysisResult {
  nlohmann::ordered_json report;
  int exit_code = 0;  // 0 no violation, 3 certified non-member, 4 inconclusive only
};

AnalysisResult analyze(const AnalysisInput& input, ConstantsCache* cache, const AnalyzeOptions& options = {});

nlohmann::ordered_json to_json(const CriterionVerdict& v);
nlohmann::ordered_json to_json(const ThresholdResult& r);

}  // namespace lplab
