#include <cstdint>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lplab/report.hpp"
#include "lplab/theta_constants.hpp"
#include "lplab/verify.hpp"

using namespace lplab;
using nlohmann::ordered_json;

namespace {

constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

bool is_input_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::NonPositiveCoefficient:
    case ErrorKind::NonPositiveQuotient:
    case ErrorKind::DegreeTooSmall:
    case ErrorKind::NotNormalized:
    case ErrorKind::BadParameter:
    case ErrorKind::ParseError:
    case ErrorKind::InsufficientProfile:
      return true;
    default:
      return false;
  }
}

Rational parse_tol(const std::string& text) {
  Rational t = parse_rational(text);
  if (t <= 0) throw Error(ErrorKind::BadParameter, "--tol must be positive");
  return t;
}

std::filesystem::path cache_path(const std::string& flag) {
  return flag.empty() ? ConstantsCache::default_path() : std::filesystem::path(flag);
}

void warn_corruption(const ConstantsCache& cache) {
  if (cache.corruption()) std::cerr << "warning: constants cache ignored and rebuilt: " << *cache.corruption() << '\n';
}

int digits_for_width(const Rational& w) {
  long e = w > 0 ? -log2_magnitude(w) : 0;
  return static_cast<int>(std::max<long>(20, static_cast<long>(static_cast<double>(e) * 0.30103) + 14));
}

struct ConstantsArgs {
  long max_n = 7;
  std::string tol = "1e-9";
  std::string cache;
  std::string format = "csv";
  unsigned bits = 256;
};

int run_constants(const ConstantsArgs& a) {
  if (a.max_n < 2) {
    std::cerr << "error: --max-n must be >= 2\n";
    return kExitUsage;
  }
  Rational tol = parse_tol(a.tol);
  ConstantsCache cache(cache_path(a.cache));
  warn_corruption(cache);
  ThetaOptions opt;
  opt.bits = a.bits;
  // q_inf first: it may tighten cached rows that the table then reuses.
  ThresholdResult q_inf = cache.get_q_infinity(tol, opt);
  std::vector<ThresholdResult> rows = parity_table(a.max_n, tol, opt, &cache);
  rows.push_back(q_inf);

  auto lo_str = [](const ThresholdResult& r) { return to_decimal(r.lo, digits_for_width(r.width()), Round::down); };
  auto hi_str = [](const ThresholdResult& r) { return to_decimal(r.hi, digits_for_width(r.width()), Round::up); };
  auto width_str = [](const ThresholdResult& r) { return to_decimal(r.width(), 6, Round::up); };
  if (a.format == "json") {
    ordered_json out;
    out["schema"] = 1;
    out["tol"] = a.tol;
    out["rows"] = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json j;
      j["n"] = r.is_infinity() ? ordered_json("infinity") : ordered_json(r.n);
      j["lo"] = lo_str(r);
      j["hi"] = hi_str(r);
      j["width"] = width_str(r);
      out["rows"].push_back(j);
    }
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << "n,lo,hi,width\n";
    for (const auto& r : rows)
      std::cout << (r.is_infinity() ? std::string("infinity") : std::to_string(r.n)) << ',' << lo_str(r) << ','
                << hi_str(r) << ',' << width_str(r) << '\n';
  }
  return 0;
}

struct AnalyzeArgs {
  std::string family;
  std::vector<std::string> params;
  std::string coeffs;
  std::string quotients;
  long degree = -1;
  std::string mode = "exact";
  unsigned bits = 256;
  std::string tol = "1e-9";
  std::string cache;
  std::string format = "json";
  std::vector<long> disks;
};

void print_csv(const ordered_json& report) {
  std::cout << "key,value\n";
  const ordered_json flat = report.flatten();
  for (const auto& [key, value] : flat.items()) {
    std::string v = value.is_string() ? value.get<std::string>() : value.dump();
    bool quote = v.find_first_of(",\"\n") != std::string::npos;
    if (quote) {
      std::string q = "\"";
      for (char c : v) q += c == '"' ? std::string("\"\"") : std::string(1, c);
      v = q + "\"";
    }
    std::cout << key << ',' << v << '\n';
  }
}

int run_analyze(const AnalyzeArgs& a) {
  int sources = !a.family.empty() + !a.coeffs.empty() + !a.quotients.empty();
  if (sources != 1) {
    std::cerr << "error: give exactly one of --family, --coeffs, --quotients\n";
    return kExitUsage;
  }
  AnalysisInput input;
  if (!a.family.empty()) {
    std::map<std::string, std::string> params;
    for (const auto& kv : a.params) {
      auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) throw Error(ErrorKind::BadParameter, "--param expects k=v, got '" + kv + "'");
      if (!params.emplace(kv.substr(0, eq), kv.substr(eq + 1)).second)
        throw Error(ErrorKind::BadParameter, "parameter '" + kv.substr(0, eq) + "' given twice");
    }
    input = family_input(a.family, params, a.degree < 0 ? 40 : a.degree);
  } else if (!a.params.empty()) {
    throw Error(ErrorKind::BadParameter, "--param only applies to --family");
  } else if (!a.coeffs.empty()) {
    input = coefficients_input(a.coeffs, a.degree);
  } else {
    input = quotients_input(a.quotients, a.degree);
  }
  AnalyzeOptions opt;
  opt.mode = a.mode == "float" ? Mode::floating : Mode::exact;
  opt.bits = a.bits;
  opt.tol = parse_tol(a.tol);
  opt.disks = a.disks;
  ConstantsCache cache(cache_path(a.cache));
  warn_corruption(cache);
  AnalysisResult res = analyze(input, &cache, opt);
  if (a.format == "csv") print_csv(res.report);
  else std::cout << res.report.dump(2) << '\n';
  return res.exit_code;
}

struct VerifyArgs {
  std::string suite;
  std::uint64_t seed = 1;
  long trials = -1;
  std::string cache;
};

int run_verify(const VerifyArgs& a) {
  ConstantsCache cache(cache_path(a.cache));
  warn_corruption(cache);
  std::vector<std::string> suites = a.suite == "all" ? suite_names() : std::vector<std::string>{a.suite};
  bool ok = true;
  for (const auto& s : suites) {
    SuiteResult r = run_suite(s, a.seed, a.trials, &cache, std::cout);
    std::cout << "suite=" << r.suite << " seed=" << r.seed << " trials=" << r.trials << " failures=" << r.failures
              << ' ' << (r.passed() ? "PASS" : "FAIL") << '\n';
    ok &= r.passed();
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified second-quotient analysis of entire functions with positive coefficients", "lplab"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);

  ConstantsArgs ca;
  auto* constants = app.add_subcommand("constants", "Bracket c_2..c_max_n and q_inf");
  constants->add_option("--max-n", ca.max_n, "Largest section index")->capture_default_str();
  constants->add_option("--tol", ca.tol, "Bracket width")->capture_default_str();
  constants->add_option("--cache", ca.cache, "Constants cache file (default $LPLAB_CACHE or ~/.cache/lplab)");
  constants->add_option("--format", ca.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  constants->add_option("--precision-bits", ca.bits)->check(CLI::Range(64u, 65536u))->capture_default_str();

  AnalyzeArgs aa;
  auto* analyze_cmd = app.add_subcommand("analyze", "Run every criterion on one function");
  analyze_cmd->add_option("--family", aa.family)->check(CLI::IsMember({"partial-theta", "q-kummer"}));
  analyze_cmd->add_option("--param", aa.params, "Family parameter a=... or a2=...");
  analyze_cmd->add_option("--coeffs", aa.coeffs, "CSV with header k,a_k");
  analyze_cmd->add_option("--quotients", aa.quotients, "CSV with header n,q_n");
  analyze_cmd->add_option("--degree", aa.degree, "Truncation degree (families default to 40)");
  analyze_cmd->add_option("--mode", aa.mode)->check(CLI::IsMember({"exact", "float"}))->capture_default_str();
  analyze_cmd->add_option("--precision-bits", aa.bits)->check(CLI::Range(64u, 65536u))->capture_default_str();
  analyze_cmd->add_option("--tol", aa.tol, "Width of the c_n brackets")->capture_default_str();
  analyze_cmd->add_option("--cache", aa.cache, "Constants cache file");
  analyze_cmd->add_option("--format", aa.format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  analyze_cmd->add_option("--disk", aa.disks, "Count zeros in the rho_k disk for this k (repeatable)");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run a randomized property suite");
  std::vector<std::string> choices = suite_names();
  choices.push_back("all");
  verify->add_option("--suite", va.suite)->required()->check(CLI::IsMember(choices));
  verify->add_option("--seed", va.seed)->capture_default_str();
  verify->add_option("--trials", va.trials, "Number of instances (default per suite)");
  verify->add_option("--cache", va.cache, "Constants cache file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (constants->parsed()) return run_constants(ca);
    if (analyze_cmd->parsed()) return run_analyze(aa);
    return run_verify(va);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (e.kind() == ErrorKind::BudgetExceeded) return kExitInternal;
    return is_input_error(e.kind()) ? kExitUsage : kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}
