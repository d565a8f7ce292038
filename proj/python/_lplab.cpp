#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lplab/criteria.hpp"
#include "lplab/report.hpp"
#include "lplab/rootcert.hpp"
#include "lplab/verify.hpp"
#include "lplab/zerogeom.hpp"

namespace py = pybind11;
using namespace lplab;

namespace {

std::vector<Rational> parse_all(const std::vector<std::string>& values) {
  std::vector<Rational> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(parse_rational(v));
  return out;
}

py::dict threshold_dict(const ThresholdResult& r) {
  py::dict d;
  d["n"] = r.is_infinity() ? py::object(py::str("infinity")) : py::object(py::int_(r.n));
  d["lo"] = to_decimal(r.lo, 40, Round::down);
  d["hi"] = to_decimal(r.hi, 40, Round::up);
  d["width"] = to_decimal(r.width(), 6, Round::up);
  d["evaluations"] = r.evaluations;
  return d;
}

std::unique_ptr<ConstantsCache> open_cache(const std::optional<std::string>& path) {
  return std::make_unique<ConstantsCache>(path ? std::filesystem::path(*path) : ConstantsCache::default_path());
}

}  // namespace

PYBIND11_MODULE(_lplab, m) {
  m.doc() = "Certified second-quotient analysis (C++ core)";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::module_::import("builtins").attr("ValueError");
      PyErr_SetString(exc.ptr(), e.what());
    }
  });

  m.def("version", &version);

  m.def(
      "quotients",
      [](const std::vector<std::string>& coeffs) {
        auto q = quotients(from_coefficients(parse_all(coeffs)));
        std::vector<std::string> out;
        for (const auto& v : q.q_values) out.push_back(v.get_str());
        return py::make_tuple(out, q.nondecreasing);
      },
      py::arg("coeffs"), "Exact q_2..q_N as 'p/q' strings and the nondecreasing flag.");

  m.def(
      "from_quotients",
      [](const std::vector<std::string>& q, const std::string& a0, const std::string& a1) {
        auto s = from_quotients(parse_all(q), parse_rational(a0), parse_rational(a1));
        std::vector<std::string> out;
        for (const auto& v : s.coefficients()) out.push_back(v.get_str());
        return out;
      },
      py::arg("q"), py::arg("a0") = "1", py::arg("a1") = "1");

  m.def(
      "classify_roots",
      [](const std::vector<std::string>& coeffs) {
        RootCountReport r = classify_roots(ExactPolynomial(parse_all(coeffs)));
        py::dict d;
        d["degree"] = r.degree;
        d["distinct_real"] = r.distinct_real;
        d["real_with_multiplicity"] = r.real_with_multiplicity;
        d["nonreal"] = r.nonreal;
        d["all_real"] = r.all_real;
        d["all_negative"] = r.all_negative;
        d["all_simple"] = r.all_simple;
        return d;
      },
      py::arg("coeffs"), "Exact root classification of c_0 + c_1 x + ... (coefficients as decimal or p/q strings).");

  m.def(
      "hutchinson_check",
      [](const std::vector<std::string>& coeffs) {
        HutchinsonVerdict h = hutchinson_check(from_coefficients(parse_all(coeffs)));
        return py::make_tuple(h.holds, h.fails_at);
      },
      py::arg("coeffs"));

  m.def(
      "compute_c",
      [](long n, const std::string& tol, const std::optional<std::string>& cache) {
        Rational t = parse_rational(tol);
        ThresholdResult r;
        {
          py::gil_scoped_release release;
          r = cache ? open_cache(cache)->get_c(n, t) : compute_c(n, t);
        }
        return threshold_dict(r);
      },
      py::arg("n"), py::arg("tol") = "1e-9", py::arg("cache") = py::none());

  m.def(
      "q_infinity",
      [](const std::string& tol, const std::optional<std::string>& cache) {
        Rational t = parse_rational(tol);
        ThresholdResult r;
        {
          py::gil_scoped_release release;
          r = cache ? open_cache(cache)->get_q_infinity(t) : compute_q_infinity(t);
        }
        return threshold_dict(r);
      },
      py::arg("tol") = "1e-6", py::arg("cache") = py::none());

  m.def(
      "analyze_json",
      [](const std::optional<std::string>& family, const std::map<std::string, std::string>& params,
         const std::optional<std::string>& coeffs, const std::optional<std::string>& quotients, long degree,
         const std::string& mode, unsigned bits, const std::string& tol, const std::optional<std::string>& cache,
         const std::vector<long>& disks) {
        int sources = family.has_value() + coeffs.has_value() + quotients.has_value();
        if (sources != 1) throw Error(ErrorKind::BadParameter, "give exactly one of family, coeffs, quotients");
        AnalysisInput in = family ? family_input(*family, params, degree < 0 ? 40 : degree)
                           : coeffs ? coefficients_input(*coeffs, degree)
                                    : quotients_input(*quotients, degree);
        AnalyzeOptions opt;
        if (mode != "exact" && mode != "float") throw Error(ErrorKind::BadParameter, "mode must be exact or float");
        opt.mode = mode == "float" ? Mode::floating : Mode::exact;
        opt.bits = bits;
        opt.tol = parse_rational(tol);
        opt.disks = disks;
        auto c = open_cache(cache);
        AnalysisResult res;
        {
          py::gil_scoped_release release;
          res = analyze(in, c.get(), opt);
        }
        return py::make_tuple(res.report.dump(), res.exit_code);
      },
      py::arg("family") = py::none(), py::arg("params") = std::map<std::string, std::string>{},
      py::arg("coeffs") = py::none(), py::arg("quotients") = py::none(), py::arg("degree") = -1,
      py::arg("mode") = "exact", py::arg("bits") = 256, py::arg("tol") = "1e-9", py::arg("cache") = py::none(),
      py::arg("disks") = std::vector<long>{});

  m.def(
      "verify",
      [](const std::string& suite, std::uint64_t seed, long trials, const std::optional<std::string>& cache) {
        auto c = open_cache(cache);
        std::ostringstream log;
        SuiteResult r;
        {
          py::gil_scoped_release release;
          r = run_suite(suite, seed, trials, c.get(), log);
        }
        py::dict d;
        d["suite"] = r.suite;
        d["seed"] = r.seed;
        d["trials"] = r.trials;
        d["failures"] = r.failures;
        d["passed"] = r.passed();
        d["log"] = log.str();
        return d;
      },
      py::arg("suite"), py::arg("seed") = 1, py::arg("trials") = -1, py::arg("cache") = py::none());
}
