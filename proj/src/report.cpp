#include "lplab/report.hpp"

#include "lplab/io.hpp"
#include "lplab/rootcert.hpp"
#include "lplab/zerogeom.hpp"

#ifndef LPLAB_VERSION
#define LPLAB_VERSION "0.0.0"
#endif

namespace lplab {

using nlohmann::ordered_json;

namespace {

std::string dec(const Rational& q) { return to_decimal(q, 40); }
std::string dec(const Real& x, int digits = 30) { return to_decimal(x, digits); }

Rational square_root_exact(const Rational& x, const std::string& what) {
  mpz_class n = x.get_num(), d = x.get_den();
  if (mpz_perfect_square_p(n.get_mpz_t()) && mpz_perfect_square_p(d.get_mpz_t())) {
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return Rational(rn, rd);
  }
  throw Error(ErrorKind::BadParameter, what + " is not the square of a rational; pass a instead");
}

Rational param_value(const std::map<std::string, std::string>& params, const std::string& key) {
  try {
    return parse_rational(params.at(key));
  } catch (const Error&) {
    throw Error(ErrorKind::BadParameter, "bad value for parameter " + key + ": '" + params.at(key) + "'");
  }
}

ExactSeries truncate_file_series(const ExactSeries& s, long degree) {
  if (degree < 0 || degree == s.degree()) return s;
  if (degree < 1 || degree > s.degree())
    throw Error(ErrorKind::BadParameter, "--degree must lie in 1.." + std::to_string(s.degree()) + " for file input");
  return s.resized(degree);
}

}  // namespace

std::string version() { return LPLAB_VERSION; }

ordered_json to_json(const CriterionVerdict& v) {
  ordered_json j;
  j["status"] = std::string(to_string(v.status));
  j["witness"] = v.witness ? ordered_json(*v.witness) : ordered_json(nullptr);
  j["witness_index"] = v.witness_index ? ordered_json(*v.witness_index) : ordered_json(nullptr);
  j["details"] = v.details;
  return j;
}

ordered_json to_json(const ThresholdResult& r) {
  ordered_json j;
  j["n"] = r.is_infinity() ? ordered_json("infinity") : ordered_json(r.n);
  j["lo"] = dec(r.lo);
  j["hi"] = dec(r.hi);
  j["width"] = to_decimal(r.width(), 6, Round::up);
  j["evaluations"] = r.evaluations;
  return j;
}

AnalysisInput family_input(const std::string& family, const std::map<std::string, std::string>& params,
                           long degree) {
  if (degree < 2) throw Error(ErrorKind::BadParameter, "--degree must be >= 2");
  for (const auto& [k, v] : params)
    if (k != "a" && k != "a2") throw Error(ErrorKind::BadParameter, "unknown parameter '" + k + "' (use a or a2)");
  if (params.size() != 1) throw Error(ErrorKind::BadParameter, "give exactly one of --param a=... or --param a2=...");
  const bool squared = params.count("a2") == 1;
  Rational value = param_value(params, squared ? "a2" : "a");

  AnalysisInput in;
  in.descriptor["source"] = "family";
  in.descriptor["family"] = family;
  in.descriptor["params"] = ordered_json::object();
  for (const auto& [k, v] : params) in.descriptor["params"][k] = v;
  in.descriptor["degree"] = degree;
  in.normalization_applied = true;
  if (family == "partial-theta") {
    Rational t = squared ? value : value * value;
    if (t <= 1) throw Error(ErrorKind::BadParameter, "partial theta needs a^2 > 1");
    in.series = partial_theta_normalized(t, degree);
    in.descriptor["a2"] = dec(t);
  } else if (family == "q-kummer") {
    Rational a = squared ? square_root_exact(value, "a2") : value;
    if (a <= 1) throw Error(ErrorKind::BadParameter, "q-Kummer needs a > 1");
    in.series = normalize(q_kummer(a, degree));
    in.descriptor["a"] = dec(a);
  } else {
    throw Error(ErrorKind::BadParameter, "unknown family '" + family + "' (partial-theta or q-kummer)");
  }
  return in;
}

AnalysisInput coefficients_input(const std::filesystem::path& path, long degree) {
  ExactSeries raw = truncate_file_series(from_coefficients(read_coefficients_csv(path)), degree);
  AnalysisInput in;
  in.descriptor["source"] = "coeffs";
  in.descriptor["path"] = path.string();
  in.descriptor["degree"] = raw.degree();
  in.normalization_applied = !raw.is_normalized();
  in.series = normalize(raw);
  return in;
}

AnalysisInput quotients_input(const std::filesystem::path& path, long degree) {
  std::vector<Rational> q = read_quotients_csv(path);
  if (q.empty()) throw Error(ErrorKind::DegreeTooSmall, "quotient file holds no q_n rows");
  ExactSeries raw = truncate_file_series(from_quotients(q, Rational(1), Rational(1)), degree);
  AnalysisInput in;
  in.descriptor["source"] = "quotients";
  in.descriptor["path"] = path.string();
  in.descriptor["degree"] = raw.degree();
  in.normalization_applied = false;
  in.series = raw;
  return in;
}

AnalysisResult analyze(const AnalysisInput& input, ConstantsCache* cache, const AnalyzeOptions& options) {
  const ExactSeries& s = input.series;
  if (s.degree() < 2) throw Error(ErrorKind::DegreeTooSmall, "analysis needs degree >= 2");
  PrecisionScope scope(options.bits);
  auto q = quotients(s);
  std::vector<std::string> warnings;

  ordered_json r;
  r["schema"] = 1;
  r["tool"] = {{"name", "lplab"}, {"version", version()}};
  r["arithmetic"] = {{"mode", options.mode == Mode::exact ? "exact" : "float"},
                     {"precision_bits", options.bits},
                     {"tol", to_decimal(options.tol, 17)}};
  r["input"] = input.descriptor;
  r["normalization_applied"] = input.normalization_applied;

  ordered_json profile;
  profile["first"] = ordered_json::array();
  for (long n = 2; n <= std::min<long>(q.max_index(), 11); ++n) profile["first"].push_back(dec(q.q(n)));
  profile["count"] = q.max_index() - 1;
  profile["nondecreasing"] = q.nondecreasing;
  profile["tail"] = s.tail().describe();
  r["q_profile"] = profile;

  ordered_json verdicts;
  HutchinsonVerdict h = hutchinson_check(s);
  verdicts["hutchinson"] = {{"status", h.holds ? "holds" : "fails"},
                            {"fails_at", h.fails_at ? ordered_json(*h.fails_at) : ordered_json(nullptr)},
                            {"scope", "q_2..q_" + std::to_string(q.max_index())}};
  if (h.holds && !s.tail().modeled())
    warnings.push_back("hutchinson: checked on the stored quotients only (no tail model)");

  CriteriaOptions copt;
  copt.tol = options.tol;
  copt.max_odd_index = options.max_odd_index;
  copt.bits = options.bits;
  NecessaryReport nec = necessary_report(s, cache, copt);
  for (const auto& v : nec.verdicts) {
    verdicts[v.id] = to_json(v);
    if (v.status == Status::inconclusive) warnings.push_back(v.id + ": inconclusive: " + v.details);
    if (v.id == "theorem1" && v.status != Status::inconclusive)
      warnings.push_back("theorem1: odd indices compared as q_{2k+1} > c_{2k+1} for each k");
  }
  r["verdicts"] = verdicts;

  Overall overall = nec.overall;
  if (overall == Overall::inconclusive_only && h.holds) overall = Overall::no_violation;
  int exit_code = overall == Overall::not_member ? 3 : (overall == Overall::no_violation ? 0 : 4);
  std::string summary;
  switch (overall) {
    case Overall::not_member:
      summary = "certified NOT in L-P I (under the nondecreasing-q hypothesis)";
      break;
    case Overall::no_violation:
      summary = h.holds ? "no violation found; q_n >= 4 on the stored profile"
                        : "no violation found; necessary conditions never certify membership";
      break;
    case Overall::inconclusive_only:
      summary = "inconclusive: no condition could be decided";
      break;
  }
  r["overall"] = {{"verdict", std::string(to_string(overall))}, {"summary", summary}, {"exit_code", exit_code}};

  NonrealBoundOptions nopt;
  nopt.tol = options.tol;
  NonrealBoundResult nb = nonreal_bound(q, cache, nopt);
  ordered_json nbj;
  nbj["applicable"] = nb.bound.has_value();
  if (nb.bound) {
    nbj["j0"] = nb.bound->j0;
    nbj["m0"] = nb.bound->m0;
    nbj["bound"] = nb.bound->bound;
    nbj["witness_q"] = dec(nb.bound->witness_q);
    nbj["witness_c"] = to_json(nb.bound->witness_c);
  }
  nbj["note"] = nb.note;
  r["nonreal_bound"] = nbj;

  ordered_json disks = ordered_json::array();
  for (long k : options.disks) {
    ordered_json d;
    d["k"] = k;
    try {
      DiskCount dc = zeros_in_rho_disk(s, k, s.degree(), options.bits);
      d["radius"] = dec(dc.radius);
      d["truncation_degree"] = dc.truncation_degree;
      d["zeros_in_disk"] = dc.zeros_in_disk;
      d["tail_certified"] = dc.tail_certified;
      d["min_modulus_on_circle"] = dec(dc.min_modulus_on_circle, 12);
      d["tail_bound"] = dc.tail_bound < 0 ? ordered_json(nullptr) : ordered_json(dec(dc.tail_bound, 12));
      d["samples"] = dc.samples;
      d["note"] = dc.note;
      if (!dc.note.empty()) warnings.push_back("disk k=" + std::to_string(k) + ": " + dc.note);
    } catch (const Error& e) {
      d["error"] = e.what();
      warnings.push_back("disk k=" + std::to_string(k) + ": " + e.what());
    }
    disks.push_back(d);
  }
  r["disk_counts"] = disks;

  ordered_json emp;
  emp["degree"] = s.degree();
  if (s.degree() <= 100) {
    EmpiricalCount ec = nonreal_empirical(s, s.degree(), options.mode, options.bits);
    emp["count"] = ec.count();
    emp["sturm"] = ec.exact ? ordered_json(*ec.exact) : ordered_json(nullptr);
    emp["solver"] = ec.approx ? ordered_json(*ec.approx) : ordered_json(nullptr);
    emp["agree"] = ec.agree;
    if (!ec.agree) warnings.push_back("empirical nonreal: Sturm and solver counts disagree");
    if (nb.bound && ec.count() > nb.bound->bound)
      warnings.push_back("empirical nonreal count of the truncation exceeds the bound for the full function");
  } else {
    emp["count"] = nullptr;
    warnings.push_back("empirical nonreal: skipped above degree 100");
  }
  r["empirical_nonreal"] = emp;
  r["warnings"] = warnings;

  return {std::move(r), exit_code};
}

}  // namespace lplab
