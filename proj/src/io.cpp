#include "lplab/io.hpp"

#include <fstream>

#include "lplab/error.hpp"

namespace lplab {

namespace {

std::string trim(std::string s) {
  auto issp = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && issp(s.back())) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && issp(s[i])) ++i;
  return s.substr(i);
}

[[noreturn]] void fail(long line, const std::string& msg) {
  throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + msg, line);
}

/// Rows of (index, value) with consecutive indices starting at `first`.
std::vector<Rational> read_indexed(std::istream& in, const std::string& header, long first, ErrorKind nonpositive,
                                  const char* symbol) {
  std::string line;
  long lineno = 0;
  bool seen_header = false;
  std::vector<Rational> out;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (!seen_header) {
      std::string h;
      for (char c : line)
        if (c != ' ') h += c;
      if (h != header) fail(lineno, "expected header '" + header + "'");
      seen_header = true;
      continue;
    }
    auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
      fail(lineno, "expected two comma-separated fields");
    std::string idx = trim(line.substr(0, comma));
    std::string val = trim(line.substr(comma + 1));
    long k = 0;
    try {
      std::size_t used = 0;
      k = std::stol(idx, &used);
      if (used != idx.size()) fail(lineno, "bad index '" + idx + "'");
    } catch (const std::logic_error&) {
      fail(lineno, "bad index '" + idx + "'");
    }
    long expected = first + static_cast<long>(out.size());
    if (k != expected) fail(lineno, "expected index " + std::to_string(expected) + ", found " + std::to_string(k));
    Rational v;
    try {
      v = parse_rational(val);
    } catch (const Error&) {
      fail(lineno, "bad value '" + val + "'");
    }
    if (v <= 0)
      throw Error(nonpositive, "line " + std::to_string(lineno) + ": " + symbol + std::to_string(k) + " = " + val +
                                   " is not positive", k);
    out.push_back(std::move(v));
  }
  if (!seen_header) fail(lineno, "missing header '" + header + "'");
  return out;
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  return in;
}

}  // namespace

std::vector<Rational> read_coefficients_csv(std::istream& in) {
  auto a = read_indexed(in, "k,a_k", 0, ErrorKind::NonPositiveCoefficient, "a_");
  if (a.size() < 2) throw Error(ErrorKind::DegreeTooSmall, "need at least a_0 and a_1");
  return a;
}

std::vector<Rational> read_coefficients_csv(const std::filesystem::path& path) {
  auto in = open(path);
  return read_coefficients_csv(in);
}

void write_coefficients_csv(std::ostream& out, const std::vector<Rational>& a) {
  out << "k,a_k\n";
  for (std::size_t k = 0; k < a.size(); ++k) out << k << ',' << a[k].get_str() << '\n';
}

std::vector<Rational> read_quotients_csv(std::istream& in) { return read_indexed(in, "n,q_n", 2, ErrorKind::NonPositiveQuotient, "q_"); }

std::vector<Rational> read_quotients_csv(const std::filesystem::path& path) {
  auto in = open(path);
  return read_quotients_csv(in);
}

void write_quotients_csv(std::ostream& out, const std::vector<Rational>& q) {
  out << "n,q_n\n";
  for (std::size_t i = 0; i < q.size(); ++i) out << i + 2 << ',' << q[i].get_str() << '\n';
}

}  // namespace lplab
