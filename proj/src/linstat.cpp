#include "symp/linstat.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <regex>
#include <sstream>

#include "symp/moments.hpp"

namespace symp {

void FourierTestFn::set(int j, const BigRational& value) {
  const int key = j < 0 ? -j : j;
  if (value == 0)
    coef_.erase(key);
  else
    coef_[key] = value;
}

BigRational FourierTestFn::coefficient(int j) const {
  auto it = coef_.find(j < 0 ? -j : j);
  return it == coef_.end() ? BigRational(0) : it->second;
}

double FourierTestFn::coefficient_double(int j) const {
  return coefficient(j).convert_to<double>();
}

std::vector<int> FourierTestFn::support() const {
  std::vector<int> out;
  for (auto it = coef_.rbegin(); it != coef_.rend(); ++it)
    if (it->first != 0) out.push_back(-it->first);
  for (const auto& [j, v] : coef_) out.push_back(j);
  return out;
}

int FourierTestFn::bandwidth() const noexcept { return coef_.empty() ? -1 : coef_.rbegin()->first; }

double FourierTestFn::operator()(double t) const {
  double sum = 0.0;
  for (const auto& [j, v] : coef_) {
    const double c = v.convert_to<double>();
    sum += j == 0 ? c : 2.0 * c * std::cos(2.0 * std::numbers::pi * j * t);
  }
  return sum;
}

namespace {

// Base-10 integer text with optional sign. cpp_int's string constructor
// would read a leading 0 as an octal prefix.
BigInt decimal_integer(std::string digits) {
  bool negative = false;
  if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
    negative = digits[0] == '-';
    digits.erase(0, 1);
  }
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
  const BigInt v(digits);
  return negative ? BigInt(-v) : v;
}

}  // namespace

BigRational parse_rational(std::string_view text) {
  static const std::regex fraction(R"(([+-]?\d+)/(\d+))");
  static const std::regex decimal(R"(([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?)");
  const std::string s(text);
  std::smatch m;
  if (std::regex_match(s, m, fraction)) {
    const BigInt den = decimal_integer(m[2].str());
    if (den == 0) throw ParseError("zero denominator in '" + s + "'");
    return BigRational(decimal_integer(m[1].str()), den);
  }
  if (!std::regex_match(s, m, decimal) || (m[2].length() == 0 && m[3].length() == 0))
    throw ParseError("not a number: '" + s + "'");
  BigRational value{decimal_integer(m[2].str() + m[3].str())};
  long long exponent = -static_cast<long long>(m[3].length());
  if (m[4].matched) {
    long long e = 0;
    const std::string es = m[4].str();
    const char* first = es.data() + (es[0] == '+' ? 1 : 0);
    auto [ptr, ec] = std::from_chars(first, es.data() + es.size(), e);
    if (ec != std::errc() || e > 4096 || e < -4096) throw ParseError("bad exponent in '" + s + "'");
    exponent += e;
  }
  const BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::llabs(exponent)));
  if (exponent >= 0)
    value *= scale;
  else
    value /= scale;
  return m[1].str() == "-" ? BigRational(-value) : value;
}

FourierTestFn parse_fourier(std::string_view text) {
  FourierTestFn f;
  std::map<int, BigRational> seen;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    const auto colon = tok.find(':');
    if (colon == std::string::npos || colon == 0) throw ParseError("expected j:value, got '" + tok + "'");
    int j = 0;
    const char* first = tok.data() + (tok[0] == '+' ? 1 : 0);
    auto [ptr, ec] = std::from_chars(first, tok.data() + colon, j);
    if (ec != std::errc() || ptr != tok.data() + colon) throw ParseError("bad frequency in '" + tok + "'");
    const BigRational v = parse_rational(std::string_view(tok).substr(colon + 1));
    const int key = j < 0 ? -j : j;
    auto it = seen.find(key);
    if (it != seen.end() && it->second != v)
      throw ParseError("conflicting values for frequency +-" + std::to_string(key) + " (the function must be even)");
    seen[key] = v;
    f.set(key, v);
  }
  return f;
}

std::string format_fourier(const FourierTestFn& f) {
  std::string out;
  for (const auto& [j, v] : f.half_table()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(j) + ':' + v.str();
  }
  return out;
}

BigRational l2_norm_squared(const FourierTestFn& f) {
  BigRational sum = 0;
  for (const auto& [j, v] : f.half_table()) sum += (j == 0 ? 1 : 2) * v * v;
  return sum;
}

double l2_norm(const FourierTestFn& f) { return std::sqrt(l2_norm_squared(f).convert_to<double>()); }

std::complex<double> w_statistic_complex(const FourierTestFn& f, int nu, const EigenAngles& e) {
  const std::vector<int> support = f.support();
  std::complex<double> total = 0.0;
  for (double theta : e.theta) {
    for (double t : {theta, -theta}) {
      std::complex<double> ft = 0.0;
      for (int j : support) ft += f.coefficient_double(j) * std::polar(1.0, 2.0 * std::numbers::pi * j * t);
      total += ft * std::polar(1.0, 2.0 * std::numbers::pi * nu * t);
    }
  }
  return total;
}

double w_statistic(const FourierTestFn& f, int nu, const EigenAngles& e) {
  double total = 0.0;
  for (double theta : e.theta) total += 2.0 * f(theta) * std::cos(2.0 * std::numbers::pi * nu * theta);
  return total;
}

namespace {

// The trace index j + nu for each support frequency j.
struct Term {
  Partition traces;    // nonzero |j_i| with multiplicity
  int zero_traces = 0;  // j_i = 0, each contributing tr(U^0) = 2n
};

Term collect(const std::vector<int>& support, const std::vector<int>& counts, int nu) {
  Term t;
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (counts[i] == 0) continue;
    const int k = std::abs(support[i] + nu);
    if (k == 0)
      t.zero_traces += counts[i];
    else
      t.traces.add(k, counts[i]);
  }
  return t;
}

std::string describe(const std::vector<int>& support, const std::vector<int>& counts, int nu) {
  std::string s = "(";
  for (std::size_t i = 0; i < support.size(); ++i)
    for (int c = 0; c < counts[i]; ++c) {
      if (s.size() > 1) s += ',';
      s += std::to_string(support[i] + nu);
    }
  return s + ")";
}

// All count vectors over `slots` entries summing to m, lexicographic.
std::vector<std::vector<int>> compositions(std::size_t slots, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(slots, 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == slots) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (int c = left; c >= 0; --c) {
      cur[i] = c;
      self(self, i + 1, left - c);
    }
  };
  if (slots > 0) rec(rec, 0, m);
  return out;
}

void check_args(int n, int m) {
  if (n < 1) throw InvalidArgument("n must be >= 1");
  if (m < 0) throw InvalidArgument("m must be >= 0");
}

void check_range(int n, int nu, const std::vector<int>& support, const std::vector<std::vector<int>>& comps) {
  for (const auto& c : comps) {
    const Term t = collect(support, c, nu);
    if (size(t.traces) > moment_usp_max_size(n))
      throw OutOfRange("multi-index " + describe(support, c, nu) + " needs a trace moment of size " +
                       std::to_string(size(t.traces)) + " > 4n+1 = " + std::to_string(moment_usp_max_size(n)));
  }
}

BigRational term_expectation(int n, const Term& t) {
  BigInt v = moment_usp(n, t.traces);
  for (int k = 0; k < t.zero_traces; ++k) v *= 2 * n;
  return BigRational(v);
}

BigInt factorial(int k) {
  BigInt r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

}  // namespace

BigRational w_moment_exact(int n, int nu, int m, const FourierTestFn& f) {
  check_args(n, m);
  if (m == 0) return 1;
  if (f.is_zero()) return 0;
  const std::vector<int> support = f.support();
  const auto comps = compositions(support.size(), m);
  check_range(n, nu, support, comps);

  std::vector<BigRational> terms(comps.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(comps.size()); ++i) {
    const auto& c = comps[static_cast<std::size_t>(i)];
    BigRational w{factorial(m)};
    for (std::size_t s = 0; s < support.size(); ++s) {
      w /= factorial(c[s]);
      for (int k = 0; k < c[s]; ++k) w *= f.coefficient(support[s]);
    }
    terms[static_cast<std::size_t>(i)] = w * term_expectation(n, collect(support, c, nu));
  }
  BigRational total = 0;
  for (const auto& t : terms) total += t;
  return total;
}

BigRational w_moment_exact_serial(int n, int nu, int m, const FourierTestFn& f) {
  check_args(n, m);
  if (m == 0) return 1;
  if (f.is_zero()) return 0;
  const std::vector<int> support = f.support();
  check_range(n, nu, support, compositions(support.size(), m));

  BigRational total = 0;
  std::vector<std::size_t> idx(static_cast<std::size_t>(m), 0);
  while (true) {
    std::vector<int> counts(support.size(), 0);
    BigRational w = 1;
    for (std::size_t i : idx) {
      ++counts[i];
      w *= f.coefficient(support[i]);
    }
    total += w * term_expectation(n, collect(support, counts, nu));
    std::size_t k = idx.size();
    while (k > 0 && ++idx[k - 1] == support.size()) idx[--k] = 0;
    if (k == 0) break;
  }
  return total;
}

double w_moment_gaussian_prediction(int /*n*/, int nu, int m, const FourierTestFn& f) {
  if (m < 0) throw InvalidArgument("m must be >= 0");
  if (m % 2) return 0.0;
  const double variance = l2_norm_squared(f).convert_to<double>() * nu;
  return odd_double_factorial(m / 2).convert_to<double>() * std::pow(variance, m / 2);
}

BigInt narrow_band_main_term(int n, int nu, const Partition& a) {
  if (n < 1) throw InvalidArgument("n must be >= 1");
  if (size(a) > moment_usp_max_size(n))
    throw PreconditionViolated("|a| = " + std::to_string(size(a)) + " exceeds 4n+1");
  for (auto [j, mult] : a.parts()) {
    const std::int64_t gap = j - nu;
    if (gap * gap > n)
      throw PreconditionViolated("part " + std::to_string(j) + " is farther than sqrt(n) from nu = " +
                                 std::to_string(nu));
  }
  BigInt out = 1;
  for (auto [j, mult] : a.parts()) {
    if (mult % 2) return 0;
    out *= odd_double_factorial(mult / 2);
  }
  return out * boost::multiprecision::pow(BigInt(nu), static_cast<unsigned>(length(a) / 2));
}

MCEstimate w_moment_mc(int n, int nu, int m, const FourierTestFn& f, const MCConfig& cfg) {
  MCConfig c = cfg;
  c.n = n;
  return mc_estimate(c, [&](const EigenAngles& e) { return std::pow(w_statistic(f, nu, e), m); });
}

}  // namespace symp
