#include <algorithm>
#include <charconv>
#include <sstream>

#include "symp/ffield.hpp"

namespace symp::ff {

namespace {

bool is_prime(std::uint32_t q) {
  if (q < 2) return false;
  for (std::uint32_t d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

void trim(std::vector<Coeff>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

}  // namespace

PrimeField::PrimeField(std::uint32_t q) : q_(q) {
  if (q < 3 || q % 2 == 0 || !is_prime(q) || q >= (1u << 16))
    throw InvalidArgument("field size must be an odd prime below 65536, got " + std::to_string(q));
  chi_.assign(q, -1);
  chi_[0] = 0;
  for (std::uint32_t x = 1; x < q; ++x) chi_[static_cast<std::uint64_t>(x) * x % q] = 1;
}

Coeff PrimeField::pow(Coeff a, std::uint64_t e) const noexcept {
  Coeff r = 1;
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Coeff PrimeField::inv(Coeff a) const {
  if (a % q_ == 0) throw InvalidArgument("inverse of zero in F_q");
  return pow(a, q_ - 2);
}

Coeff PrimeField::from_int(std::int64_t v) const noexcept {
  std::int64_t r = v % static_cast<std::int64_t>(q_);
  if (r < 0) r += q_;
  return static_cast<Coeff>(r);
}

PolyFq::PolyFq(std::vector<Coeff> coeffs) : c_(std::move(coeffs)) { trim(c_); }

PolyFq PolyFq::constant(Coeff c) { return PolyFq(std::vector<Coeff>{c}); }
PolyFq PolyFq::x() { return PolyFq(std::vector<Coeff>{0, 1}); }

PolyFq add(const PrimeField& f, const PolyFq& a, const PolyFq& b) {
  std::vector<Coeff> c(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = f.add(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
  return PolyFq(std::move(c));
}

PolyFq sub(const PrimeField& f, const PolyFq& a, const PolyFq& b) {
  std::vector<Coeff> c(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = f.sub(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
  return PolyFq(std::move(c));
}

PolyFq mul(const PrimeField& f, const PolyFq& a, const PolyFq& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<std::uint64_t> acc(x.size() + y.size() - 1, 0);
  const std::uint64_t q = f.q();
  // q < 2^16: every product is below 2^32, so the uint64 column sums cannot overflow
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) acc[i + j] += static_cast<std::uint64_t>(x[i]) * y[j];
  }
  std::vector<Coeff> c(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) c[i] = static_cast<Coeff>(acc[i] % q);
  return PolyFq(std::move(c));
}

PolyFq scale(const PrimeField& f, const PolyFq& a, Coeff s) {
  std::vector<Coeff> c(a.coeffs());
  for (auto& v : c) v = f.mul(v, s);
  return PolyFq(std::move(c));
}

std::pair<PolyFq, PolyFq> divmod(const PrimeField& f, const PolyFq& a, const PolyFq& b) {
  if (b.is_zero()) throw InvalidArgument("polynomial division by zero");
  if (a.degree() < b.degree()) return {PolyFq{}, a};
  std::vector<Coeff> r(a.coeffs());
  const auto& d = b.coeffs();
  const int db = b.degree();
  const Coeff lead_inv = f.inv(b.leading());
  std::vector<Coeff> quot(static_cast<std::size_t>(a.degree() - db + 1), 0);
  for (int i = a.degree(); i >= db; --i) {
    const Coeff top = r[static_cast<std::size_t>(i)];
    if (top == 0) continue;
    const Coeff factor = f.mul(top, lead_inv);
    quot[static_cast<std::size_t>(i - db)] = factor;
    for (int k = 0; k <= db; ++k) {
      auto& slot = r[static_cast<std::size_t>(i - db + k)];
      slot = f.sub(slot, f.mul(factor, d[static_cast<std::size_t>(k)]));
    }
  }
  r.resize(static_cast<std::size_t>(db));
  return {PolyFq(std::move(quot)), PolyFq(std::move(r))};
}

PolyFq mod(const PrimeField& f, const PolyFq& a, const PolyFq& b) { return divmod(f, a, b).second; }

PolyFq derivative(const PrimeField& f, const PolyFq& a) {
  if (a.degree() < 1) return {};
  std::vector<Coeff> c(static_cast<std::size_t>(a.degree()));
  for (int i = 1; i <= a.degree(); ++i) c[static_cast<std::size_t>(i - 1)] = f.mul(f.from_int(i), a.coeff(i));
  return PolyFq(std::move(c));
}

PolyFq make_monic(const PrimeField& f, const PolyFq& a) {
  if (a.is_zero() || a.is_monic()) return a;
  return scale(f, a, f.inv(a.leading()));
}

PolyFq gcd(const PrimeField& f, PolyFq a, PolyFq b) {
  while (!b.is_zero()) {
    PolyFq r = mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(f, a);
}

PolyFq powmod(const PrimeField& f, PolyFq base, unsigned __int128 e, const PolyFq& m) {
  PolyFq result = mod(f, PolyFq::constant(1), m);
  base = mod(f, base, m);
  while (e > 0) {
    if (e & 1) result = mod(f, mul(f, result, base), m);
    e >>= 1;
    if (e > 0) base = mod(f, mul(f, base, base), m);
  }
  return result;
}

Coeff eval(const PrimeField& f, const PolyFq& p, Coeff x) {
  Coeff r = 0;
  for (int i = p.degree(); i >= 0; --i) r = f.add(f.mul(r, x), p.coeff(i));
  return r;
}

std::uint64_t monic_count(const PrimeField& f, int degree, std::uint64_t budget) {
  if (degree < 0) throw InvalidArgument("negative degree");
  std::uint64_t n = 1;
  for (int i = 0; i < degree; ++i) {
    if (n > budget / f.q())
      throw BudgetExceeded("q^" + std::to_string(degree) + " with q = " + std::to_string(f.q()) +
                           " exceeds the enumeration budget " + std::to_string(budget));
    n *= f.q();
  }
  if (n > budget)
    throw BudgetExceeded("enumeration of " + std::to_string(n) + " polynomials exceeds budget");
  return n;
}

PolyFq monic_from_index(const PrimeField& f, int degree, std::uint64_t index) {
  std::vector<Coeff> c(static_cast<std::size_t>(degree) + 1);
  for (int i = 0; i < degree; ++i) {
    c[static_cast<std::size_t>(i)] = static_cast<Coeff>(index % f.q());
    index /= f.q();
  }
  c[static_cast<std::size_t>(degree)] = 1;
  return PolyFq(std::move(c));
}

bool is_squarefree(const PrimeField& f, const PolyFq& h) {
  if (h.degree() < 1) return !h.is_zero();
  return gcd(f, h, derivative(f, h)).degree() == 0;
}

namespace {

std::vector<int> prime_divisors(int d) {
  std::vector<int> out;
  for (int p = 2; p * p <= d; ++p) {
    if (d % p) continue;
    out.push_back(p);
    while (d % p == 0) d /= p;
  }
  if (d > 1) out.push_back(d);
  return out;
}

// x^{q^k} mod m for k = 0..max_k.
std::vector<PolyFq> frobenius_orbit(const PrimeField& f, const PolyFq& m, int max_k) {
  std::vector<PolyFq> out;
  out.reserve(static_cast<std::size_t>(max_k) + 1);
  out.push_back(mod(f, PolyFq::x(), m));
  for (int k = 1; k <= max_k; ++k) out.push_back(powmod(f, out.back(), f.q(), m));
  return out;
}

}  // namespace

bool is_irreducible(const PrimeField& f, const PolyFq& p) {
  const int d = p.degree();
  if (d < 1) return false;
  if (d == 1) return true;
  const PolyFq m = make_monic(f, p);
  const auto orbit = frobenius_orbit(f, m, d);
  const PolyFq x_mod = mod(f, PolyFq::x(), m);
  if (orbit[static_cast<std::size_t>(d)] != x_mod) return false;
  for (int r : prime_divisors(d)) {
    const PolyFq diff = sub(f, orbit[static_cast<std::size_t>(d / r)], x_mod);
    if (gcd(f, m, diff).degree() != 0) return false;
  }
  return true;
}

std::vector<PolyFq> primes_of_degree(const PrimeField& f, int j, std::uint64_t budget) {
  if (j < 1) throw InvalidArgument("prime degree must be >= 1");
  const std::uint64_t count = monic_count(f, j, budget);
  std::vector<PolyFq> out;
  for (std::uint64_t i = 0; i < count; ++i) {
    PolyFq p = monic_from_index(f, j, i);
    if (j == 1 || is_irreducible(f, p)) out.push_back(std::move(p));
  }
  return out;
}

PrimeTable::PrimeTable(const PrimeField& field, int max_degree, std::uint64_t budget)
    : field_(field), max_degree_(max_degree) {
  if (max_degree < 0) throw InvalidArgument("negative max_degree");
  by_degree_.resize(static_cast<std::size_t>(max_degree) + 1);
  for (int d = 1; d <= max_degree; ++d) by_degree_[static_cast<std::size_t>(d)] = primes_of_degree(field, d, budget);
}

const std::vector<PolyFq>& PrimeTable::of_degree(int d) const {
  if (d < 1 || d > max_degree_)
    throw InvalidArgument("prime table holds degrees 1.." + std::to_string(max_degree_) +
                          ", asked for " + std::to_string(d));
  return by_degree_[static_cast<std::size_t>(d)];
}

int jacobi(const PrimeField& f, const PolyFq& a_in, const PolyFq& b_in) {
  if (!b_in.is_monic()) throw InvalidArgument("jacobi symbol needs a monic modulus");
  const bool half_odd = ((f.q() - 1) / 2) % 2 == 1;
  PolyFq a = a_in;
  PolyFq b = b_in;
  int result = 1;
  while (true) {
    if (b.degree() == 0) return result;
    a = mod(f, a, b);
    if (a.is_zero()) return 0;
    const int db = b.degree();
    const Coeff lead = a.leading();
    if (db % 2 == 1) result *= f.legendre(lead);
    if (a.degree() == 0) return result;
    a = scale(f, a, f.inv(lead));
    if (half_odd && (a.degree() % 2 == 1) && (db % 2 == 1)) result = -result;
    std::swap(a, b);
  }
}

int jacobi_prime(const PrimeField& f, const PolyFq& h, const PolyFq& p) {
  if (p.degree() == 1) {
    // P = x - c, so h mod P = h(c)
    return f.legendre(eval(f, h, f.neg(p.coeff(0))));
  }
  const PolyFq r = mod(f, h, p);
  if (r.is_zero()) return 0;
  unsigned __int128 norm = 1;
  for (int i = 0; i < p.degree(); ++i) norm *= f.q();
  const PolyFq t = powmod(f, r, (norm - 1) / 2, p);
  if (t.degree() != 0) throw InvalidArgument("jacobi_prime called with a non-prime modulus");
  return t.coeff(0) == 1 ? 1 : -1;
}

int von_mangoldt(const PrimeField& f, const PolyFq& q_in) {
  if (!q_in.is_monic()) throw InvalidArgument("von_mangoldt needs a monic polynomial");
  const int deg = q_in.degree();
  if (deg < 1) return 0;
  if (deg == 1) return 1;
  const PolyFq x_mod = mod(f, PolyFq::x(), q_in);
  PolyFq frob = x_mod;
  for (int d = 1; d <= deg; ++d) {
    frob = powmod(f, frob, f.q(), q_in);
    const PolyFq g = gcd(f, q_in, sub(f, frob, x_mod));
    if (g.degree() <= 0) continue;
    // g is the product of the distinct primes of degree d dividing Q
    if (g.degree() != d) return 0;
    PolyFq rest = q_in;
    while (rest.degree() > 0) {
      auto [quot, rem] = divmod(f, rest, g);
      if (!rem.is_zero()) return 0;
      rest = std::move(quot);
    }
    return d;
  }
  return 0;
}

std::vector<PolyFq> enumerate_H(const PrimeField& f, int n, std::uint64_t budget) {
  if (n < 0) throw InvalidArgument("n must be nonnegative");
  const std::uint64_t count = monic_count(f, 2 * n + 1, budget);
  std::vector<PolyFq> out;
  out.reserve(static_cast<std::size_t>(count - count / f.q()));
  for (std::uint64_t i = 0; i < count; ++i) {
    PolyFq h = monic_from_index(f, 2 * n + 1, i);
    if (is_squarefree(f, h)) out.push_back(std::move(h));
  }
  return out;
}

PolySpec parse_poly_spec(std::string_view text) {
  std::string s(text);
  std::replace(s.begin(), s.end(), ';', ' ');
  std::istringstream in(s);
  std::string tok;
  std::int64_t q = -1;
  std::vector<std::int64_t> raw;
  bool have_h = false;
  while (in >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value, got '" + tok + "'");
    const std::string key = tok.substr(0, eq);
    const std::string val = tok.substr(eq + 1);
    if (key == "q") {
      auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), q);
      if (ec != std::errc() || ptr != val.data() + val.size()) throw ParseError("bad q '" + val + "'");
    } else if (key == "h") {
      have_h = true;
      std::istringstream parts(val);
      std::string item;
      while (std::getline(parts, item, ',')) {
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc() || ptr != item.data() + item.size() || item.empty())
          throw ParseError("bad coefficient '" + item + "'");
        raw.push_back(v);
      }
    } else {
      throw ParseError("unknown key '" + key + "'");
    }
  }
  if (q < 0 || !have_h) throw ParseError("polynomial spec needs both q= and h=");
  PrimeField field(static_cast<std::uint32_t>(q));
  std::vector<Coeff> c;
  for (auto v : raw) c.push_back(field.from_int(v));
  return {static_cast<std::uint32_t>(q), PolyFq(std::move(c))};
}

std::string format_poly_spec(std::uint32_t q, const PolyFq& h) {
  std::string out = "q=" + std::to_string(q) + "; h=";
  for (std::size_t i = 0; i < h.coeffs().size(); ++i) {
    if (i) out += ',';
    out += std::to_string(h.coeffs()[i]);
  }
  return out;
}

}  // namespace symp::ff
