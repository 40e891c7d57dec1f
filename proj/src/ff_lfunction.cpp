#include <Eigen/Dense>

#include "symp/ffield.hpp"

namespace symp::ff {

namespace {

int check_h(const PrimeField& f, const PolyFq& h) {
  if (!h.is_monic()) throw InvalidArgument("h must be monic");
  if (h.degree() < 1 || h.degree() % 2 == 0)
    throw InvalidArgument("h must have odd degree 2n+1, got degree " + std::to_string(h.degree()));
  if (!is_squarefree(f, h)) throw NotSquarefree(format_poly_spec(f.q(), h) + " is not squarefree");
  return (h.degree() - 1) / 2;
}

}  // namespace

bool LPolynomial::satisfies_functional_equation() const {
  if (static_cast<int>(c.size()) != 2 * n + 1 || c[0] != 1) return false;
  for (int i = 0; i <= n; ++i) {
    __int128 qp = 1;
    for (int k = 0; k < n - i; ++k) qp *= q;
    if (static_cast<__int128>(c[static_cast<std::size_t>(2 * n - i)]) != qp * c[static_cast<std::size_t>(i)])
      return false;
  }
  return true;
}

LPolynomial l_polynomial(const PrimeField& f, const PolyFq& h) {
  const int n = check_h(f, h);
  return l_polynomial(PrimeTable(f, 2 * n), h);
}

LPolynomial l_polynomial(const PrimeTable& table, const PolyFq& h) {
  const PrimeField& f = table.field();
  const int n = check_h(f, h);
  if (table.max_degree() < 2 * n) throw InvalidArgument("prime table too small for this h");
  const int top = 2 * n;
  LPolynomial out{n, f.q(), std::vector<std::int64_t>(static_cast<std::size_t>(top) + 1, 0)};
  out.c[0] = 1;
  // multiply by (1 - chi(P) z^d)^{-1} = sum_k chi(P)^k z^{dk}, truncated at z^{2n}
  for (int d = 1; d <= top; ++d) {
    for (const auto& p : table.of_degree(d)) {
      const int chi = jacobi_prime(f, h, p);
      if (chi == 0) continue;
      for (int i = d; i <= top; ++i) out.c[static_cast<std::size_t>(i)] += chi * out.c[static_cast<std::size_t>(i - d)];
    }
  }
  return out;
}

LPolynomial l_polynomial_direct(const PrimeField& f, const PolyFq& h) {
  const int n = check_h(f, h);
  LPolynomial out{n, f.q(), std::vector<std::int64_t>(static_cast<std::size_t>(2 * n) + 1, 0)};
  for (int i = 0; i <= 2 * n; ++i) {
    const std::uint64_t count = monic_count(f, i);
    std::int64_t sum = 0;
    for (std::uint64_t k = 0; k < count; ++k) sum += jacobi(f, h, monic_from_index(f, i, k));
    out.c[static_cast<std::size_t>(i)] = sum;
  }
  return out;
}

std::vector<std::int64_t> frobenius_power_sums(const LPolynomial& l, int j_max) {
  // log L(z) = -sum_j s_j z^j / j  gives  j c_j + sum_{k=0}^{j-1} c_k s_{j-k} = 0
  std::vector<std::int64_t> s(static_cast<std::size_t>(j_max) + 1, 0);
  s[0] = 2 * l.n;
  auto c = [&](int k) -> std::int64_t {
    return k < static_cast<int>(l.c.size()) ? l.c[static_cast<std::size_t>(k)] : 0;
  };
  for (int j = 1; j <= j_max; ++j) {
    std::int64_t acc = -static_cast<std::int64_t>(j) * c(j);
    for (int k = 1; k < j; ++k) acc -= c(k) * s[static_cast<std::size_t>(j - k)];
    s[static_cast<std::size_t>(j)] = acc;
  }
  return s;
}

std::int64_t explicit_formula_sum(const PrimeTable& table, const PolyFq& h, int j) {
  const PrimeField& f = table.field();
  std::int64_t sum = 0;
  for (int d = 1; d <= j; ++d) {
    if (j % d) continue;
    const int e = j / d;
    for (const auto& p : table.of_degree(d)) {
      const int chi = jacobi_prime(f, h, p);
      // chi(P^e) = chi(P)^e
      const int chi_e = (e % 2 == 0) ? chi * chi : chi;
      sum += static_cast<std::int64_t>(d) * chi_e;
    }
  }
  return -sum;
}

std::vector<std::complex<double>> inverse_roots(const LPolynomial& l) {
  const int deg = 2 * l.n;
  if (deg == 0) return {};
  // z^{2n} L(1/z) = z^{2n} + c_1 z^{2n-1} + ... + c_{2n}, roots alpha_i
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i)
    companion(i, deg - 1) = -static_cast<double>(l.c[static_cast<std::size_t>(deg - i)]);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  std::vector<std::complex<double>> out;
  for (int i = 0; i < deg; ++i) out.push_back(solver.eigenvalues()[i]);
  return out;
}

std::int64_t prime_character_sum(const PrimeTable& table, const PolyFq& h, int j) {
  std::int64_t sum = 0;
  for (const auto& p : table.of_degree(j)) sum += jacobi_prime(table.field(), h, p);
  return sum;
}

}  // namespace symp::ff
