#ifndef SYMP_FFIELD_HPP_
#define SYMP_FFIELD_HPP_

#include <complex>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "symp/common.hpp"
#include "symp/partition.hpp"

namespace symp::ff {

using Coeff = std::uint32_t;

/// Default cap on the number of polynomials any single enumeration visits.
inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

/// F_q for an odd prime q < 2^16.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t q);

  std::uint32_t q() const noexcept { return q_; }

  Coeff add(Coeff a, Coeff b) const noexcept {
    const Coeff s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  Coeff sub(Coeff a, Coeff b) const noexcept { return a >= b ? a - b : a + q_ - b; }
  Coeff neg(Coeff a) const noexcept { return a == 0 ? 0 : q_ - a; }
  Coeff mul(Coeff a, Coeff b) const noexcept {
    return static_cast<Coeff>(static_cast<std::uint64_t>(a) * b % q_);
  }
  Coeff pow(Coeff a, std::uint64_t e) const noexcept;
  Coeff inv(Coeff a) const;
  Coeff from_int(std::int64_t v) const noexcept;

  /// Legendre symbol of c in F_q: 0, +1 or -1.
  int legendre(Coeff c) const noexcept { return chi_[c]; }

 private:
  std::uint32_t q_;
  std::vector<std::int8_t> chi_;
};

/// Polynomial over a prime field, coefficients low-to-high, no trailing
/// zeros. The zero polynomial has degree -1.
class PolyFq {
 public:
  PolyFq() = default;
  explicit PolyFq(std::vector<Coeff> coeffs);

  static PolyFq constant(Coeff c);
  static PolyFq x();

  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_monic() const noexcept { return !c_.empty() && c_.back() == 1; }
  Coeff coeff(int i) const noexcept {
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(i)] : 0;
  }
  Coeff leading() const noexcept { return c_.empty() ? 0 : c_.back(); }
  const std::vector<Coeff>& coeffs() const noexcept { return c_; }

  friend bool operator==(const PolyFq&, const PolyFq&) = default;
  friend auto operator<=>(const PolyFq& a, const PolyFq& b) {
    if (a.degree() != b.degree()) return a.degree() <=> b.degree();
    return a.c_ <=> b.c_;
  }

 private:
  std::vector<Coeff> c_;
};

PolyFq add(const PrimeField& f, const PolyFq& a, const PolyFq& b);
PolyFq sub(const PrimeField& f, const PolyFq& a, const PolyFq& b);
PolyFq mul(const PrimeField& f, const PolyFq& a, const PolyFq& b);
PolyFq scale(const PrimeField& f, const PolyFq& a, Coeff c);
/// Quotient and remainder; throws InvalidArgument on division by zero.
std::pair<PolyFq, PolyFq> divmod(const PrimeField& f, const PolyFq& a, const PolyFq& b);
PolyFq mod(const PrimeField& f, const PolyFq& a, const PolyFq& b);
PolyFq derivative(const PrimeField& f, const PolyFq& a);
/// Monic gcd (zero if both inputs are zero).
PolyFq gcd(const PrimeField& f, PolyFq a, PolyFq b);
PolyFq make_monic(const PrimeField& f, const PolyFq& a);
PolyFq powmod(const PrimeField& f, PolyFq base, unsigned __int128 exponent, const PolyFq& modulus);
Coeff eval(const PrimeField& f, const PolyFq& p, Coeff x);

/// q^degree, throwing BudgetExceeded when it exceeds `budget`.
std::uint64_t monic_count(const PrimeField& f, int degree, std::uint64_t budget = kDefaultBudget);
/// Monic polynomial whose lower coefficients are the base-q digits of index.
PolyFq monic_from_index(const PrimeField& f, int degree, std::uint64_t index);

bool is_squarefree(const PrimeField& f, const PolyFq& h);
bool is_irreducible(const PrimeField& f, const PolyFq& p);

/// Monic irreducibles of degree j, in index order.
std::vector<PolyFq> primes_of_degree(const PrimeField& f, int j,
                                     std::uint64_t budget = kDefaultBudget);

/// Monic primes grouped by degree 1..max_degree.
class PrimeTable {
 public:
  PrimeTable(const PrimeField& field, int max_degree, std::uint64_t budget = kDefaultBudget);

  const PrimeField& field() const noexcept { return field_; }
  int max_degree() const noexcept { return max_degree_; }
  const std::vector<PolyFq>& of_degree(int d) const;

 private:
  PrimeField field_;
  int max_degree_;
  std::vector<std::vector<PolyFq>> by_degree_;
};

/// Jacobi symbol (A/B) for monic B, via quadratic reciprocity in F_q[x].
/// (A/1) = 1.
int jacobi(const PrimeField& f, const PolyFq& a, const PolyFq& b);

/// (h/P) for a monic prime P by Euler's criterion h^{(q^deg P - 1)/2} mod P.
/// Degree-one primes go through the Legendre table of F_q.
int jacobi_prime(const PrimeField& f, const PolyFq& h, const PolyFq& p);

/// deg P if Q = P^e for a monic prime P, else 0.
int von_mangoldt(const PrimeField& f, const PolyFq& q);

/// Monic squarefree polynomials of degree 2n+1, in index order; there are
/// q^{2n+1}(1 - 1/q) of them.
std::vector<PolyFq> enumerate_H(const PrimeField& f, int n, std::uint64_t budget = kDefaultBudget);

/// L(z, C_h) = sum_i c_i z^i, i = 0..2n.
struct LPolynomial {
  int n = 0;
  std::uint32_t q = 0;
  std::vector<std::int64_t> c;

  /// c_{2n-i} = q^{n-i} c_i for all i.
  bool satisfies_functional_equation() const;
};

/// Euler product over the primes of degree <= 2n. Throws NotSquarefree /
/// InvalidArgument for h that is not monic squarefree of odd degree.
LPolynomial l_polynomial(const PrimeField& f, const PolyFq& h);
LPolynomial l_polynomial(const PrimeTable& table, const PolyFq& h);
/// Literal definition c_i = sum_{F monic, deg F = i} (h/F).
LPolynomial l_polynomial_direct(const PrimeField& f, const PolyFq& h);

/// s_j = sum_i alpha_i^j for j = 0..j_max (s_0 = 2n), by Newton's identities
/// on the coefficients.
std::vector<std::int64_t> frobenius_power_sums(const LPolynomial& l, int j_max);

/// -sum_{deg Q = j} Lambda(Q) (h/Q).
std::int64_t explicit_formula_sum(const PrimeTable& table, const PolyFq& h, int j);

/// Inverse roots alpha_i of L, from the companion matrix of z^{2n} L(1/z).
std::vector<std::complex<double>> inverse_roots(const LPolynomial& l);

/// sum_{deg P = j} (h/P).
std::int64_t prime_character_sum(const PrimeTable& table, const PolyFq& h, int j);

enum class QMode { AllPrimePowers, PrimeOrPrimeSquare };

/// Average over h in H_{2n+1} of prod_j tr(Theta_h^j)^{a_j}, where
///   tr(Theta_h^j) = -q^{-j/2} sum_{deg Q = j} Lambda(Q) (h/Q)
/// and the Q-sum runs over all prime powers or only primes and prime squares.
double empirical_moment(const PrimeField& f, int n, const Partition& a, QMode mode,
                        std::uint64_t budget = kDefaultBudget);
/// Reference version: enumerates every monic Q of each degree and uses the
/// reciprocity Jacobi symbol and von_mangoldt directly.
double empirical_moment_serial(const PrimeField& f, int n, const Partition& a, QMode mode,
                               std::uint64_t budget = kDefaultBudget);

/// T(n; a) and S(n; a): sums over all monic h of degree 2n+1 and all tuples of
/// distinct primes P_ji (deg P_ji = j, 1 <= i <= a_j) of
/// prod Lambda(P_ji)(h/P_ji), respectively prod (h/P_ji).
struct DistinctPrimeSums {
  BigInt t;
  BigInt s;
};
DistinctPrimeSums distinct_prime_sums(const PrimeField& f, int n, const Partition& a,
                                      std::uint64_t budget = kDefaultBudget);
DistinctPrimeSums distinct_prime_sums_serial(const PrimeField& f, int n, const Partition& a,
                                             std::uint64_t budget = kDefaultBudget);

/// q^{-|b|/2} sum over tuples (Q_ji) of primes or prime squares of degree j
/// whose product is a perfect square, of prod Lambda(Q_ji).
struct SquareContribution {
  BigInt raw;
  double normalized;
};
SquareContribution square_contribution(const PrimeField& f, const Partition& b,
                                       std::uint64_t budget = kDefaultBudget);

/// "q=3; h=0,-1,0,1": coefficients low-to-high, integers reduced mod q.
struct PolySpec {
  std::uint32_t q;
  PolyFq h;
};
PolySpec parse_poly_spec(std::string_view text);
std::string format_poly_spec(std::uint32_t q, const PolyFq& h);

}  // namespace symp::ff

#endif  // SYMP_FFIELD_HPP_
