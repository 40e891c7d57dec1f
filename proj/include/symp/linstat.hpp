#ifndef SYMP_LINSTAT_HPP_
#define SYMP_LINSTAT_HPP_

#include <complex>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "symp/common.hpp"
#include "symp/haar_oracle.hpp"
#include "symp/partition.hpp"

namespace symp {

/// Even real test function f(t) = sum_j fhat(j) e(jt) with finite support,
/// stored as exact rationals for j >= 0 (fhat(-j) = fhat(j)).
class FourierTestFn {
 public:
  FourierTestFn() = default;

  /// Sets fhat(j) and fhat(-j).
  void set(int j, const BigRational& value);
  BigRational coefficient(int j) const;
  double coefficient_double(int j) const;

  /// Nonzero coefficients, j >= 0.
  const std::map<int, BigRational>& half_table() const noexcept { return coef_; }
  /// Every j (positive and negative) with fhat(j) != 0, ascending.
  std::vector<int> support() const;
  /// max |j| over the support, -1 for the zero function.
  int bandwidth() const noexcept;
  bool is_zero() const noexcept { return coef_.empty(); }

  /// f(t) for t in turns.
  double operator()(double t) const;

 private:
  std::map<int, BigRational> coef_;
};

/// Parses "0:1.0 1:0.5" style tables. Values may be decimals, exponent
/// notation or p/q fractions. Setting j and -j to different values is a
/// ParseError.
FourierTestFn parse_fourier(std::string_view text);
std::string format_fourier(const FourierTestFn& f);
/// Exact decimal or fraction text to a rational.
BigRational parse_rational(std::string_view text);

/// sum_j fhat(j)^2, exact.
BigRational l2_norm_squared(const FourierTestFn& f);
/// ||f||_{L^2} by Parseval.
double l2_norm(const FourierTestFn& f);

/// sum over all 2n eigenangles +-theta_k of f(theta) e(nu theta).
std::complex<double> w_statistic_complex(const FourierTestFn& f, int nu, const EigenAngles& e);
/// Real part of w_statistic_complex; the imaginary part vanishes by evenness.
double w_statistic(const FourierTestFn& f, int nu, const EigenAngles& e);

/// E[W^m] over USp(2n), expanded as
///   sum_{j_1..j_m} prod fhat(j_i - nu) E[prod tr(U^{j_i})]
/// and evaluated with the closed-form moments. Throws OutOfRange naming the
/// first multi-index whose trace product has size above 4n+1.
BigRational w_moment_exact(int n, int nu, int m, const FourierTestFn& f);
/// Serial evaluation of the same expansion over the full j_1..j_m grid.
BigRational w_moment_exact_serial(int n, int nu, int m, const FourierTestFn& f);

/// eta_m (m-1)!! ||f||^m nu^{m/2}.
double w_moment_gaussian_prediction(int n, int nu, int m, const FourierTestFn& f);

/// prod_j eta_{a_j} (a_j - 1)!! * nu^{l(a)/2}. Requires |a| <= 4n+1 and
/// a_j = 0 whenever |j - nu| > sqrt(n); throws PreconditionViolated otherwise.
BigInt narrow_band_main_term(int n, int nu, const Partition& a);

/// Monte Carlo mean of W^m.
MCEstimate w_moment_mc(int n, int nu, int m, const FourierTestFn& f, const MCConfig& cfg);

}  // namespace symp

#endif  // SYMP_LINSTAT_HPP_
