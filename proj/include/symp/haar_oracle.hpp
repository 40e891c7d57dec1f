#ifndef SYMP_HAAR_ORACLE_HPP_
#define SYMP_HAAR_ORACLE_HPP_

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "symp/common.hpp"
#include "symp/partition.hpp"

namespace symp {

/// Fundamental eigenangles of U in USp(2n), in turns: the 2n eigenvalues are
/// exp(+-2 pi i theta_k) with 0 <= theta_1 <= ... <= theta_n <= 1/2.
struct EigenAngles {
  std::vector<double> theta;

  int n() const noexcept { return static_cast<int>(theta.size()); }
};

/// tr(U^j) = sum_k 2 cos(2 pi j theta_k).
double trace_power(const EigenAngles& e, int j);

/// Unnormalized Weyl density
///   prod_{j<k} (2cos 2pi theta_j - 2cos 2pi theta_k)^2 * prod_k (2 sin 2pi theta_k)^2.
double weyl_weight_usp(const EigenAngles& e);

struct QuadratureConfig {
  int n = 1;
  int nodes_per_dim = 0;  // 0 selects exact_node_count()
  int max_n = 4;
  int max_nodes = 256;
};

/// Smallest node count for which the Chebyshev-U rule integrates the moment
/// exactly: 2N - 1 >= |a| + 2(n - 1).
int exact_node_count(int n, const Partition& a);

/// Self-normalized Weyl-density quadrature of prod_j tr(U^j)^{a_j}. With
/// x = cos(2 pi theta) the density becomes the Chebyshev-U weight times a
/// polynomial, so the uniform grid theta_i = i / (2(N+1)) is a Gauss rule.
/// Throws CostGuard when n or the node count exceed the configured limits.
double moment_quadrature(int n, const Partition& a, const QuadratureConfig& cfg);

/// Reference version: plain loop over the full tensor grid, single thread.
double moment_quadrature_serial(int n, const Partition& a, const QuadratureConfig& cfg);

struct MCConfig {
  int n = 1;
  std::int64_t sample_count = 100000;
  std::uint64_t rng_seed = 1;
};

struct MCEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Draws eigenangles of a Haar-random USp(2n) element. The angles come from a
/// tridiagonal Jacobi-ensemble model (beta = 2, endpoint exponents 1/2) whose
/// eigenvalues x_k = 2 cos(2 pi theta_k) have the Weyl density on [-2, 2].
class HaarUspSampler {
 public:
  explicit HaarUspSampler(int n);

  EigenAngles operator()(std::mt19937_64& rng);

  int n() const noexcept { return n_; }

 private:
  int n_;
  // Beta shape parameters (s_k, t_k) of the k-th recursion coefficient.
  std::vector<std::pair<double, double>> shapes_;
};

/// `count` i.i.d. draws; deterministic in cfg.rng_seed.
std::vector<EigenAngles> sample_haar_usp(const MCConfig& cfg);

using SampleStatistic = std::function<double(const EigenAngles&)>;

/// Sample mean and standard error of `stat` over cfg.sample_count draws.
/// Samples are split into fixed blocks with seeds derived from the root seed,
/// and block sums are combined in block order, so the result is bit-identical
/// for any thread count.
MCEstimate mc_estimate(const MCConfig& cfg, const SampleStatistic& stat);
MCEstimate mc_estimate_serial(const MCConfig& cfg, const SampleStatistic& stat);

inline constexpr std::int64_t kMCBlockSize = 4096;

/// Monte Carlo estimate of prod_j tr(U^j)^{a_j}.
MCEstimate moment_mc(int n, const Partition& a, const MCConfig& cfg);

/// prod_j tr(U^j)^{a_j} at a single sample.
double trace_product(const EigenAngles& e, const Partition& a);

}  // namespace symp

#endif  // SYMP_HAAR_ORACLE_HPP_
