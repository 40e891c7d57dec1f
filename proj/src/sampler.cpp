#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "symp/haar_oracle.hpp"
#include "symp/parallel.hpp"

namespace symp {

// Killip-Nenciu model for the Jacobi ensemble on [-2, 2] with density
//   |Delta(x)|^beta prod (2 - x)^p (2 + x)^r,
// here beta = 2 and p = r = 1/2. The recursion coefficients alpha_k, k < 2n-1,
// are independent with law B(s, t) on [-1, 1], density ~ (1-x)^(s-1) (1+x)^(t-1):
//   k even: s = t = (2n-k-2) beta/4 + 3/2
//   k odd:  s = (2n-k-3) beta/4 + 3,  t = (2n-k-1) beta/4
HaarUspSampler::HaarUspSampler(int n) : n_(n) {
  if (n < 1) throw InvalidArgument("sampler needs n >= 1");
  const double quarter_beta = 0.5;
  for (int k = 0; k <= 2 * n - 2; ++k) {
    if (k % 2 == 0) {
      const double s = (2 * n - k - 2) * quarter_beta + 1.5;
      shapes_.emplace_back(s, s);
    } else {
      shapes_.emplace_back((2 * n - k - 3) * quarter_beta + 3.0, (2 * n - k - 1) * quarter_beta);
    }
  }
}

EigenAngles HaarUspSampler::operator()(std::mt19937_64& rng) {
  const int count = 2 * n_ - 1;
  // alpha[k + 1] holds alpha_k so that alpha_{-1} sits at index 0.
  std::vector<double> alpha(count + 2);
  alpha[0] = -1.0;
  alpha[count + 1] = -1.0;
  for (int k = 0; k < count; ++k) {
    auto [s, t] = shapes_[k];
    const double gt = std::gamma_distribution<double>(t, 1.0)(rng);
    const double gs = std::gamma_distribution<double>(s, 1.0)(rng);
    alpha[k + 1] = 2.0 * gt / (gt + gs) - 1.0;
  }
  auto al = [&](int k) { return k < -1 ? 0.0 : alpha[k + 1]; };

  Eigen::VectorXd diag(n_);
  Eigen::VectorXd sub(std::max(n_ - 1, 0));
  for (int k = 0; k < n_; ++k) {
    diag[k] = (1.0 - al(2 * k - 1)) * al(2 * k) - (1.0 + al(2 * k - 1)) * al(2 * k - 2);
    if (k + 1 < n_) {
      const double v = (1.0 - al(2 * k - 1)) * (1.0 - al(2 * k) * al(2 * k)) * (1.0 + al(2 * k + 1));
      sub[k] = std::sqrt(std::max(v, 0.0));
    }
  }

  EigenAngles e;
  e.theta.resize(n_);
  auto to_angle = [](double x) {
    return std::acos(std::clamp(0.5 * x, -1.0, 1.0)) / (2.0 * std::numbers::pi);
  };
  if (n_ == 1) {
    e.theta[0] = to_angle(diag[0]);
    return e;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  // ascending x is descending theta
  for (int k = 0; k < n_; ++k) e.theta[k] = to_angle(ev[n_ - 1 - k]);
  return e;
}

std::vector<EigenAngles> sample_haar_usp(const MCConfig& cfg) {
  if (cfg.sample_count < 1) throw InvalidArgument("sample_count must be >= 1");
  std::vector<EigenAngles> out;
  out.reserve(static_cast<std::size_t>(cfg.sample_count));
  const std::int64_t blocks = (cfg.sample_count + kMCBlockSize - 1) / kMCBlockSize;
  for (std::int64_t b = 0; b < blocks; ++b) {
    std::mt19937_64 rng(substream_seed(cfg.rng_seed, static_cast<std::uint64_t>(b)));
    HaarUspSampler sampler(cfg.n);
    const std::int64_t end = std::min(cfg.sample_count, (b + 1) * kMCBlockSize);
    for (std::int64_t i = b * kMCBlockSize; i < end; ++i) out.push_back(sampler(rng));
  }
  return out;
}

namespace {

// Welford moments for one block.
struct BlockMoments {
  std::int64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void push(double x) {
    ++count;
    const double d = x - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (x - mean);
  }

  void merge(const BlockMoments& o) {
    if (o.count == 0) return;
    const std::int64_t total = count + o.count;
    const double d = o.mean - mean;
    mean += d * static_cast<double>(o.count) / static_cast<double>(total);
    m2 += o.m2 + d * d * static_cast<double>(count) * static_cast<double>(o.count) /
                     static_cast<double>(total);
    count = total;
  }
};

BlockMoments run_block(const MCConfig& cfg, const SampleStatistic& stat, std::int64_t block) {
  std::mt19937_64 rng(substream_seed(cfg.rng_seed, static_cast<std::uint64_t>(block)));
  HaarUspSampler sampler(cfg.n);
  const std::int64_t end = std::min(cfg.sample_count, (block + 1) * kMCBlockSize);
  BlockMoments bm;
  for (std::int64_t i = block * kMCBlockSize; i < end; ++i) bm.push(stat(sampler(rng)));
  return bm;
}

MCEstimate finish(const BlockMoments& total) {
  MCEstimate out;
  out.estimate = total.mean;
  if (total.count > 1) {
    const double var = total.m2 / static_cast<double>(total.count - 1);
    out.std_error = std::sqrt(var / static_cast<double>(total.count));
  }
  return out;
}

void check(const MCConfig& cfg) {
  if (cfg.n < 1) throw InvalidArgument("MC needs n >= 1");
  if (cfg.sample_count < 1) throw InvalidArgument("sample_count must be >= 1");
}

}  // namespace

MCEstimate mc_estimate(const MCConfig& cfg, const SampleStatistic& stat) {
  check(cfg);
  const std::int64_t blocks = (cfg.sample_count + kMCBlockSize - 1) / kMCBlockSize;
  std::vector<BlockMoments> parts(static_cast<std::size_t>(blocks));
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t b = 0; b < blocks; ++b) parts[static_cast<std::size_t>(b)] = run_block(cfg, stat, b);
  BlockMoments total;
  for (const auto& p : parts) total.merge(p);
  return finish(total);
}

MCEstimate mc_estimate_serial(const MCConfig& cfg, const SampleStatistic& stat) {
  check(cfg);
  const std::int64_t blocks = (cfg.sample_count + kMCBlockSize - 1) / kMCBlockSize;
  BlockMoments total;
  for (std::int64_t b = 0; b < blocks; ++b) total.merge(run_block(cfg, stat, b));
  return finish(total);
}

MCEstimate moment_mc(int n, const Partition& a, const MCConfig& cfg) {
  if (a.empty()) return {1.0, 0.0};
  MCConfig c = cfg;
  c.n = n;
  return mc_estimate(c, [&a](const EigenAngles& e) { return trace_product(e, a); });
}

}  // namespace symp
