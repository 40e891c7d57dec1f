#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "symp/haar_oracle.hpp"

namespace symp {

double trace_power(const EigenAngles& e, int j) {
  double t = 0.0;
  for (double th : e.theta) t += 2.0 * std::cos(2.0 * std::numbers::pi * j * th);
  return t;
}

double weyl_weight_usp(const EigenAngles& e) {
  const double tau = 2.0 * std::numbers::pi;
  double w = 1.0;
  const auto& th = e.theta;
  for (std::size_t j = 0; j < th.size(); ++j) {
    const double s = 2.0 * std::sin(tau * th[j]);
    w *= s * s;
    for (std::size_t k = j + 1; k < th.size(); ++k) {
      const double d = 2.0 * std::cos(tau * th[j]) - 2.0 * std::cos(tau * th[k]);
      w *= d * d;
    }
  }
  return w;
}

double trace_product(const EigenAngles& e, const Partition& a) {
  double r = 1.0;
  for (auto [part, mult] : a.parts()) r *= std::pow(trace_power(e, part), mult);
  return r;
}

int exact_node_count(int n, const Partition& a) {
  const std::int64_t degree = size(a) + 2 * static_cast<std::int64_t>(n - 1);
  return static_cast<int>(std::max<std::int64_t>(1, (degree + 2) / 2));
}

namespace {

int resolve_nodes(int n, const Partition& a, const QuadratureConfig& cfg) {
  if (n < 1) throw InvalidArgument("quadrature needs n >= 1");
  if (n > cfg.max_n)
    throw CostGuard("quadrature limited to n <= " + std::to_string(cfg.max_n) + ", got " +
                    std::to_string(n));
  const int nodes = cfg.nodes_per_dim > 0 ? cfg.nodes_per_dim : exact_node_count(n, a);
  if (nodes > cfg.max_nodes)
    throw CostGuard("quadrature node count " + std::to_string(nodes) + " exceeds limit " +
                    std::to_string(cfg.max_nodes));
  return nodes;
}

double node_angle(int i, int nodes) { return static_cast<double>(i) / (2.0 * (nodes + 1)); }

// Per-node tables shared by the combination walk.
struct NodeTables {
  std::vector<long double> x;       // 2 cos(2 pi theta_i)
  std::vector<long double> sin2;    // (2 sin(2 pi theta_i))^2
  std::vector<std::pair<int, int>> parts;
  std::vector<std::vector<long double>> trace_terms;  // [part index][node]
};

NodeTables make_tables(const Partition& a, int nodes) {
  NodeTables t;
  const long double tau = 2.0L * std::numbers::pi_v<long double>;
  t.parts.assign(a.parts().begin(), a.parts().end());
  t.trace_terms.assign(t.parts.size(), std::vector<long double>(nodes + 1));
  t.x.resize(nodes + 1);
  t.sin2.resize(nodes + 1);
  for (int i = 1; i <= nodes; ++i) {
    const long double th = node_angle(i, nodes);
    t.x[i] = 2.0L * std::cos(tau * th);
    const long double s = 2.0L * std::sin(tau * th);
    t.sin2[i] = s * s;
    for (std::size_t p = 0; p < t.parts.size(); ++p)
      t.trace_terms[p][i] = 2.0L * std::cos(tau * t.parts[p].first * th);
  }
  return t;
}

struct Partial {
  long double numerator = 0.0L;
  long double denominator = 0.0L;
};

// Walks strictly increasing tuples; the integrand is symmetric and vanishes on
// coincident nodes, so this covers the tensor grid up to the factor n!.
void walk(const NodeTables& t, int nodes, int n, std::vector<int>& idx, int depth, Partial& acc) {
  if (depth == n) {
    long double w = 1.0L;
    for (int j = 0; j < n; ++j) {
      w *= t.sin2[idx[j]];
      for (int k = j + 1; k < n; ++k) {
        const long double d = t.x[idx[j]] - t.x[idx[k]];
        w *= d * d;
      }
    }
    long double f = 1.0L;
    for (std::size_t p = 0; p < t.parts.size(); ++p) {
      long double tr = 0.0L;
      for (int j = 0; j < n; ++j) tr += t.trace_terms[p][idx[j]];
      long double pw = 1.0L;
      for (int m = 0; m < t.parts[p].second; ++m) pw *= tr;
      f *= pw;
    }
    acc.numerator += w * f;
    acc.denominator += w;
    return;
  }
  for (int i = idx[depth - 1] + 1; i <= nodes - (n - depth - 1); ++i) {
    idx[depth] = i;
    walk(t, nodes, n, idx, depth + 1, acc);
  }
}

}  // namespace

double moment_quadrature(int n, const Partition& a, const QuadratureConfig& cfg) {
  const int nodes = resolve_nodes(n, a, cfg);
  if (nodes < n) return 0.0;  // no admissible distinct-node tuple; callers never hit this with exact counts
  const NodeTables t = make_tables(a, nodes);
  const int first_max = nodes - n + 1;
  std::vector<Partial> partial(first_max + 1);

#pragma omp parallel for schedule(dynamic, 1)
  for (int first = 1; first <= first_max; ++first) {
    std::vector<int> idx(n);
    idx[0] = first;
    Partial acc;
    walk(t, nodes, n, idx, 1, acc);
    partial[first] = acc;
  }

  Partial total;
  for (int first = 1; first <= first_max; ++first) {
    total.numerator += partial[first].numerator;
    total.denominator += partial[first].denominator;
  }
  return static_cast<double>(total.numerator / total.denominator);
}

double moment_quadrature_serial(int n, const Partition& a, const QuadratureConfig& cfg) {
  const int nodes = resolve_nodes(n, a, cfg);
  std::vector<int> idx(n, 1);
  EigenAngles e{std::vector<double>(n)};
  long double num = 0.0L, den = 0.0L;
  while (true) {
    for (int k = 0; k < n; ++k) e.theta[k] = node_angle(idx[k], nodes);
    const long double w = weyl_weight_usp(e);
    num += w * static_cast<long double>(trace_product(e, a));
    den += w;
    int k = n - 1;
    while (k >= 0 && ++idx[k] > nodes) idx[k--] = 1;
    if (k < 0) break;
  }
  return static_cast<double>(num / den);
}

}  // namespace symp
