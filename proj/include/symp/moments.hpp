#ifndef SYMP_MOMENTS_HPP_
#define SYMP_MOMENTS_HPP_

#include <map>
#include <utility>
#include <vector>

#include "symp/common.hpp"
#include "symp/partition.hpp"

namespace symp {

// Closed-form trace moments M(G, a) = E[prod_j tr(U^j)^{a_j}] over the Haar
// measure. All arithmetic is exact.

/// 1 if j is even, 0 otherwise.
int eta(int j);

/// (2m-1)!! = 1*3*...*(2m-1), with the convention (-1)!! = 1.
BigInt odd_double_factorial(int m);

/// g_j(a): 0 if j*a is odd, j^{a/2}(a-1)!! for odd j, and
/// sum_l C(a,2l) j^l (2l-1)!! for even j.
BigInt g_single(int j, int a);

/// prod_j g_j(b_j).
BigInt g(const Partition& b);

/// The correction term of the non-Gaussian formula:
///   phi(n, c) = 1                                          if |c| = 0,
///             = 0                                          if |c| odd,
///             = -sum_{d <= c, |d| <= |c|/2 - n - 1} (-1)^{l(d)} C(c, d)   otherwise.
BigInt phi(int n, const Partition& c);

/// Moment of USp(2n) for |a| <= 4n+1:
///   (-1)^{l(a)} sum_{b <= a} C(a, b) g(b) phi(n, a - b).
/// Throws OutOfRange beyond 4n+1, where the formula is not known to hold.
BigInt moment_usp(int n, const Partition& a);

/// Same sum evaluated without the range check. Values with |a| > 4n+1 are
/// unproven and only meant for exploration.
BigInt moment_usp_unchecked(int n, const Partition& a);

/// Largest size for which moment_usp is valid.
inline std::int64_t moment_usp_max_size(int n) { return 4 * static_cast<std::int64_t>(n) + 1; }

struct FlaggedMoment {
  BigInt value;
  bool valid;  // inside the range where the Gaussian formula is exact
};

/// (-1)^{l(a)} g(a); valid for |a| <= 2n+1.
FlaggedMoment moment_usp_gaussian(int n, const Partition& a);
/// g(a) for SO(n); valid for |a| <= n-1.
FlaggedMoment moment_so_gaussian(int n, const Partition& a);
/// E[prod tr(U^j)^{a_j} conj(tr(U^j))^{b_j}] for U(n):
/// prod_j delta(a_j, b_j) j^{a_j} a_j!; valid for |a| + |b| <= 2n.
FlaggedMoment moment_u_gaussian(int n, const Partition& a, const Partition& b);

/// A part-size preserving involution on the parts of `base` with no fixed
/// odd part. Parts of size j are indexed 1..base_j.
struct Pairing {
  Partition base;
  std::map<int, std::vector<std::pair<int, int>>> pairs;
  std::map<int, std::vector<int>> fixed;

  int pair_count(int part) const;
};

std::vector<Pairing> enumerate_pairings(const Partition& b);

/// sum over pairings of prod_j j^{(number of pairs at j)}; equals g(b).
BigInt pairing_weight_sum(const Partition& b);

}  // namespace symp

#endif  // SYMP_MOMENTS_HPP_
