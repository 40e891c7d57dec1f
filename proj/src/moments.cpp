#include "symp/moments.hpp"

#include <string>

namespace symp {

namespace {

BigInt pow_int(int base, std::int64_t exp) {
  BigInt r = 1;
  BigInt b = base;
  while (exp > 0) {
    if (exp & 1) r *= b;
    b *= b;
    exp >>= 1;
  }
  return r;
}

BigInt small_binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

void require_positive_n(int n) {
  if (n < 1) throw InvalidArgument("matrix half-dimension n must be >= 1, got " + std::to_string(n));
}

}  // namespace

int eta(int j) {
  if (j < 1) throw InvalidArgument("eta is defined for j >= 1");
  return j % 2 == 0 ? 1 : 0;
}

BigInt odd_double_factorial(int m) {
  BigInt r = 1;
  for (int k = 1; k < 2 * m; k += 2) r *= k;
  return r;
}

BigInt g_single(int j, int a) {
  if (j < 1 || a < 0) throw InvalidArgument("g_single needs j >= 1, a >= 0");
  if ((static_cast<std::int64_t>(j) * a) % 2 != 0) return 0;
  if (j % 2 != 0) return pow_int(j, a / 2) * odd_double_factorial(a / 2);
  BigInt sum = 0;
  for (int l = 0; 2 * l <= a; ++l) sum += small_binomial(a, 2 * l) * pow_int(j, l) * odd_double_factorial(l);
  return sum;
}

BigInt g(const Partition& b) {
  BigInt r = 1;
  for (auto [part, mult] : b.parts()) {
    r *= g_single(part, mult);
    if (r == 0) break;
  }
  return r;
}

BigInt phi(int n, const Partition& c) {
  const std::int64_t sz = size(c);
  if (sz == 0) return 1;
  if (sz % 2 != 0) return 0;
  const std::int64_t bound = sz / 2 - n - 1;
  if (bound < 0) return 0;
  BigInt sum = 0;
  for (const auto& d : sub_partitions(c)) {
    if (size(d) > bound) continue;
    BigInt term = binomial(c, d);
    if (length(d) % 2 != 0) term = -term;
    sum += term;
  }
  return -sum;
}

BigInt moment_usp_unchecked(int n, const Partition& a) {
  require_positive_n(n);
  BigInt sum = 0;
  for (const auto& b : sub_partitions(a)) {
    BigInt gb = g(b);
    if (gb == 0) continue;
    BigInt ph = phi(n, subtract(a, b));
    if (ph == 0) continue;
    sum += binomial(a, b) * gb * ph;
  }
  return length(a) % 2 == 0 ? sum : BigInt(-sum);
}

BigInt moment_usp(int n, const Partition& a) {
  require_positive_n(n);
  if (size(a) > moment_usp_max_size(n))
    throw OutOfRange("size " + std::to_string(size(a)) + " of partition '" + format_partition(a) +
                     "' exceeds 4n+1 = " + std::to_string(moment_usp_max_size(n)));
  return moment_usp_unchecked(n, a);
}

FlaggedMoment moment_usp_gaussian(int n, const Partition& a) {
  BigInt v = g(a);
  if (length(a) % 2 != 0) v = -v;
  return {v, size(a) <= 2 * static_cast<std::int64_t>(n) + 1};
}

FlaggedMoment moment_so_gaussian(int n, const Partition& a) {
  return {g(a), size(a) <= static_cast<std::int64_t>(n) - 1};
}

FlaggedMoment moment_u_gaussian(int n, const Partition& a, const Partition& b) {
  const bool valid = size(a) + size(b) <= 2 * static_cast<std::int64_t>(n);
  if (a != b) return {0, valid};
  BigInt r = 1;
  for (auto [part, mult] : a.parts()) {
    r *= pow_int(part, mult);
    for (int k = 2; k <= mult; ++k) r *= k;
  }
  return {r, valid};
}

int Pairing::pair_count(int part) const {
  auto it = pairs.find(part);
  return it == pairs.end() ? 0 : static_cast<int>(it->second.size());
}

namespace {

struct Involution {
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> fixed;
};

// Involutions of {1..count}; fixed points allowed only when `allow_fixed`.
void involutions_rec(std::vector<bool>& used, int count, bool allow_fixed, Involution& cur,
                     std::vector<Involution>& out) {
  int first = 1;
  while (first <= count && used[first]) ++first;
  if (first > count) {
    out.push_back(cur);
    return;
  }
  used[first] = true;
  if (allow_fixed) {
    cur.fixed.push_back(first);
    involutions_rec(used, count, allow_fixed, cur, out);
    cur.fixed.pop_back();
  }
  for (int other = first + 1; other <= count; ++other) {
    if (used[other]) continue;
    used[other] = true;
    cur.pairs.emplace_back(first, other);
    involutions_rec(used, count, allow_fixed, cur, out);
    cur.pairs.pop_back();
    used[other] = false;
  }
  used[first] = false;
}

std::vector<Involution> involutions(int count, bool allow_fixed) {
  std::vector<bool> used(count + 1, false);
  Involution cur;
  std::vector<Involution> out;
  involutions_rec(used, count, allow_fixed, cur, out);
  return out;
}

}  // namespace

std::vector<Pairing> enumerate_pairings(const Partition& b) {
  std::vector<Pairing> out{Pairing{b, {}, {}}};
  for (auto [part, mult] : b.parts()) {
    auto local = involutions(mult, part % 2 == 0);
    std::vector<Pairing> next;
    next.reserve(out.size() * local.size());
    for (const auto& p : out) {
      for (const auto& inv : local) {
        Pairing q = p;
        if (!inv.pairs.empty()) q.pairs[part] = inv.pairs;
        if (!inv.fixed.empty()) q.fixed[part] = inv.fixed;
        next.push_back(std::move(q));
      }
    }
    out = std::move(next);
  }
  return out;
}

BigInt pairing_weight_sum(const Partition& b) {
  BigInt sum = 0;
  for (const auto& p : enumerate_pairings(b)) {
    BigInt w = 1;
    for (const auto& [part, list] : p.pairs) w *= pow_int(part, static_cast<std::int64_t>(list.size()));
    sum += w;
  }
  return sum;
}

}  // namespace symp
