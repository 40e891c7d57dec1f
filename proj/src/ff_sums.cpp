#include <cmath>
#include <map>
#include <set>

#include "symp/ffield.hpp"
#include "symp/parallel.hpp"

namespace symp::ff {

namespace {

constexpr std::uint64_t kBlock = 512;

void require_n(int n) {
  if (n < 1) throw InvalidArgument("n must be >= 1");
}

// Multiplies acc by v^e; falls back to BigInt once the product leaves int128.
struct ExactProduct {
  __int128 small = 1;
  BigInt big;
  bool promoted = false;

  void times(std::int64_t v, int e) {
    for (int k = 0; k < e; ++k) {
      if (!promoted) {
        __int128 out;
        if (!__builtin_mul_overflow(small, static_cast<__int128>(v), &out)) {
          small = out;
          continue;
        }
        big = ExactAccumulator::to_big(small);
        promoted = true;
      }
      big *= v;
    }
  }
  void add_to(ExactAccumulator& acc) const {
    if (promoted)
      acc.add(big);
    else
      acc.add(small);
  }
};

struct QTerm {
  int prime_degree;
  int exponent;
};

std::vector<QTerm> q_terms(int j, QMode mode) {
  std::vector<QTerm> out;
  for (int d = 1; d <= j; ++d) {
    if (j % d) continue;
    const int e = j / d;
    if (mode == QMode::PrimeOrPrimeSquare && e > 2) continue;
    out.push_back({d, e});
  }
  return out;
}

long double to_ld(const BigInt& v) { return v.convert_to<long double>(); }

BigInt small_binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

BigInt factorial(int k) {
  BigInt r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

}  // namespace

double empirical_moment(const PrimeField& f, int n, const Partition& a, QMode mode,
                        std::uint64_t budget) {
  require_n(n);
  const std::uint64_t count = monic_count(f, 2 * n + 1, budget);
  if (a.empty()) return 1.0;

  const PrimeTable table(f, a.max_part(), budget);
  std::vector<std::pair<int, int>> support(a.parts().begin(), a.parts().end());
  std::vector<std::vector<QTerm>> terms;
  std::set<int> degrees;
  for (auto [j, mult] : support) {
    terms.push_back(q_terms(j, mode));
    for (auto t : terms.back()) degrees.insert(t.prime_degree);
  }
  const std::vector<int> needed(degrees.begin(), degrees.end());
  const int max_d = *degrees.rbegin();

  const std::uint64_t blocks = (count + kBlock - 1) / kBlock;
  std::vector<ExactAccumulator> block_sum(blocks);
  std::vector<std::uint64_t> block_count(blocks, 0);

#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
    std::vector<std::int64_t> chi_sum(static_cast<std::size_t>(max_d) + 1);
    std::vector<std::int64_t> chi_abs(static_cast<std::size_t>(max_d) + 1);
    ExactAccumulator acc;
    std::uint64_t seen = 0;
    const std::uint64_t end = std::min(count, (static_cast<std::uint64_t>(b) + 1) * kBlock);
    for (std::uint64_t idx = static_cast<std::uint64_t>(b) * kBlock; idx < end; ++idx) {
      const PolyFq h = monic_from_index(f, 2 * n + 1, idx);
      if (!is_squarefree(f, h)) continue;
      ++seen;
      for (int d : needed) {
        std::int64_t s = 0, sa = 0;
        for (const auto& p : table.of_degree(d)) {
          const int chi = jacobi_prime(f, h, p);
          s += chi;
          sa += chi * chi;
        }
        chi_sum[static_cast<std::size_t>(d)] = s;
        chi_abs[static_cast<std::size_t>(d)] = sa;
      }
      ExactProduct prod;
      for (std::size_t k = 0; k < support.size(); ++k) {
        std::int64_t sj = 0;
        for (auto t : terms[k]) {
          const auto& src = (t.exponent % 2 == 0) ? chi_abs : chi_sum;
          sj += static_cast<std::int64_t>(t.prime_degree) * src[static_cast<std::size_t>(t.prime_degree)];
        }
        prod.times(sj, support[k].second);
      }
      prod.add_to(acc);
    }
    block_sum[static_cast<std::size_t>(b)] = std::move(acc);
    block_count[static_cast<std::size_t>(b)] = seen;
  }

  ExactAccumulator total;
  std::uint64_t h_count = 0;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    total.merge(block_sum[b]);
    h_count += block_count[b];
  }
  const long double scale =
      static_cast<long double>(h_count) * std::pow(static_cast<long double>(f.q()), size(a) / 2.0L);
  const long double value = to_ld(total.total()) / scale;
  return static_cast<double>(length(a) % 2 == 0 ? value : -value);
}

double empirical_moment_serial(const PrimeField& f, int n, const Partition& a, QMode mode,
                               std::uint64_t budget) {
  require_n(n);
  const auto hs = enumerate_H(f, n, budget);
  if (a.empty()) return 1.0;
  // (Q, Lambda(Q)) for every monic Q of each needed degree, filtered by mode
  std::map<int, std::vector<std::pair<PolyFq, int>>> prime_powers;
  for (auto [j, mult] : a.parts()) {
    auto& list = prime_powers[j];
    const std::uint64_t cnt = monic_count(f, j, budget);
    for (std::uint64_t i = 0; i < cnt; ++i) {
      PolyFq q = monic_from_index(f, j, i);
      const int lambda = von_mangoldt(f, q);
      if (lambda == 0) continue;
      if (mode == QMode::PrimeOrPrimeSquare && j / lambda > 2) continue;
      list.emplace_back(std::move(q), lambda);
    }
  }
  BigInt total = 0;
  for (const auto& h : hs) {
    BigInt prod = 1;
    for (auto [j, mult] : a.parts()) {
      std::int64_t s = 0;
      for (const auto& [q, lambda] : prime_powers[j]) s += lambda * jacobi(f, h, q);
      for (int k = 0; k < mult; ++k) prod *= s;
    }
    total += prod;
  }
  const long double scale =
      static_cast<long double>(hs.size()) * std::pow(static_cast<long double>(f.q()), size(a) / 2.0L);
  const long double value = to_ld(total) / scale;
  return static_cast<double>(length(a) % 2 == 0 ? value : -value);
}

namespace {

// Sum over ordered k-tuples of distinct items of prod x_i, where the x_i are
// `plus` copies of +1 and `minus` copies of -1: k! e_k(x).
BigInt ordered_distinct_sum(std::int64_t plus, std::int64_t minus, int k) {
  BigInt e = 0;
  for (int i = 0; i <= k; ++i) {
    BigInt term = small_binomial(plus, i) * small_binomial(minus, k - i);
    if ((k - i) % 2) term = -term;
    e += term;
  }
  return e * factorial(k);
}

BigInt lambda_weight(const Partition& a) {
  BigInt w = 1;
  for (auto [j, mult] : a.parts())
    for (int k = 0; k < mult; ++k) w *= j;
  return w;
}

}  // namespace

DistinctPrimeSums distinct_prime_sums(const PrimeField& f, int n, const Partition& a,
                                      std::uint64_t budget) {
  require_n(n);
  const std::uint64_t count = monic_count(f, 2 * n + 1, budget);
  if (a.empty()) return {BigInt(count), BigInt(count)};
  const PrimeTable table(f, a.max_part(), budget);
  std::vector<std::pair<int, int>> support(a.parts().begin(), a.parts().end());

  const std::uint64_t blocks = (count + kBlock - 1) / kBlock;
  std::vector<BigInt> block_sum(blocks);

#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
    BigInt acc = 0;
    const std::uint64_t end = std::min(count, (static_cast<std::uint64_t>(b) + 1) * kBlock);
    for (std::uint64_t idx = static_cast<std::uint64_t>(b) * kBlock; idx < end; ++idx) {
      const PolyFq h = monic_from_index(f, 2 * n + 1, idx);
      BigInt prod = 1;
      for (auto [j, mult] : support) {
        std::int64_t plus = 0, minus = 0;
        for (const auto& p : table.of_degree(j)) {
          const int chi = jacobi_prime(f, h, p);
          plus += chi == 1;
          minus += chi == -1;
        }
        prod *= ordered_distinct_sum(plus, minus, mult);
        if (prod == 0) break;
      }
      acc += prod;
    }
    block_sum[static_cast<std::size_t>(b)] = std::move(acc);
  }
  BigInt s = 0;
  for (const auto& v : block_sum) s += v;
  return {lambda_weight(a) * s, s};
}

DistinctPrimeSums distinct_prime_sums_serial(const PrimeField& f, int n, const Partition& a,
                                             std::uint64_t budget) {
  require_n(n);
  const std::uint64_t count = monic_count(f, 2 * n + 1, budget);
  if (a.empty()) return {BigInt(count), BigInt(count)};
  // slots: one per (j, i); each slot draws from the primes of degree j
  std::vector<int> slot_degree;
  for (auto [j, mult] : a.parts())
    for (int i = 0; i < mult; ++i) slot_degree.push_back(j);
  std::map<int, std::vector<PolyFq>> primes;
  for (auto [j, mult] : a.parts()) primes[j] = primes_of_degree(f, j, budget);

  BigInt t = 0, s = 0;
  std::vector<std::size_t> pick(slot_degree.size());
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    const PolyFq h = monic_from_index(f, 2 * n + 1, idx);
    std::map<int, std::vector<int>> chi;
    for (const auto& [j, list] : primes)
      for (const auto& p : list) chi[j].push_back(jacobi(f, h, p));
    std::fill(pick.begin(), pick.end(), 0);
    while (true) {
      bool distinct = true;
      for (std::size_t x = 0; x < pick.size() && distinct; ++x)
        for (std::size_t y = x + 1; y < pick.size(); ++y)
          if (slot_degree[x] == slot_degree[y] && pick[x] == pick[y]) {
            distinct = false;
            break;
          }
      if (distinct) {
        std::int64_t chi_prod = 1, lambda_prod = 1;
        for (std::size_t x = 0; x < pick.size(); ++x) {
          chi_prod *= chi[slot_degree[x]][pick[x]];
          lambda_prod *= slot_degree[x];
        }
        s += chi_prod;
        t += chi_prod * lambda_prod;
      }
      bool done = true;
      for (std::size_t x = pick.size(); x-- > 0;) {
        if (++pick[x] < primes[slot_degree[x]].size()) {
          done = false;
          break;
        }
        pick[x] = 0;
      }
      if (done) break;
    }
  }
  return {t, s};
}

namespace {

// Words of length len over `letters` symbols in which every symbol occurs an
// even number of times: 2^{-N} sum_i C(N, i) (N - 2i)^len.
BigInt even_occurrence_words(int len, std::int64_t letters) {
  if (len == 0) return 1;
  if (len % 2) return 0;
  BigInt sum = 0;
  for (std::int64_t i = 0; i <= letters; ++i)
    sum += small_binomial(letters, i) * boost::multiprecision::pow(BigInt(letters - 2 * i), static_cast<unsigned>(len));
  return sum >> static_cast<unsigned>(letters);
}

}  // namespace

SquareContribution square_contribution(const PrimeField& f, const Partition& b, std::uint64_t budget) {
  BigInt raw = 1;
  std::map<int, std::int64_t> prime_count;
  auto pi = [&](int d) {
    auto it = prime_count.find(d);
    if (it != prime_count.end()) return it->second;
    const auto c = static_cast<std::int64_t>(primes_of_degree(f, d, budget).size());
    prime_count.emplace(d, c);
    return c;
  };
  for (auto [j, mult] : b.parts()) {
    // k slots hold squares P^2 (deg P = j/2, Lambda = j/2); the rest hold primes
    // of degree j (Lambda = j) that must pair up.
    BigInt w = 0;
    for (int k = 0; k <= mult; ++k) {
      if (k > 0 && j % 2) break;
      const int free_slots = mult - k;
      BigInt term = small_binomial(mult, k) * even_occurrence_words(free_slots, pi(j)) *
                    boost::multiprecision::pow(BigInt(j), static_cast<unsigned>(free_slots));
      if (k > 0) term *= boost::multiprecision::pow(BigInt(j / 2) * pi(j / 2), static_cast<unsigned>(k));
      w += term;
    }
    raw *= w;
    if (raw == 0) break;
  }
  const long double norm = std::pow(static_cast<long double>(f.q()), size(b) / 2.0L);
  return {raw, static_cast<double>(to_ld(raw) / norm)};
}

}  // namespace symp::ff
