#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "oracles.hpp"
#include "symp/ffield.hpp"
#include "symp/moments.hpp"

using namespace symp::ff;
using symp::BigInt;
using symp::Partition;

namespace {

PolyFq poly(const PrimeField& f, std::vector<std::int64_t> c) {
  std::vector<Coeff> out;
  for (auto v : c) out.push_back(f.from_int(v));
  return PolyFq(std::move(out));
}

PolyFq random_monic(const PrimeField& f, int degree, std::mt19937_64& rng) {
  std::vector<Coeff> c(static_cast<std::size_t>(degree) + 1);
  for (int i = 0; i < degree; ++i) c[static_cast<std::size_t>(i)] = static_cast<Coeff>(rng() % f.q());
  c[static_cast<std::size_t>(degree)] = 1;
  return PolyFq(std::move(c));
}

// Reducible monic polynomials of degree d, found by multiplying out every
// pair of monic factors.
std::set<PolyFq> reducibles(const PrimeField& f, int d) {
  std::set<PolyFq> out;
  for (int i = 1; i <= d / 2; ++i) {
    const auto ci = monic_count(f, i), cj = monic_count(f, d - i);
    for (std::uint64_t a = 0; a < ci; ++a)
      for (std::uint64_t b = 0; b < cj; ++b) out.insert(mul(f, monic_from_index(f, i, a), monic_from_index(f, d - i, b)));
  }
  return out;
}

// Direct enumeration of the square-product sum: every slot of degree j picks
// a prime of degree j or the square of a prime of degree j/2.
BigInt brute_square_sum(const PrimeField& f, const Partition& b) {
  struct Choice {
    std::vector<std::pair<int, int>> primes;  // (prime id, exponent)
    int lambda;
  };
  std::map<PolyFq, int> ids;
  auto id_of = [&](const PolyFq& p) { return ids.emplace(p, static_cast<int>(ids.size())).first->second; };
  std::vector<std::vector<Choice>> slots;
  for (auto [j, m] : b.parts()) {
    std::vector<Choice> options;
    for (const auto& p : primes_of_degree(f, j)) options.push_back({{{id_of(p), 1}}, j});
    if (j % 2 == 0)
      for (const auto& p : primes_of_degree(f, j / 2)) options.push_back({{{id_of(p), 2}}, j / 2});
    for (int k = 0; k < m; ++k) slots.push_back(options);
  }
  BigInt total = 0;
  std::vector<std::size_t> pick(slots.size(), 0);
  while (true) {
    std::map<int, int> exps;
    BigInt w = 1;
    for (std::size_t s = 0; s < slots.size(); ++s) {
      const auto& c = slots[s][pick[s]];
      for (auto [id, e] : c.primes) exps[id] += e;
      w *= c.lambda;
    }
    bool square = true;
    for (auto [id, e] : exps) square = square && e % 2 == 0;
    if (square) total += w;
    std::size_t s = slots.size();
    while (s > 0 && ++pick[s - 1] == slots[s - 1].size()) pick[--s] = 0;
    if (s == 0) break;
  }
  return total;
}

}  // namespace

TEST_SUITE("ffield") {
  TEST_CASE("prime fields") {
    CHECK_THROWS_AS(PrimeField(2), symp::InvalidArgument);
    CHECK_THROWS_AS(PrimeField(9), symp::InvalidArgument);
    CHECK_THROWS_AS(PrimeField(65537), symp::InvalidArgument);
    const PrimeField f(7);
    for (Coeff c = 0; c < 7; ++c) CHECK(f.legendre(c) == oracle::legendre(c, 7));
    for (Coeff c = 1; c < 7; ++c) CHECK(f.mul(c, f.inv(c)) == 1);
    CHECK(f.from_int(-1) == 6);
  }

  TEST_CASE("polynomial arithmetic") {
    const PrimeField f(5);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
      const PolyFq a = random_monic(f, static_cast<int>(rng() % 7), rng);
      const PolyFq b = random_monic(f, 1 + static_cast<int>(rng() % 4), rng);
      const auto [qt, r] = divmod(f, a, b);
      CHECK(add(f, mul(f, qt, b), r) == a);
      CHECK(r.degree() < b.degree());
      const PolyFq g = gcd(f, mul(f, a, b), b);
      CHECK(g == b);
      const Coeff x = static_cast<Coeff>(rng() % 5);
      CHECK(eval(f, mul(f, a, b), x) == f.mul(eval(f, a, x), eval(f, b, x)));
    }
    CHECK_THROWS_AS(divmod(f, PolyFq::x(), PolyFq()), symp::InvalidArgument);
  }

  TEST_CASE("prime counts") {
    CHECK(primes_of_degree(PrimeField(3), 1).size() == 3);
    CHECK(primes_of_degree(PrimeField(3), 2).size() == 3);
    CHECK(primes_of_degree(PrimeField(5), 2).size() == 10);
    for (std::uint32_t q : {3u, 5u, 7u})
      for (int j = 1; j <= (q == 3 ? 6 : 4); ++j)
        CHECK(static_cast<std::int64_t>(primes_of_degree(PrimeField(q), j).size()) == oracle::prime_count(q, j));
    CHECK_THROWS_AS(primes_of_degree(PrimeField(7), 12, 1000), symp::BudgetExceeded);
  }

  TEST_CASE("irreducibility agrees with a product sieve") {
    for (std::uint32_t q : {3u, 5u}) {
      const PrimeField f(q);
      for (int d = 1; d <= 4; ++d) {
        const auto red = reducibles(f, d);
        const auto n = monic_count(f, d);
        for (std::uint64_t i = 0; i < n; ++i) {
          const PolyFq p = monic_from_index(f, d, i);
          CHECK(is_irreducible(f, p) == (red.count(p) == 0));
        }
      }
    }
  }

  TEST_CASE("jacobi symbol examples") {
    const PrimeField f(3);
    const PolyFq h = poly(f, {0, -1, 0, 1});  // x^3 - x
    for (std::int64_t c = 0; c < 3; ++c) CHECK(jacobi(f, h, poly(f, {-c, 1})) == 0);
    CHECK(jacobi(f, PolyFq::x(), poly(f, {-1, 1})) == 1);
    CHECK(jacobi(f, h, PolyFq::constant(1)) == 1);
    const PolyFq p = poly(f, {1, 0, 1});  // x^2 + 1, irreducible mod 3
    CHECK(jacobi(f, mul(f, p, h), p) == 0);
  }

  TEST_CASE("jacobi: reciprocity route equals Euler's criterion on primes") {
    for (std::uint32_t q : {3u, 5u, 7u, 11u}) {
      const PrimeField f(q);
      std::mt19937_64 rng(q);
      for (int d = 1; d <= 3; ++d)
        for (const auto& p : primes_of_degree(f, d))
          for (int t = 0; t < 5; ++t) {
            const PolyFq h = random_monic(f, static_cast<int>(rng() % 6), rng);
            CHECK(jacobi(f, h, p) == jacobi_prime(f, h, p));
          }
    }
  }

  TEST_CASE("jacobi is multiplicative in both arguments") {
    std::mt19937_64 rng(17);
    for (std::uint32_t q : {3u, 5u, 13u}) {
      const PrimeField f(q);
      for (int t = 0; t < 300; ++t) {
        const PolyFq h1 = random_monic(f, static_cast<int>(rng() % 6), rng);
        const PolyFq h2 = random_monic(f, static_cast<int>(rng() % 6), rng);
        const PolyFq f1 = random_monic(f, 1 + static_cast<int>(rng() % 4), rng);
        const PolyFq f2 = random_monic(f, 1 + static_cast<int>(rng() % 4), rng);
        CHECK(jacobi(f, mul(f, h1, h2), f1) == jacobi(f, h1, f1) * jacobi(f, h2, f1));
        CHECK(jacobi(f, h1, mul(f, f1, f2)) == jacobi(f, h1, f1) * jacobi(f, h1, f2));
        const Coeff c = 1 + static_cast<Coeff>(rng() % (q - 1));
        const int expect = f1.degree() % 2 ? f.legendre(c) : 1;
        CHECK(jacobi(f, PolyFq::constant(c), f1) == expect);
      }
    }
  }

  TEST_CASE("von Mangoldt") {
    const PrimeField f(5);
    const auto p3 = primes_of_degree(f, 3);
    const auto p2 = primes_of_degree(f, 2);
    const auto p1 = primes_of_degree(f, 1);
    CHECK(von_mangoldt(f, p3[4]) == 3);
    CHECK(von_mangoldt(f, mul(f, p2[1], p2[1])) == 2);
    CHECK(von_mangoldt(f, mul(f, p2[1], p2[2])) == 0);
    CHECK(von_mangoldt(f, mul(f, p1[0], mul(f, p1[0], p1[0]))) == 1);
    CHECK(von_mangoldt(f, PolyFq::constant(1)) == 0);
    // sum over monic Q of degree j of Lambda(Q) is q^j
    for (int j = 1; j <= 4; ++j) {
      std::int64_t s = 0;
      for (std::uint64_t i = 0; i < monic_count(f, j); ++i) s += von_mangoldt(f, monic_from_index(f, j, i));
      CHECK(s == static_cast<std::int64_t>(std::pow(5, j)));
    }
  }

  TEST_CASE("enumerate_H") {
    // q^{2n+1}(1 - 1/q)
    CHECK(enumerate_H(PrimeField(3), 1).size() == 18);
    CHECK(enumerate_H(PrimeField(5), 1).size() == 100);
    CHECK(enumerate_H(PrimeField(3), 2).size() == 162);
    for (std::uint32_t q : {3u, 5u}) {
      const PrimeField f(q);
      const auto primes = PrimeTable(f, 2);
      const auto hs = enumerate_H(f, 2);
      std::size_t pos = 0, squarefree = 0;
      // squarefree <=> no P^2 divides h, with deg P <= 2 for degree 5
      for (std::uint64_t i = 0; i < monic_count(f, 5); ++i) {
        const PolyFq h = monic_from_index(f, 5, i);
        bool sf = true;
        for (int d = 1; d <= 2; ++d)
          for (const auto& p : primes.of_degree(d)) sf = sf && !mod(f, h, mul(f, p, p)).is_zero();
        if (!sf) continue;
        ++squarefree;
        REQUIRE(pos < hs.size());
        CHECK(hs[pos++] == h);
      }
      CHECK(squarefree == hs.size());
    }
    CHECK_THROWS_AS(enumerate_H(PrimeField(101), 3, 1000), symp::BudgetExceeded);
  }

  TEST_CASE("L-polynomial examples") {
    const PrimeField f3(3);
    const auto l = l_polynomial(f3, poly(f3, {0, -1, 0, 1}));
    CHECK(l.c == std::vector<std::int64_t>{1, 0, 3});

    // c_1 is the character sum over F_q, i.e. (#affine points) - q
    const PrimeField f5(5);
    const auto l5 = l_polynomial(f5, poly(f5, {0, 1, 0, 1}));
    std::int64_t sum = 0;
    for (std::int64_t c = 0; c < 5; ++c) sum += oracle::legendre(oracle::eval_mod({0, 1, 0, 1}, c, 5), 5);
    CHECK(l5.c[1] == sum);
    CHECK(l5.c[1] == -2);

    CHECK_THROWS_AS(l_polynomial(f3, poly(f3, {0, 0, 0, 1})), symp::NotSquarefree);
    CHECK_THROWS_AS(l_polynomial(f3, poly(f3, {1, 0, 1})), symp::InvalidArgument);
    CHECK_THROWS_AS(l_polynomial(f3, poly(f3, {1, 1, 2})), symp::InvalidArgument);
  }

  TEST_CASE("L-polynomial: Euler product equals the defining sum") {
    for (auto [q, n] : {std::pair{3u, 1}, std::pair{5u, 1}, std::pair{7u, 1}, std::pair{3u, 2}}) {
      const PrimeField f(q);
      const PrimeTable table(f, 2 * n);
      for (const auto& h : enumerate_H(f, n)) {
        const auto fast = l_polynomial(table, h);
        CHECK(fast.c == l_polynomial_direct(f, h).c);
        CHECK(fast.satisfies_functional_equation());
        // c_1 from point counting
        std::int64_t c1 = 0;
        for (Coeff c = 0; c < q; ++c) c1 += f.legendre(eval(f, h, c));
        CHECK(fast.c[1] == c1);
      }
    }
  }

  TEST_CASE("functional equation check rejects broken polynomials") {
    LPolynomial l{1, 3, {1, 0, 3}};
    CHECK(l.satisfies_functional_equation());
    l.c = {1, 1, 4};
    CHECK_FALSE(l.satisfies_functional_equation());
    l.c = {1, 0};
    CHECK_FALSE(l.satisfies_functional_equation());
  }

  TEST_CASE("power sums") {
    const LPolynomial l{1, 3, {1, 0, 3}};
    const auto s = frobenius_power_sums(l, 4);
    CHECK(s[0] == 2);
    CHECK(s[1] == 0);
    CHECK(s[2] == -6);
    CHECK(s[4] == 18);

    const PrimeField f(5);
    const auto l0 = l_polynomial(f, poly(f, {2, 1}));
    CHECK(l0.n == 0);
    for (auto v : frobenius_power_sums(l0, 5)) CHECK(v == 0);
    CHECK(inverse_roots(l0).empty());
  }

  TEST_CASE("explicit formula and root moduli") {
    for (std::uint32_t q : {3u, 5u, 7u}) {
      const PrimeField f(q);
      const PrimeTable table(f, 4);
      for (int n : {1, 2}) {
        if (q == 7 && n == 2) continue;
        for (const auto& h : enumerate_H(f, n)) {
          const auto l = l_polynomial(table, h);
          const auto s = frobenius_power_sums(l, 4);
          for (int j = 1; j <= 4; ++j) CHECK(s[static_cast<std::size_t>(j)] == explicit_formula_sum(table, h, j));
          for (auto alpha : inverse_roots(l)) CHECK(std::fabs(std::abs(alpha) - std::sqrt(q)) <= 1e-6);
        }
      }
    }
  }

  TEST_CASE("character sums over primes obey a Weil-type bound") {
    std::mt19937_64 rng(5);
    const double fitted_c = 3.0;
    for (std::uint32_t q : {3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u}) {
      const PrimeField f(q);
      const PrimeTable table(f, 3);
      for (int t = 0; t < 10; ++t) {
        PolyFq h;
        do h = random_monic(f, 3, rng);
        while (!is_squarefree(f, h));
        for (int j = 1; j <= 3; ++j) {
          const double scaled = std::fabs(static_cast<double>(prime_character_sum(table, h, j))) / std::pow(q, j / 2.0);
          CHECK(scaled <= fitted_c);
        }
      }
    }
  }

  TEST_CASE("empirical moments: fast kernel equals the reference") {
    for (std::uint32_t q : {3u, 5u}) {
      const PrimeField f(q);
      for (const auto& a : {Partition{{1, 2}}, Partition{{2, 1}}, Partition{{1, 4}}, Partition{{2, 2}},
                            Partition{{1, 1}, {2, 1}}, Partition{{3, 1}}, Partition{{4, 1}}})
        for (auto mode : {QMode::AllPrimePowers, QMode::PrimeOrPrimeSquare})
          CHECK(empirical_moment(f, 1, a, mode) == empirical_moment_serial(f, 1, a, mode));
    }
    const PrimeField f(3);
    CHECK(empirical_moment(f, 2, Partition{{1, 2}, {3, 1}}, QMode::AllPrimePowers) ==
          empirical_moment_serial(f, 2, Partition{{1, 2}, {3, 1}}, QMode::AllPrimePowers));
  }

  TEST_CASE("empirical moments: basic values") {
    const PrimeField f3(3);
    CHECK(empirical_moment(f3, 1, Partition{}, QMode::AllPrimePowers) == 1.0);
    double last = 1.0;
    for (std::uint32_t q : {3u, 5u, 7u, 11u, 13u}) {
      const double err = std::fabs(empirical_moment(PrimeField(q), 1, Partition{{1, 2}}, QMode::AllPrimePowers) - 1.0);
      CHECK(err * std::sqrt(q) <= 1.0);
      CHECK(err < last);
      last = err;
    }
    const PrimeField f13(13);
    const double all = empirical_moment(f13, 1, Partition{{2, 1}}, QMode::AllPrimePowers);
    const double pp = empirical_moment(f13, 1, Partition{{2, 1}}, QMode::PrimeOrPrimeSquare);
    CHECK(std::fabs(all - pp) <= 1.0 / 13);
    const PrimeField f5(5);
    const double all4 = empirical_moment(f5, 1, Partition{{4, 1}}, QMode::AllPrimePowers);
    const double pp4 = empirical_moment(f5, 1, Partition{{4, 1}}, QMode::PrimeOrPrimeSquare);
    CHECK(all4 != pp4);
    CHECK(std::fabs(all4 - pp4) <= 2.0 / 5);
    CHECK_THROWS_AS(empirical_moment(PrimeField(101), 2, Partition{{1, 2}}, QMode::AllPrimePowers, 1000),
                    symp::BudgetExceeded);
  }

  TEST_CASE("distinct-prime sums") {
    for (std::uint32_t q : {3u, 5u}) {
      const PrimeField f(q);
      const auto empty = distinct_prime_sums(f, 1, Partition{});
      CHECK(empty.t == BigInt(q) * q * q);
      for (const auto& a : symp::partitions_of_size_at_most(4)) {
        if (a.empty()) continue;
        const auto fast = distinct_prime_sums(f, 1, a);
        const auto ref = distinct_prime_sums_serial(f, 1, a);
        CHECK(fast.t == ref.t);
        CHECK(fast.s == ref.s);
        BigInt w = 1;
        for (auto [j, m] : a.parts())
          for (int k = 0; k < m; ++k) w *= j;
        CHECK(fast.t == w * fast.s);
        if (symp::size(a) <= 3) CHECK(fast.s == 0);
      }
    }
    const PrimeField f3(3);
    for (const auto& a : symp::partitions_of_size_at_most(5))
      if (!a.empty()) CHECK(distinct_prime_sums(f3, 2, a).s == 0);
  }

  TEST_CASE("square contributions") {
    for (std::uint32_t q : {3u, 5u}) {
      const PrimeField f(q);
      for (const auto& b : {Partition{{1, 2}}, Partition{{2, 1}}, Partition{{2, 2}}, Partition{{1, 1}},
                            Partition{{1, 2}, {2, 1}}, Partition{{1, 4}}, Partition{{3, 2}}, Partition{{4, 1}},
                            Partition{{2, 3}}, Partition{{1, 1}, {3, 1}}})
        CHECK(square_contribution(f, b).raw == brute_square_sum(f, b));
    }
    const PrimeField f13(13);
    CHECK(square_contribution(f13, Partition{{1, 3}}).raw == 0);
    CHECK(square_contribution(f13, Partition{{1, 1}, {2, 2}}).raw == 0);
    CHECK(std::fabs(square_contribution(f13, Partition{{1, 2}}).normalized - 1.0) <= 1.0 / 13);
    double last = 1.0;
    for (std::uint32_t q : {5u, 13u, 29u}) {
      const double v = square_contribution(PrimeField(q), Partition{{2, 2}}).normalized;
      CHECK(v == doctest::Approx(3.0 - 2.0 / q));
      CHECK(std::fabs(v - 3.0) < last);
      last = std::fabs(v - 3.0);
    }
  }

  TEST_CASE("polynomial spec text") {
    const auto spec = parse_poly_spec("q=3; h=0,-1,0,1");
    CHECK(spec.q == 3);
    CHECK(spec.h == PolyFq(std::vector<Coeff>{0, 2, 0, 1}));
    CHECK(format_poly_spec(spec.q, spec.h) == "q=3; h=0,2,0,1");
    CHECK(parse_poly_spec(format_poly_spec(spec.q, spec.h)).h == spec.h);
    CHECK_THROWS_AS(parse_poly_spec("q=3"), symp::ParseError);
    CHECK_THROWS_AS(parse_poly_spec("q=3; h=1,,2"), symp::ParseError);
    CHECK_THROWS_AS(parse_poly_spec("q=4; h=1,1"), symp::InvalidArgument);
    CHECK_THROWS_AS(parse_poly_spec("p=3; h=1"), symp::ParseError);
  }
}
