#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "symp/haar_oracle.hpp"
#include "symp/linstat.hpp"
#include "symp/moments.hpp"

using symp::BigInt;
using symp::BigRational;
using symp::FourierTestFn;
using symp::Partition;

TEST_SUITE("linstat") {
  TEST_CASE("rational parsing") {
    CHECK(symp::parse_rational("0.5") == BigRational(1, 2));
    CHECK(symp::parse_rational("-1.25") == BigRational(-5, 4));
    CHECK(symp::parse_rational("2") == 2);
    CHECK(symp::parse_rational("1e-3") == BigRational(1, 1000));
    CHECK(symp::parse_rational("2.5E2") == 250);
    CHECK(symp::parse_rational(".5") == BigRational(1, 2));
    CHECK(symp::parse_rational("3/6") == BigRational(1, 2));
    CHECK(symp::parse_rational("-1/3") == BigRational(-1, 3));
    // leading zeros are decimal, not an octal prefix
    CHECK(symp::parse_rational("0.25") == BigRational(1, 4));
    CHECK(symp::parse_rational("-0.0625") == BigRational(-1, 16));
    CHECK(symp::parse_rational("007/010") == BigRational(7, 10));
    CHECK(symp::parse_rational("0.0") == 0);
    CHECK(symp::parse_rational("08") == 8);
    for (const char* bad : {"", ".", "1/0", "abc", "1.2.3", "1e", "--1"})
      CHECK_THROWS_AS(symp::parse_rational(bad), symp::ParseError);
  }

  TEST_CASE("Fourier tables") {
    const auto f = symp::parse_fourier("0:1.0 1:0.5");
    CHECK(f.coefficient(0) == 1);
    CHECK(f.coefficient(1) == BigRational(1, 2));
    CHECK(f.coefficient(-1) == BigRational(1, 2));
    CHECK(f.coefficient(2) == 0);
    CHECK(f.support() == std::vector<int>{-1, 0, 1});
    CHECK(f.bandwidth() == 1);
    CHECK(symp::format_fourier(f) == "0:1 1:1/2");
    CHECK(symp::parse_fourier(symp::format_fourier(f)).half_table() == f.half_table());

    CHECK(symp::parse_fourier("-2:0.25").coefficient(2) == BigRational(1, 4));
    CHECK(symp::parse_fourier("2:1/4 -2:0.25").coefficient(-2) == BigRational(1, 4));
    CHECK(symp::parse_fourier("").is_zero());
    CHECK_THROWS_AS(symp::parse_fourier("1:0.5 -1:0.4"), symp::ParseError);
    CHECK_THROWS_AS(symp::parse_fourier("1=0.5"), symp::ParseError);
    CHECK_THROWS_AS(symp::parse_fourier("a:1"), symp::ParseError);
    CHECK_THROWS_AS(symp::parse_fourier(":1"), symp::ParseError);
  }

  TEST_CASE("L2 norm") {
    CHECK(symp::l2_norm(FourierTestFn{}) == 0.0);
    CHECK(symp::l2_norm(symp::parse_fourier("0:1")) == doctest::Approx(1.0));
    CHECK(symp::l2_norm(symp::parse_fourier("1:0.5")) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(symp::l2_norm_squared(symp::parse_fourier("0:1 1:1/2")) == BigRational(3, 2));
    // Parseval against a Riemann sum of f^2 (exact for trigonometric polynomials)
    const auto f = symp::parse_fourier("0:0.3 1:-0.7 3:1.1");
    double s = 0.0;
    const int m = 64;
    for (int i = 0; i < m; ++i) s += f(static_cast<double>(i) / m) * f(static_cast<double>(i) / m);
    CHECK(s / m == doctest::Approx(symp::l2_norm_squared(f).convert_to<double>()));
  }

  TEST_CASE("W statistic") {
    std::mt19937_64 rng(8);
    symp::HaarUspSampler sampler(6);
    const auto one = symp::parse_fourier("0:1");
    const auto f = symp::parse_fourier("0:1 1:0.5 2:-0.25");
    for (int t = 0; t < 50; ++t) {
      const auto e = sampler(rng);
      CHECK(symp::w_statistic(FourierTestFn{}, 4, e) == 0.0);
      CHECK(symp::w_statistic(one, 5, e) == doctest::Approx(symp::trace_power(e, 5)));
      const auto z = symp::w_statistic_complex(f, 7, e);
      CHECK(std::fabs(z.imag()) <= 1e-12);
      CHECK(z.real() == doctest::Approx(symp::w_statistic(f, 7, e)));
      // W = sum_j fhat(j) tr(U^{j+nu})
      const double expanded = symp::trace_power(e, 7) + 0.5 * (symp::trace_power(e, 6) + symp::trace_power(e, 8)) -
                              0.25 * (symp::trace_power(e, 5) + symp::trace_power(e, 9));
      CHECK(symp::w_statistic(f, 7, e) == doctest::Approx(expanded));
    }
  }

  TEST_CASE("exact moments: single frequency") {
    const auto one = symp::parse_fourier("0:1");
    for (int n : {3, 7})
      for (int nu = 1; nu <= 2 * n - 1; ++nu)
        CHECK(symp::w_moment_exact(n, nu, 2, one) == BigRational(symp::moment_usp(n, Partition{{nu, 2}})));
    CHECK(symp::w_moment_exact(1, 2, 2, one) == 2);
    CHECK(symp::w_moment_exact(30, 30, 2, one) == 31);
    CHECK(symp::w_moment_exact(30, 30, 4, one) == 2876);
    CHECK(symp::w_moment_exact(5, 3, 0, one) == 1);
    CHECK(symp::w_moment_exact(5, 3, 3, FourierTestFn{}) == 0);
  }

  TEST_CASE("exact moments: second moment expansion") {
    const auto f = symp::parse_fourier("0:1 1:1/2");
    const int n = 20, nu = 10;
    BigRational expected = 0;
    const std::vector<std::pair<int, BigRational>> terms{{9, BigRational(1, 2)}, {10, 1}, {11, BigRational(1, 2)}};
    for (auto [j, a] : terms)
      for (auto [k, b] : terms) {
        Partition p;
        p.add(j);
        p.add(k);
        expected += a * b * BigRational(symp::moment_usp(n, p));
      }
    CHECK(symp::w_moment_exact(n, nu, 2, f) == expected);
  }

  TEST_CASE("exact moments: folding of non-positive trace indices") {
    // nu = 1 with bandwidth 2 touches tr(U^0) = 2n and tr(U^-1) = tr(U)
    const auto f = symp::parse_fourier("1:1 2:1/3");
    for (int m = 1; m <= 4; ++m) CHECK(symp::w_moment_exact(4, 1, m, f) == symp::w_moment_exact_serial(4, 1, m, f));
    // m = 1: E[W] = sum_j fhat(j) E tr(U^{j+1}); j = -1 gives 2n = 8
    const BigRational mean = BigRational(1, 3) * BigRational(symp::moment_usp(4, Partition{{1, 1}})) + 8 +
                             BigRational(symp::moment_usp(4, Partition{{2, 1}})) +
                             BigRational(1, 3) * BigRational(symp::moment_usp(4, Partition{{3, 1}}));
    CHECK(symp::w_moment_exact(4, 1, 1, f) == mean);
  }

  TEST_CASE("exact moments: parallel equals serial") {
    const auto f = symp::parse_fourier("0:1 1:1/2 2:-1/5");
    for (int m = 1; m <= 5; ++m)
      CHECK(symp::w_moment_exact(20, 10, m, f) == symp::w_moment_exact_serial(20, 10, m, f));
  }

  TEST_CASE("exact moments: range errors name the multi-index") {
    const auto f = symp::parse_fourier("0:1 1:1/2");
    // m (nu + J) = 2 * 5 = 10 > 4n+1 = 9
    try {
      (void)symp::w_moment_exact(2, 4, 2, f);
      FAIL("expected OutOfRange");
    } catch (const symp::OutOfRange& e) {
      CHECK(std::string(e.what()).find("(5,5)") != std::string::npos);
    }
    CHECK_NOTHROW((void)symp::w_moment_exact(2, 3, 2, f));
    CHECK_THROWS_AS((void)symp::w_moment_exact_serial(2, 4, 2, f), symp::OutOfRange);
  }

  TEST_CASE("Gaussian prediction") {
    const auto f = symp::parse_fourier("0:1 1:1/2");
    CHECK(symp::w_moment_gaussian_prediction(20, 10, 3, f) == 0.0);
    CHECK(symp::w_moment_gaussian_prediction(20, 10, 2, f) == doctest::Approx(15.0));
    CHECK(symp::w_moment_gaussian_prediction(20, 10, 4, f) == doctest::Approx(3 * 15.0 * 15.0));
    CHECK(symp::w_moment_gaussian_prediction(20, 10, 0, f) == 1.0);
  }

  TEST_CASE("exact and predicted moments differ by a lower-order amount") {
    const auto f = symp::parse_fourier("0:1 1:1/2 2:1/4");
    // one constant per moment order, fitted once on this f and frozen
    const std::map<int, double> fitted_c{{2, 1.0}, {3, 5.0}, {4, 3.5}};
    for (auto [m, c] : fitted_c)
      for (int n : {20, 40, 80}) {
        const int nu = n / 2;
        const double gap = std::fabs(symp::w_moment_exact(n, nu, m, f).convert_to<double>() -
                                     symp::w_moment_gaussian_prediction(n, nu, m, f));
        CHECK_MESSAGE(gap <= c * std::pow(n, (m - 1) / 2.0), "m=", m, " n=", n, " gap=", gap);
      }
  }

  TEST_CASE("narrow-band main term") {
    CHECK(symp::narrow_band_main_term(30, 30, Partition{{29, 1}, {30, 2}}) == 0);
    CHECK(symp::narrow_band_main_term(30, 30, Partition{{30, 2}}) == 30);
    CHECK(symp::narrow_band_main_term(30, 25, Partition{{25, 4}}) == 3 * 25 * 25);
    CHECK(symp::narrow_band_main_term(30, 30, Partition{}) == 1);
    CHECK_THROWS_AS(symp::narrow_band_main_term(30, 30, Partition{{20, 2}}), symp::PreconditionViolated);
    CHECK_THROWS_AS(symp::narrow_band_main_term(3, 3, Partition{{3, 5}}), symp::PreconditionViolated);
  }

  TEST_CASE("narrow-band main term tracks the exact moments") {
    const double fitted_c = 1.5;
    for (int n = 20; n <= 160; n += 20) {
      const int nu = n;
      for (const auto& a : {Partition{{nu, 2}}, Partition{{nu, 4}}, Partition{{nu - 1, 1}, {nu + 1, 1}}}) {
        const BigInt gap = symp::moment_usp(n, a) - symp::narrow_band_main_term(n, nu, a);
        const double bound = fitted_c * std::pow(n, (symp::length(a) - 1) / 2.0);
        CHECK_MESSAGE(std::fabs(gap.convert_to<double>()) <= bound, "n=", n, " a=", symp::format_partition(a));
      }
    }
  }

  TEST_CASE("Monte Carlo first moment stays bounded") {
    const auto f = symp::parse_fourier("0:1 1:1/2");
    symp::MCConfig cfg;
    cfg.sample_count = 50000;
    for (int nu : {3, 8, 12}) {
      const auto est = symp::w_moment_mc(6, nu, 1, f, cfg);
      const double allowance = f.coefficient_double(-nu) * 12 + 1;
      CHECK(std::fabs(est.estimate) <= allowance + 4 * est.std_error);
      const double exact = symp::w_moment_exact(6, nu, 1, f).convert_to<double>();
      CHECK(std::fabs(est.estimate - exact) <= 5 * est.std_error);
    }
  }

  TEST_CASE("Monte Carlo agrees with the exact expansion") {
    const auto f = symp::parse_fourier("0:1 1:1/2");
    symp::MCConfig cfg;
    cfg.sample_count = 100000;
    cfg.rng_seed = 4;
    for (int m : {2, 3, 4}) {
      const auto est = symp::w_moment_mc(12, 6, m, f, cfg);
      const double exact = symp::w_moment_exact(12, 6, m, f).convert_to<double>();
      CHECK_MESSAGE(std::fabs(est.estimate - exact) <= 5 * est.std_error, "m=", m, " est=", est.estimate,
                    " exact=", exact);
    }
  }
}
