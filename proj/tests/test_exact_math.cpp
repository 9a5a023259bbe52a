#include "doctest.h"

#include <cmath>

#include "custody/exact_math.hpp"

using namespace custody;

TEST_SUITE("exact_math") {

TEST_CASE("binomials") {
  CHECK(binom(20, 6) == 38760);
  CHECK(binom(5, 0) == 1);
  CHECK(binom(3, 5) == 0);
  CHECK(binom(24, 5) / binom(8, 5) == 759);
  CHECK(binom(1000, 25).get_str() == "47641862536236518640933948075167736642053976275040");
}

TEST_CASE("factorial") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(10) == 3628800);
  CHECK(factorial(20).get_str() == "2432902008176640000");
}

TEST_CASE("hypergeometric pmf") {
  CHECK(hypergeom_pmf({5, 2, 3}, 2) == Rational(3, 10));
  CHECK(hypergeom_pmf({7, 7, 3}, 3) == 1);
  CHECK(hypergeom_pmf({7, 7, 3}, 2) == 0);
  CHECK(hypergeom_pmf({7, 3, 3}, -1) == 0);
  Rational total = 0;
  for (int k = 0; k <= 8; ++k) total += hypergeom_pmf({24, 6, 8}, k);
  CHECK(total == 1);
}

TEST_CASE("hypergeometric tail") {
  CHECK(hypergeom_tail_ge({5, 2, 3}, 2) == Rational(3, 10));
  CHECK(hypergeom_tail_ge({7, 3, 3}, 2) == Rational(13, 35));
  CHECK(hypergeom_tail_ge({7, 3, 3}, 0) == 1);
  CHECK(hypergeom_tail_ge({7, 3, 3}, -4) == 1);
  CHECK(hypergeom_tail_ge({7, 3, 3}, 4) == 0);
  CHECK_THROWS_AS(hypergeom_tail_ge({5, 6, 3}, 1), std::invalid_argument);

  for (std::uint64_t N = 1; N <= 14; ++N)
    for (std::uint64_t K = 0; K <= N; ++K)
      for (std::uint64_t n = 0; n <= N; ++n) {
        Rational sum = 0;
        for (std::int64_t r = static_cast<std::int64_t>(n); r >= 0; --r) {
          sum += hypergeom_pmf({N, K, n}, r);
          REQUIRE(hypergeom_tail_ge({N, K, n}, r) == sum);
        }
        REQUIRE(sum == 1);
      }
}

TEST_CASE("rationals") {
  CHECK(to_fraction_string(Rational(6, 4)) == "3/2");
  CHECK(to_fraction_string(Rational(-4, 2)) == "-2");
  CHECK(parse_rational("2/3") == Rational(2, 3));
  CHECK(parse_rational("4/6") == Rational(2, 3));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("7") == 7);
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));

  CHECK(to_decimal_string(Rational(3701, 175)) == "21.1486");
  CHECK(to_decimal_string(Rational(305, 18)) == "16.9444");
  CHECK(to_decimal_string(Rational(1, 8), 2) == "0.13");
  CHECK(to_decimal_string(Rational(-1, 8), 2) == "-0.13");
  CHECK(to_decimal_string(Rational(-1, 7)) == "-0.1429");
  CHECK(to_decimal_string(Rational(-1, 100000)) == "0.0000");
  CHECK(to_decimal_string(Rational(245, 8)) == "30.6250");

  CHECK(exact_from_double(0.5) == Rational(1, 2));
  CHECK(to_double(Rational(1, 4)) == 0.25);
}

TEST_CASE("kl divergence") {
  CHECK(kl_divergence(0.3, 0.3) == doctest::Approx(0.0));
  CHECK(kl_divergence(0.5, 0.3) == doctest::Approx(0.5 * std::log(1.0 / (4 * 0.3 * 0.7))).epsilon(1e-12));
  CHECK(kl_divergence(0.5, 0.3) == doctest::Approx(0.08721).epsilon(1e-4));
  CHECK(kl_divergence(0.4, 0.2) < kl_divergence(0.4, 0.1));
  CHECK_THROWS_AS(kl_divergence(0.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(kl_divergence(0.5, 1.0), std::domain_error);

  for (int i = 1; i < 20; ++i)
    for (int j = i + 1; j < 20; ++j)
      for (int l = j + 1; l < 20; ++l) {
        const double a = i / 20.0, b = j / 20.0, c = l / 20.0;
        REQUIRE(kl_divergence(a, b) < kl_divergence(a, c));
        REQUIRE(kl_divergence(c, b) < kl_divergence(c, a));
        REQUIRE(kl_divergence(b, a) < kl_divergence(c, a));
        REQUIRE(kl_divergence(b, c) < kl_divergence(a, c));
      }
}

TEST_CASE("tail bound chain") {
  const HypergeomParams p{100, 40, 20};
  const double exact = to_double(hypergeom_tail_ge(p, 12));
  const double kl = hypergeom_tail_upper_bound(p, 0.2);
  CHECK(exact <= kl);
  CHECK(kl <= std::exp(-2 * 20 * 0.04));
  CHECK(hypergeom_tail_upper_bound(p, 1e-9) == doctest::Approx(1.0));
  CHECK_THROWS_AS(hypergeom_tail_upper_bound(p, 0.0), std::domain_error);
  CHECK_THROWS_AS(hypergeom_tail_upper_bound(p, 0.6), std::domain_error);
}

TEST_CASE("robbins bounds") {
  auto [lo1, hi1] = stirling_bounds(1);
  CHECK(lo1 == doctest::Approx(0.922).epsilon(1e-3));
  // e^{1-n} n^{n+1/2} is exactly 1 = 1! at n = 1, so the upper side is only
  // strict from n = 2 on.
  CHECK(hi1 == 1.0);
  CHECK(lo1 < 1.0);
  for (std::uint64_t n = 1; n <= 30; ++n) {
    auto [lo, hi] = stirling_bounds(n);
    const Rational exact(factorial(n));
    REQUIRE(exact_from_double(lo) < exact);
    if (n == 1) {
      REQUIRE(exact <= exact_from_double(hi));
    } else {
      REQUIRE(exact < exact_from_double(hi));
    }
  }
}

TEST_CASE("entropy") {
  CHECK(entropy_xi(0.5) == doctest::Approx(std::log(2.0)));
  CHECK(entropy_xi(0.428) == doctest::Approx(entropy_xi(0.572)));
  CHECK(entropy_xi(0.428) == doctest::Approx(0.6827).epsilon(1e-4));
  CHECK_THROWS_AS(entropy_xi(0.0), std::domain_error);
  CHECK_THROWS_AS(entropy_xi(1.0), std::domain_error);
}

TEST_CASE("union cap bounds the binomial") {
  for (std::uint64_t n = 2; n <= 60; ++n)
    for (std::uint64_t s = 1; s < n; ++s) {
      if (n * s * (n - s) < n * n) continue;  // n g (1-g) >= 1
      REQUIRE(exact_from_double(binomial_union_cap(n, s)) >= Rational(binom(n, s)));
    }
}

}
