#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include <gmpxx.h>

namespace custody {

/// Arbitrary-precision non-negative integer.
using BigNat = mpz_class;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator (gmp canonicalizes after every arithmetic operation).
using Rational = mpq_class;

/// Exact binomial coefficient; zero when k > n.
BigNat binom(std::uint64_t n, std::uint64_t k);

BigNat factorial(std::uint64_t n);

/// "num/den" (or "num" when the denominator is 1).
std::string to_fraction_string(const Rational& q);

/// Parses "p/q", "p" or a terminating decimal such as "0.25" into an exact value.
Rational parse_rational(const std::string& text);

/// Rounds to `places` decimals, half away from zero, using exact arithmetic.
std::string to_decimal_string(const Rational& q, int places = 4);

/// Exact rational image of a finite double (no rounding).
Rational exact_from_double(double x);

double to_double(const Rational& q);

struct HypergeomParams {
  std::uint64_t population = 0;  // N
  std::uint64_t successes = 0;   // K
  std::uint64_t draws = 0;       // n

  /// Throws std::invalid_argument unless K <= N and n <= N.
  void validate() const;
};

/// Pr[H(N,K,n) = k], exact.  Zero outside the support.
Rational hypergeom_pmf(const HypergeomParams& p, std::int64_t k);

/// Pr[H(N,K,n) >= r], exact.  One for r <= 0.
Rational hypergeom_tail_ge(const HypergeomParams& p, std::int64_t r);

/// D(a || b) for Bernoulli parameters a, b in (0,1), natural log.
double kl_divergence(double a, double b);

/// exp(-n * D(K/N + t || K/N)); requires 0 < t < 1 - K/N.
double hypergeom_tail_upper_bound(const HypergeomParams& p, double t);

/// Robbins' two-sided estimate: sqrt(2 pi) e^{-n} n^{n+1/2} < n! < e^{1-n} n^{n+1/2}.
std::pair<double, double> stirling_bounds(std::uint64_t n);

/// Binary entropy in nats: -(g ln g + (1-g) ln(1-g)), g in (0,1).
double entropy_xi(double gamma);

/// (e / 2 pi) * (g^{-g} (1-g)^{-(1-g)})^n, the Stirling-based cap on C(n, g n)
/// used by the sampling union bound.  Valid when n g (1-g) >= 1.
double binomial_union_cap(std::uint64_t n, std::uint64_t s);

}  // namespace custody
