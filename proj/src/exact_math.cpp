#include "custody/exact_math.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace custody {

BigNat binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  BigNat out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

BigNat factorial(std::uint64_t n) {
  BigNat out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

std::string to_fraction_string(const Rational& q) {
  Rational c(q);
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

namespace {

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

BigNat pow10(int places) {
  BigNat out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, static_cast<unsigned long>(places));
  return out;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string body = text;
  bool negative = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    negative = body[0] == '-';
    body.erase(0, 1);
  }
  Rational out;
  if (auto slash = body.find('/'); slash != std::string::npos) {
    const std::string num = body.substr(0, slash);
    const std::string den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw std::invalid_argument("malformed fraction: " + text);
    BigNat d(den, 10);
    if (d == 0) throw std::invalid_argument("zero denominator: " + text);
    out = Rational(BigNat(num, 10), d);
    out.canonicalize();
  } else if (auto dot = body.find('.'); dot != std::string::npos) {
    const std::string whole = body.substr(0, dot);
    const std::string frac = body.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac)) {
      throw std::invalid_argument("malformed decimal: " + text);
    }
    out = Rational(BigNat((whole.empty() ? "0" : whole) + frac, 10), pow10(static_cast<int>(frac.size())));
    out.canonicalize();
  } else {
    if (!all_digits(body)) throw std::invalid_argument("malformed number: " + text);
    out = Rational(BigNat(body, 10));
  }
  return negative ? Rational(-out) : out;
}

std::string to_decimal_string(const Rational& q, int places) {
  const bool negative = sgn(q) < 0;
  const Rational scaled = abs(q) * Rational(pow10(places)) + Rational(1, 2);
  BigNat rounded;
  mpz_fdiv_q(rounded.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  std::string digits = rounded.get_str();
  if (places > 0) {
    if (digits.size() <= static_cast<std::size_t>(places)) {
      digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(places), 1, '.');
  }
  if (negative && rounded != 0) digits.insert(0, 1, '-');
  return digits;
}

Rational exact_from_double(double x) {
  if (!std::isfinite(x)) throw std::domain_error("exact_from_double: non-finite value");
  return Rational(x);
}

double to_double(const Rational& q) { return q.get_d(); }

void HypergeomParams::validate() const {
  if (successes > population || draws > population) {
    throw std::invalid_argument("hypergeometric parameters require K <= N and n <= N");
  }
}

Rational hypergeom_pmf(const HypergeomParams& p, std::int64_t k) {
  p.validate();
  if (k < 0) return 0;
  const auto kk = static_cast<std::uint64_t>(k);
  if (kk > p.successes || kk > p.draws || p.draws - kk > p.population - p.successes) return 0;
  Rational out(binom(p.successes, kk) * binom(p.population - p.successes, p.draws - kk),
               binom(p.population, p.draws));
  out.canonicalize();
  return out;
}

Rational hypergeom_tail_ge(const HypergeomParams& p, std::int64_t r) {
  p.validate();
  if (r <= 0) return 1;
  const std::uint64_t hi = std::min(p.successes, p.draws);
  const std::uint64_t failures = p.population - p.successes;
  std::uint64_t lo = static_cast<std::uint64_t>(r);
  if (p.draws > failures) lo = std::max(lo, p.draws - failures);
  if (lo > hi) return 0;
  BigNat favourable = 0;
  for (std::uint64_t j = lo; j <= hi; ++j) {
    favourable += binom(p.successes, j) * binom(failures, p.draws - j);
  }
  Rational out(favourable, binom(p.population, p.draws));
  out.canonicalize();
  return out;
}

double kl_divergence(double a, double b) {
  if (!(a > 0.0 && a < 1.0 && b > 0.0 && b < 1.0)) {
    throw std::domain_error("kl_divergence: arguments must lie strictly inside (0,1)");
  }
  return a * std::log(a / b) + (1.0 - a) * std::log((1.0 - a) / (1.0 - b));
}

double hypergeom_tail_upper_bound(const HypergeomParams& p, double t) {
  p.validate();
  if (p.population == 0) throw std::domain_error("hypergeom_tail_upper_bound: empty population");
  const double base = static_cast<double>(p.successes) / static_cast<double>(p.population);
  if (!(t > 0.0 && t < 1.0 - base)) {
    throw std::domain_error("hypergeom_tail_upper_bound: need 0 < t < 1 - K/N");
  }
  if (base == 0.0) {
    // D(t || 0) diverges; the tail above t*n is empty.
    return 0.0;
  }
  return std::exp(-static_cast<double>(p.draws) * kl_divergence(base + t, base));
}

std::pair<double, double> stirling_bounds(std::uint64_t n) {
  if (n == 0) throw std::domain_error("stirling_bounds: n must be >= 1");
  const double x = static_cast<double>(n);
  const double log_core = (x + 0.5) * std::log(x);
  const double low = std::exp(0.5 * std::log(2.0 * std::numbers::pi) - x + log_core);
  const double high = std::exp(1.0 - x + log_core);
  return {low, high};
}

double entropy_xi(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::domain_error("entropy_xi: gamma must lie in (0,1)");
  return -(gamma * std::log(gamma) + (1.0 - gamma) * std::log1p(-gamma));
}

double binomial_union_cap(std::uint64_t n, std::uint64_t s) {
  if (n == 0 || s == 0 || s >= n) throw std::domain_error("binomial_union_cap: need 0 < s < n");
  const double gamma = static_cast<double>(s) / static_cast<double>(n);
  return std::numbers::e / (2.0 * std::numbers::pi) * std::exp(static_cast<double>(n) * entropy_xi(gamma));
}

}  // namespace custody
