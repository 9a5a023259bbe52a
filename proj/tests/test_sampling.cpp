#include "doctest.h"

#include <cmath>
#include <numbers>
#include <set>

#include "custody/analysis.hpp"
#include "custody/rng.hpp"
#include "custody/sampling.hpp"
#include "fixtures.hpp"

using namespace custody;

namespace {

std::set<NodeSet> rows_of(const GroupAssignment& a) {
  std::set<NodeSet> out;
  for (std::size_t g = 0; g < a.size(); ++g) out.emplace(a.group(g).begin(), a.group(g).end());
  return out;
}

}  // namespace

TEST_SUITE("sampling") {

TEST_CASE("generator is the standard mt19937_64") {
  Rng rng(5489);
  std::uint64_t x = 0;
  for (int i = 0; i < 10000; ++i) x = rng.next();
  CHECK(x == 9981545732273789042ULL);
  Rng bounded(1);
  for (int i = 0; i < 1000; ++i) REQUIRE(bounded.uniform_below(7) < 7);
  CHECK_THROWS(bounded.uniform_below(0));
  CHECK(derive_stream(1, 0) != derive_stream(1, 1));
  CHECK(derive_stream(1, 0) != derive_stream(2, 0));
  CHECK(derive_stream(9, 4) == derive_stream(9, 4));
}

TEST_CASE("explicit sources") {
  const auto fano = fixtures::fano();
  CHECK(rows_of(sample_assignment(fano, 7, 3)) == rows_of(fano));
  const auto one = sample_assignment(fano, 1, 42);
  REQUIRE(one.size() == 1);
  CHECK(rows_of(fano).count(*rows_of(one).begin()) == 1);
  CHECK(one.has_labels());
  CHECK_THROWS_AS(sample_assignment(fano, 8, 1), std::invalid_argument);

  const auto poly = build_polynomial({7, 3});
  const auto a = sample_assignment(poly, 50, 99);
  const auto b = sample_assignment(poly, 50, 99);
  REQUIRE(a.size() == 50);
  CHECK(std::equal(a.members().begin(), a.members().end(), b.members().begin(), b.members().end()));
  const auto all = rows_of(poly);
  for (const auto& row : rows_of(a)) REQUIRE(all.count(row) == 1);
}

TEST_CASE("implicit sources") {
  const auto big = build_symmetric(1000, 25);
  const auto a = sample_assignment(big, 100, 1);
  const auto b = sample_assignment(big, 100, 2);
  for (const auto* s : {&a, &b}) {
    REQUIRE(s->size() == 100);
    REQUIRE(rows_of(*s).size() == 100);
    for (std::size_t g = 0; g < s->size(); ++g) {
      auto row = s->group(g);
      REQUIRE(row.size() == 25);
      REQUIRE(std::adjacent_find(row.begin(), row.end(), std::greater_equal<>()) == row.end());
      REQUIRE(row.back() < 1000);
    }
  }
  CHECK(rows_of(a) != rows_of(b));
  const auto again = sample_assignment(big, 100, 1);
  CHECK(std::equal(a.members().begin(), a.members().end(), again.members().begin(), again.members().end()));

  // Dense requests fall back to index sampling over the listed family.
  const auto dense = sample_assignment(build_symmetric(8, 3), 50, 5);
  CHECK(rows_of(dense).size() == 50);
  CHECK(sample_assignment(build_symmetric(8, 3), 56, 5).size() == 56);
}

TEST_CASE("polynomial sampling without materializing") {
  const PolynomialParams params{31, 12};
  const auto a = sample_polynomial(params, 200, 17);
  CHECK(a.size() == 200);
  CHECK(a.node_count() == 961);
  CHECK(rows_of(a).size() == 200);
  for (std::size_t g = 0; g < a.size(); ++g) {
    const auto& label = a.label(g);
    REQUIRE(label.rfind("poly:", 0) == 0);
    auto row = a.group(g);
    for (std::uint32_t x = 0; x < 31; ++x) REQUIRE(row[x] / 31 == x);
  }
  const auto small = sample_polynomial({5, 2}, 25, 3);
  CHECK(rows_of(small) == rows_of(build_polynomial({5, 2})));
}

TEST_CASE("header") {
  const auto h = sampled_header("symmetric:1000,25", 7, 100);
  REQUIRE(h.size() == 2);
  CHECK(h[0] == "sampled-from:symmetric:1000,25 seed:7 m_prime:100");
  CHECK(h[1] == std::string("rng:") + kRngAlgorithm);
}

TEST_CASE("example 4 bounds") {
  const auto policy = make_policy(25, Rational(2, 3));
  const auto at428 = analyze_symmetric(1000, 25, policy, 428);
  CHECK(at428.eta.decimal_string().substr(0, 6) == "46.594");
  const auto b1 = sampled_eta_bound(1000, at428.m, at428.eta, at428.gamma, 88695);
  REQUIRE(b1.applicable);
  CHECK(b1.eta_prime_bound >= 5.0);
  CHECK(b1.eta_prime_bound == doctest::Approx(5.0255).epsilon(1e-4));
  CHECK(std::abs(b1.success_probability_bound - 0.5674) < 1e-4);
  CHECK(b1.success_probability_bound == doctest::Approx(1 - std::numbers::e / (2 * std::numbers::pi)));

  const auto at388 = analyze_symmetric(1000, 25, policy, 388);
  const auto b2 = sampled_eta_bound(1000, at388.m, at388.eta, at388.gamma, 323825);
  CHECK(b2.eta_prime_bound >= 10.0);
}

TEST_CASE("example 5 bounds") {
  const PolynomialParams params{31, 12};
  const auto policy = make_policy(31, Rational(2, 3));
  const auto r1 = analyze_poly_bound(params, policy, 314);
  CHECK(sampled_eta_bound(961, r1.m, r1.eta, r1.gamma, 138767).eta_prime_bound >= 5.0);
  const auto r2 = analyze_poly_bound(params, policy, 285);
  CHECK(sampled_eta_bound(961, r2.m, r2.eta, r2.gamma, 481017).eta_prime_bound >= 10.0);
}

TEST_CASE("bound shape") {
  const BigNat m = binom(30, 6);
  const Eta eta{false, Rational(9), BoundKind::exact};
  double prev = -1e9;
  for (std::uint64_t mp = 100; mp <= 500000; mp *= 2) {
    const double v = sampled_eta_bound(30, m, eta, Rational(1, 3), mp).eta_prime_bound;
    REQUIRE(v > prev);
    prev = v;
  }
  prev = 1e9;
  for (double c = 0; c <= 2.0; c += 0.25) {
    const auto rep = sampled_eta_bound(30, m, eta, Rational(1, 3), 5000, c);
    REQUIRE(rep.eta_prime_bound < prev);
    REQUIRE(rep.success_probability_bound <= 1.0);  // rounds to 1 once c n xi is large
    prev = rep.eta_prime_bound;
  }
  const Eta inf{true, Rational(0), BoundKind::exact};
  const double limit = sampled_eta_bound(30, m, inf, Rational(1, 3), 5000).eta_prime_bound;
  CHECK(limit > sampled_eta_bound(30, m, Eta{false, Rational(1000000), BoundKind::exact}, Rational(1, 3), 5000)
                    .eta_prime_bound);
  CHECK_FALSE(sampled_eta_bound(3, 3, eta, Rational(1, 3), 2).applicable);
}

TEST_CASE("sampling plans") {
  const auto plan = plan_by_count(1000, binom(1000, 25), Rational(107, 250), 88695, 0.0, 7);
  CHECK(plan.m_prime == 88695);
  CHECK(plan.xi == doctest::Approx(entropy_xi(0.428)));
  CHECK(plan.delta == doctest::Approx(std::sqrt(1000 * plan.xi / (2.0 * 88695))));
  const auto rate = plan_by_rate(10, 100, Rational(1, 2), Rational(1, 3), 0.5, 1);
  CHECK(rate.m_prime == 33);
  CHECK(rate.beta.has_value());
  CHECK_THROWS(plan_by_rate(10, 100, Rational(1, 2), Rational(1, 1000), 0.0, 1));
  CHECK_THROWS(plan_by_count(10, 100, Rational(1, 2), 101, 0.0, 1));
}

TEST_CASE("corollary") {
  CHECK(corollary_sample_size(100, Rational(3), Rational(1, 2)) == 1110);
  CHECK(corollary_sample_size(100, Rational(0), Rational(1, 2)) ==
        BigNat(std::ceil(100 * std::log(2.0) / 0.25)));
  CHECK(corollary_eta_prime(Rational(3)) == doctest::Approx(0.0));
  CHECK(corollary_eta_prime(Rational(2)) < 0);
  CHECK(corollary_eta_prime(Rational(8)) == doctest::Approx(1.0));
}

TEST_CASE("empirical validation") {
  const auto source = build_symmetric(12, 4);
  const auto policy = make_policy(4, Rational(2, 3));
  const auto v = empirical_sample_validation(source, policy, 4, 200, 12, 2024);
  CHECK(v.trials == 12);
  CHECK(v.passed);
  const auto again = empirical_sample_validation(source, policy, 4, 200, 12, 2024, 0.0, {1});
  CHECK(again.successes == v.successes);

  // Sampling every group reproduces eta exactly, which always meets the bound.
  const auto full = empirical_sample_validation(materialize(source), policy, 4, 495, 4, 1);
  CHECK(full.successes == 4);

  const auto zero = sample_assignment(source, 30, 3);
  CHECK(analyze_bruteforce(zero, policy, 0).eta.infinite);
}

}
