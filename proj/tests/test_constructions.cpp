#include "doctest.h"

#include <algorithm>
#include <set>

#include "custody/constructions.hpp"
#include "fixtures.hpp"

using namespace custody;

namespace {

std::size_t overlap(std::span<const NodeId> a, std::span<const NodeId> b) {
  std::size_t count = 0;
  for (NodeId v : a) count += std::binary_search(b.begin(), b.end(), v) ? 1 : 0;
  return count;
}

}  // namespace

TEST_SUITE("constructions") {

TEST_CASE("symmetric family") {
  CHECK(build_symmetric(20, 6).group_count() == 38760);
  CHECK(build_symmetric(7, 7).group_count() == 1);
  const auto toy = materialize(build_symmetric(5, 3));
  REQUIRE(toy.size() == 10);
  CHECK(NodeSet(toy.group(0).begin(), toy.group(0).end()) == NodeSet{0, 1, 2});
  CHECK(NodeSet(toy.group(9).begin(), toy.group(9).end()) == NodeSet{2, 3, 4});
  CHECK(materialize(build_symmetric(4, 4)).size() == 1);
  CHECK(materialize(build_symmetric(6, 2)).size() == 15);
  CHECK_THROWS_AS(materialize(build_symmetric(40, 20)), CapExceeded);

  for (std::uint32_t n = 1; n <= 9; ++n)
    for (std::uint32_t k = 1; k <= n; ++k) {
      const auto a = materialize(build_symmetric(n, k));
      std::set<NodeSet> distinct;
      for (std::size_t g = 0; g < a.size(); ++g) distinct.emplace(a.group(g).begin(), a.group(g).end());
      REQUIRE(BigNat(static_cast<unsigned long>(distinct.size())) == binom(n, k));
    }
}

TEST_CASE("polynomial design") {
  const auto p73 = build_polynomial({7, 3});
  CHECK(p73.node_count() == 49);
  CHECK(p73.size() == 343);
  CHECK(p73.group_size() == 7);
  CHECK(PolynomialParams{11, 5}.group_count() == 161051);
  CHECK(PolynomialParams{11, 5}.nu() == Rational(5, 11));
  CHECK_THROWS_AS(build_polynomial({6, 2}), std::invalid_argument);
  CHECK_THROWS_AS(build_polynomial({5, 5}), std::invalid_argument);
  CHECK_THROWS_AS(build_polynomial({5, 0}), std::invalid_argument);

  // x^2 + 1 over Z/5: (0,1) (1,2) (2,0) (3,0) (4,2); index 1 has c0 = 1, c1 = 0.
  const auto p52 = build_polynomial({5, 2});
  CHECK(NodeSet(p52.group(1).begin(), p52.group(1).end()) == NodeSet{1, 7, 10, 15, 22});
  CHECK(p52.label(1) == "poly:1,0");
  std::string label;
  CHECK(polynomial_group({5, 2}, 1, &label) == NodeSet{1, 7, 10, 15, 22});
  CHECK(label == "poly:1,0");
  CHECK_THROWS(polynomial_group({5, 2}, 25));

  for (const PolynomialParams params : {PolynomialParams{5, 2}, PolynomialParams{7, 3}, PolynomialParams{11, 2},
                                        PolynomialParams{11, 3}, PolynomialParams{5, 1}}) {
    const auto a = build_polynomial(params);
    for (std::size_t g = 0; g < a.size(); ++g) {
      auto row = a.group(g);
      for (std::uint32_t x = 0; x < params.k; ++x) REQUIRE(row[x] / params.k == x);
      for (std::size_t h = g + 1; h < a.size(); ++h) REQUIRE(overlap(row, a.group(h)) + 1 <= params.d);
    }
  }
}

TEST_CASE("projective planes verify") {
  for (std::uint32_t q : {2u, 3u, 5u, 7u}) {
    const auto built = build_projective_plane(q);
    CHECK(built.assignment.size() == q * q + q + 1);
    CHECK(built.spec.n == q * q + q + 1);
    CHECK(built.spec.k == q + 1);
    CHECK(verify_design(built.assignment, built.spec).ok);
  }
  CHECK_THROWS_AS(build_projective_plane(4), std::invalid_argument);
}

TEST_CASE("witt design") {
  const auto witt = build_witt_24();
  CHECK(witt.assignment.size() == 759);
  CHECK(witt.spec.strength == 5);
  const auto result = verify_design(witt.assignment, witt.spec);
  CHECK(result.ok);
  CHECK_FALSE(result.witness.has_value());
  const auto derived = derived_design_params(witt.spec, 2);
  CHECK(derived.m == 759);
  CHECK(derived.lambda_t == 77);
  CHECK(derived_design_params(witt.spec, 5).lambda_t == 1);
}

TEST_CASE("broken designs give the first witness") {
  const auto fano = fixtures::fano();
  std::vector<NodeSet> rows;
  for (std::size_t g = 1; g < fano.size(); ++g) rows.emplace_back(fano.group(g).begin(), fano.group(g).end());
  const auto missing = GroupAssignment::from_groups(7, 3, rows);
  const auto result = verify_design(missing, {2, 7, 3, 1});
  CHECK_FALSE(result.ok);
  REQUIRE(result.witness.has_value());
  CHECK(*result.witness == NodeSet{4, 5});
  CHECK(result.witness_count == 0);
  CHECK_FALSE(verify_design(fano, {2, 7, 3, 2}).ok);
  CHECK_THROWS_AS(verify_design(build_witt_24().assignment, {5, 24, 8, 1}, 1000), CapExceeded);
}

TEST_CASE("derived parameters") {
  CHECK(derived_design_params({2, 7, 3, 1}, 1).lambda_t == 3);
  CHECK(derived_design_params({2, 7, 3, 1}, 2).lambda_t == 1);
  CHECK(derived_design_params({2, 13, 4, 1}, 1).m == 13);
  CHECK_THROWS_AS(derived_design_params({2, 8, 3, 1}, 1), std::invalid_argument);
  CHECK_THROWS_AS(derived_design_params({2, 7, 3, 1}, 3), std::invalid_argument);
}

TEST_CASE("restriction yields a smaller design") {
  const auto fano = fixtures::fano();
  const DesignSpec spec{2, 7, 3, 1};
  for (NodeId v = 0; v < 7; ++v) {
    const auto restricted = restrict_design(fano, spec, {v});
    CHECK(restricted.spec.strength == 1);
    CHECK(restricted.assignment.size() == 3);
    CHECK(verify_design(restricted.assignment, restricted.spec).ok);
  }
  const auto witt = build_witt_24();
  const auto r2 = restrict_design(witt.assignment, witt.spec, {0, 1});
  CHECK(r2.assignment.size() == 77);
  CHECK(verify_design(r2.assignment, r2.spec).ok);
  CHECK_THROWS(restrict_design(fano, spec, {0, 1}));
}

TEST_CASE("primes") {
  CHECK(is_prime(2));
  CHECK(is_prime(31));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(49));
}

}
