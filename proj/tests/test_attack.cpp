#include "doctest.h"

#include <random>

#include "custody/attack.hpp"
#include "fixtures.hpp"

using namespace custody;

namespace {

// Fano plane labelled so that {0,1,2} is a line.
GroupAssignment fano_012() {
  return GroupAssignment::from_groups(
      7, 3, std::vector<NodeSet>{{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}});
}

void check_greedy_run(const GroupAssignment& a, const ThresholdPolicy& policy, std::uint64_t s,
                      const AttackResult& res) {
  const std::uint64_t n = a.node_count();
  const std::uint64_t m = a.size();
  REQUIRE(res.corrupted_set.size() == s);
  REQUIRE(count_corrupted_groups(a, policy, res.corrupted_set) == res.corrupted_group_count);
  REQUIRE(Rational(BigNat(static_cast<unsigned long>(res.corrupted_group_count))) >= res.guarantee);
  REQUIRE(res.guarantee == kappa(n, s, a.group_size(), policy.r) * BigNat(static_cast<unsigned long>(m)));
  REQUIRE(res.trace.front() == res.guarantee);
  for (std::size_t i = 1; i < res.trace.size(); ++i) REQUIRE(res.trace[i] >= res.trace[i - 1]);
  for (const auto& step : res.steps) {
    const std::uint64_t decided = step.t_size + step.n_size;
    const Rational p_corrupt(BigNat(static_cast<unsigned long>(s - step.t_size)),
                             BigNat(static_cast<unsigned long>(n - decided)));
    const Rational p_honest(BigNat(static_cast<unsigned long>(n - s - step.n_size)),
                            BigNat(static_cast<unsigned long>(n - decided)));
    Rational lhs = p_corrupt * step.if_corrupted + p_honest * step.if_honest;
    lhs.canonicalize();
    REQUIRE(step.before == lhs);
  }
  REQUIRE(res.evaluations <= 4 * a.group_size() * m * n);
}

}  // namespace

TEST_SUITE("attack") {

TEST_CASE("kappa") {
  CHECK(kappa(5, 2, 3, 2) == Rational(3, 10));
  CHECK(kappa(7, 3, 3, 2) == Rational(13, 35));
  CHECK(kappa(7, 3, 3, 2) * 7 == Rational(13, 5));
  for (std::uint64_t r = 1; r <= 4; ++r) CHECK(kappa(9, 9, 4, r) == 1);
  CHECK_THROWS(kappa(5, 6, 3, 2));
  CHECK_THROWS(kappa(5, 2, 3, 0));
}

TEST_CASE("conditional probabilities") {
  const auto fano = fano_012();
  CHECK(verify_design(fano, {2, 7, 3, 1}).ok);
  const auto policy = make_policy(3, Rational(1, 2));
  CHECK(conditional_corruption_probability(fano, policy, 0, {{0}, {1}, 3}) == Rational(2, 5));
  CHECK(conditional_corruption_probability(fano, policy, 0, {{0, 1}, {}, 3}) == 1);
  CHECK(conditional_corruption_probability(fano, policy, 0, {{3, 4, 5}, {}, 3}) == 0);

  const auto toy = fixtures::toy();
  for (std::size_t g = 0; g < toy.size(); ++g)
    CHECK(conditional_corruption_probability(toy, policy, g, {{}, {}, 2}) == kappa(5, 2, 3, 2));
  CHECK(conditional_expectation(toy, policy, {{}, {}, 2}) == 3);
  CHECK_THROWS(conditional_expectation(toy, policy, {{0}, {0}, 2}));
  CHECK_THROWS(conditional_expectation(toy, policy, {{0, 1, 2}, {}, 2}));
}

TEST_CASE("greedy on the worked examples") {
  const auto policy = make_policy(3, Rational(1, 2));
  const auto toy = fixtures::toy();
  const auto t2 = greedy_attack(toy, policy, 2);
  CHECK(t2.corrupted_group_count == 3);
  CHECK(t2.guarantee == 3);
  check_greedy_run(toy, policy, 2, t2);

  const auto fano = fixtures::fano();
  const auto f3 = greedy_attack(fano, policy, 3);
  CHECK(f3.corrupted_group_count >= 3);
  check_greedy_run(fano, policy, 3, f3);

  for (std::uint64_t s : {0u, 7u}) {
    const auto edge = greedy_attack(fano, policy, s);
    CHECK(edge.corrupted_group_count == (s ? 7u : 0u));
    CHECK(edge.evaluations == 0);
  }
  CHECK_THROWS(greedy_attack(build_symmetric(5, 3), policy, 2));
}

TEST_CASE("optimal attack") {
  const auto policy = make_policy(3, Rational(1, 2));
  const auto toy = optimal_attack(fixtures::toy(), policy, 3);
  CHECK(toy.corrupted_group_count == 7);
  CHECK(toy.optimal);
  CHECK(optimal_attack(fixtures::fano(), policy, 2).corrupted_group_count == 1);

  const auto poly = optimal_attack(build_polynomial({5, 2}), make_policy(5, Rational(1, 2)), 6);
  CHECK(poly.corrupted_group_count == 4);
  CHECK(poly.corrupted_set == NodeSet{0, 1, 5, 7, 11, 22});
}

TEST_CASE("greedy guarantee on the corpus") {
  std::vector<std::pair<GroupAssignment, Rational>> corpus = {
      {fixtures::toy(), Rational(1, 2)},
      {fixtures::fano(), Rational(1, 2)},
      {build_projective_plane(3).assignment, Rational(1, 2)},
      {build_polynomial({5, 2}), Rational(1, 2)},
  };
  std::mt19937_64 gen(77);
  for (int i = 0; i < 25; ++i) {
    const std::uint32_t n = 6 + static_cast<std::uint32_t>(gen() % 10);
    const std::uint32_t k = 2 + static_cast<std::uint32_t>(gen() % 5);
    const std::size_t m = 1 + gen() % std::min<std::uint64_t>(120, binom(n, k).get_ui());
    corpus.emplace_back(fixtures::random_assignment(gen, n, k, m), i % 2 ? Rational(2, 3) : Rational(1, 2));
  }
  for (const auto& [a, mu] : corpus) {
    const auto policy = make_policy(a.group_size(), mu);
    for (std::uint64_t s = 0; s <= a.node_count(); ++s) {
      const auto res = greedy_attack(a, policy, s);
      check_greedy_run(a, policy, s, res);
      if (binom(a.node_count(), s) <= 20000) {
        REQUIRE(res.corrupted_group_count <= optimal_attack(a, policy, s).corrupted_group_count);
      }
      const auto literal = greedy_attack(a, policy, s, GreedyRule::average_threshold);
      REQUIRE(Rational(BigNat(static_cast<unsigned long>(literal.corrupted_group_count))) >= literal.guarantee);
      for (const auto& y : literal.trace) REQUIRE(y >= literal.guarantee);
    }
  }
}

TEST_CASE("greedy is thread-count invariant") {
  std::mt19937_64 gen(8);
  const auto a = fixtures::random_assignment(gen, 14, 4, 90);
  const auto policy = make_policy(4, Rational(1, 2));
  const auto one = greedy_attack(a, policy, 6, GreedyRule::conditional_expectation, {1});
  const auto many = greedy_attack(a, policy, 6, GreedyRule::conditional_expectation, {4});
  CHECK(one.corrupted_set == many.corrupted_set);
  CHECK(one.trace == many.trace);
}

}
