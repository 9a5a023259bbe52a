#pragma once

#include <cstdint>
#include <vector>

#include "custody/analysis.hpp"
#include "custody/assignment.hpp"
#include "custody/kernels.hpp"

namespace custody {

/// Pr[H(n, s, k) >= r]: chance that a fixed k-group holds r or more of a
/// uniformly random s-set.
Rational kappa(std::uint64_t n, std::uint64_t s, std::uint64_t k, std::uint64_t r);

/// Partial decision of the greedy adversary: T corrupted, N honest, budget s.
struct AttackState {
  NodeSet corrupted;
  NodeSet honest;
  std::uint64_t s = 0;
};

/// Probability that group g ends up corrupted when the remaining s - |T|
/// corruptions fall uniformly on the undecided nodes.
Rational conditional_corruption_probability(const GroupAssignment& a, const ThresholdPolicy& policy,
                                            std::size_t g, const AttackState& state);

/// Expected corrupted-group count under `state`.
Rational conditional_expectation(const GroupAssignment& a, const ThresholdPolicy& policy, const AttackState& state,
                                 kernels::Parallelism par = {});

enum class GreedyRule {
  /// Corrupt node i when doing so does not lower the conditional expectation.
  conditional_expectation,
  /// Corrupt node i when the expectation with i corrupted reaches kappa m.
  average_threshold,
};

struct GreedyStep {
  NodeId node = 0;
  /// E[X | T, N] before the decision.
  Rational before;
  /// E[X | T + i, N] and E[X | T, N + i].
  Rational if_corrupted;
  Rational if_honest;
  bool corrupted = false;
  /// |T| and |N| before the decision.
  std::uint64_t t_size = 0;
  std::uint64_t n_size = 0;
};

struct AttackResult {
  NodeSet corrupted_set;
  std::uint64_t corrupted_group_count = 0;
  /// kappa m, the average over uniformly random s-sets.
  Rational guarantee;
  bool optimal = false;
  /// Y_0 = kappa m, then the expectation after each decision.
  std::vector<Rational> trace;
  std::vector<GreedyStep> steps;
  /// Group-probability evaluations, m per expectation.
  std::uint64_t evaluations = 0;
};

/// Derandomized greedy over nodes 0..n-1 in order.  Returns once s nodes are
/// corrupted or n - s are honest.
AttackResult greedy_attack(const GroupAssignment& a, const ThresholdPolicy& policy, std::uint64_t s,
                           GreedyRule rule = GreedyRule::conditional_expectation, kernels::Parallelism par = {});

/// Exhaustive optimum via f_bruteforce.
AttackResult optimal_attack(const GroupAssignment& a, const ThresholdPolicy& policy, std::uint64_t s,
                            std::uint64_t cap = kDefaultBruteForceCap, kernels::Parallelism par = {});

}  // namespace custody
