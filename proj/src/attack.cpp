#include "custody/attack.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace custody {
namespace {

Rational group_probability(std::uint64_t undecided, std::uint64_t budget, std::uint32_t k, std::uint32_t r,
                           std::uint32_t a, std::uint32_t b) {
  if (a >= r) return Rational(1);
  const std::uint32_t need = r - a;
  const std::uint32_t open = k - a - b;
  if (budget < need || open < need) return Rational(0);
  return hypergeom_tail_ge({undecided, budget, open}, need);
}

enum class Probe { none, corrupt, honest };

// Expected corrupted groups with the probe node assigned as `probe` on top of
// the state summarized by the tally.
Rational expectation(const kernels::GroupTally& tally, std::uint32_t n, std::uint32_t r, std::uint64_t s,
                     std::uint64_t t_size, std::uint64_t n_size, Probe probe) {
  const std::uint32_t k = tally.k;
  const std::uint64_t t_after = t_size + (probe == Probe::corrupt ? 1 : 0);
  const std::uint64_t n_after = n_size + (probe == Probe::honest ? 1 : 0);
  const std::uint64_t undecided = n - t_after - n_after;
  const std::uint64_t budget = s - t_after;
  std::map<std::pair<std::uint32_t, std::uint32_t>, Rational> memo;
  Rational total = 0;
  for (std::uint32_t a = 0; a <= k; ++a) {
    for (std::uint32_t b = 0; a + b <= k; ++b) {
      for (bool hit : {false, true}) {
        const std::uint64_t count = tally.at(a, b, hit);
        if (count == 0) continue;
        const std::uint32_t a2 = a + (hit && probe == Probe::corrupt ? 1 : 0);
        const std::uint32_t b2 = b + (hit && probe == Probe::honest ? 1 : 0);
        auto [it, fresh] = memo.try_emplace({a2, b2});
        if (fresh) it->second = group_probability(undecided, budget, k, r, a2, b2);
        total += it->second * BigNat(static_cast<unsigned long>(count));
      }
    }
  }
  return total;
}

std::vector<kernels::NodeStatus> status_of(std::uint32_t n, const AttackState& state) {
  std::vector<kernels::NodeStatus> status(n, kernels::NodeStatus::undecided);
  for (NodeId v : state.corrupted) status.at(v) = kernels::NodeStatus::corrupted;
  for (NodeId v : state.honest) {
    if (status.at(v) != kernels::NodeStatus::undecided) throw std::invalid_argument("attack state: T and N overlap");
    status[v] = kernels::NodeStatus::honest;
  }
  return status;
}

void check_state(std::uint32_t n, const AttackState& state) {
  if (state.s > n) throw std::invalid_argument("attack state: s exceeds n");
  if (state.corrupted.size() > state.s) throw std::invalid_argument("attack state: |T| exceeds s");
  if (state.honest.size() > n - state.s) throw std::invalid_argument("attack state: |N| exceeds n - s");
}

}  // namespace

Rational kappa(std::uint64_t n, std::uint64_t s, std::uint64_t k, std::uint64_t r) {
  if (s > n || k > n || r < 1 || r > k) throw std::domain_error("kappa: need s <= n and 1 <= r <= k <= n");
  return hypergeom_tail_ge({n, s, k}, static_cast<std::int64_t>(r));
}

Rational conditional_corruption_probability(const GroupAssignment& a, const ThresholdPolicy& policy, std::size_t g,
                                            const AttackState& state) {
  const std::uint32_t n = a.node_count();
  check_state(n, state);
  const auto status = status_of(n, state);
  std::uint32_t ca = 0, cb = 0;
  for (NodeId v : a.group(g)) {
    if (status[v] == kernels::NodeStatus::corrupted) ++ca;
    if (status[v] == kernels::NodeStatus::honest) ++cb;
  }
  const std::uint64_t undecided = n - state.corrupted.size() - state.honest.size();
  return group_probability(undecided, state.s - state.corrupted.size(), a.group_size(), policy.r, ca, cb);
}

Rational conditional_expectation(const GroupAssignment& a, const ThresholdPolicy& policy, const AttackState& state,
                                 kernels::Parallelism par) {
  const std::uint32_t n = a.node_count();
  check_state(n, state);
  const auto status = status_of(n, state);
  const auto tally = kernels::tally_group_states(a, status, n, par);
  return expectation(tally, n, policy.r, state.s, state.corrupted.size(), state.honest.size(), Probe::none);
}

AttackResult greedy_attack(const GroupAssignment& a, const ThresholdPolicy& policy, std::uint64_t s, GreedyRule rule,
                           kernels::Parallelism par) {
  if (!a.is_explicit()) throw std::invalid_argument("greedy_attack: explicit assignment required");
  const std::uint32_t n = a.node_count();
  if (s > n) throw std::domain_error("greedy_attack: s exceeds n");
  const std::uint64_t m = a.size();

  AttackResult out;
  out.guarantee = kappa(n, s, a.group_size(), policy.r) * BigNat(static_cast<unsigned long>(m));
  out.trace.push_back(out.guarantee);

  auto finish = [&](NodeSet chosen) {
    out.corrupted_set = std::move(chosen);
    out.corrupted_group_count = count_corrupted_groups(a, policy, out.corrupted_set);
    return std::move(out);
  };

  std::vector<kernels::NodeStatus> status(n, kernels::NodeStatus::undecided);
  NodeSet corrupted, honest;
  for (NodeId i = 0; i < n; ++i) {
    if (corrupted.size() == s) return finish(corrupted);
    if (honest.size() == n - s) {
      NodeSet rest;
      for (NodeId v = 0; v < n; ++v) {
        if (status[v] != kernels::NodeStatus::honest) rest.push_back(v);
      }
      return finish(rest);
    }
    const auto tally = kernels::tally_group_states(a, status, i, par);
    GreedyStep step;
    step.node = i;
    step.before = out.trace.back();
    step.t_size = corrupted.size();
    step.n_size = honest.size();
    step.if_corrupted = expectation(tally, n, policy.r, s, step.t_size, step.n_size, Probe::corrupt);
    step.if_honest = expectation(tally, n, policy.r, s, step.t_size, step.n_size, Probe::honest);
    out.evaluations += 2 * m;

    const Rational& bar = rule == GreedyRule::conditional_expectation ? step.before : out.guarantee;
    step.corrupted = step.if_corrupted >= bar;
    if (step.corrupted) {
      corrupted.push_back(i);
      status[i] = kernels::NodeStatus::corrupted;
      out.trace.push_back(step.if_corrupted);
    } else {
      honest.push_back(i);
      status[i] = kernels::NodeStatus::honest;
      out.trace.push_back(step.if_honest);
    }
    out.steps.push_back(std::move(step));
  }
  if (corrupted.size() == s) return finish(corrupted);
  // |T| + |N| = n with |T| <= s and |N| <= n - s forces one of the returns above.
  throw std::logic_error("greedy_attack: node scan ended without reaching the budget");
}

AttackResult optimal_attack(const GroupAssignment& a, const ThresholdPolicy& policy, std::uint64_t s,
                            std::uint64_t cap, kernels::Parallelism par) {
  const auto best = f_bruteforce(a, policy, s, cap, par);
  AttackResult out;
  out.corrupted_set = best.witness;
  out.corrupted_group_count = best.f;
  out.guarantee = kappa(a.node_count(), s, a.group_size(), policy.r) * BigNat(static_cast<unsigned long>(a.size()));
  out.optimal = true;
  return out;
}

}  // namespace custody
