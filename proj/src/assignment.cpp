#include "custody/assignment.hpp"

#include <algorithm>
#include <stdexcept>

namespace custody {

GroupAssignment GroupAssignment::from_groups(std::uint32_t n, std::uint32_t k, std::vector<NodeId> flat_members,
                                             std::vector<std::string> labels) {
  if (k == 0 || k > n) throw std::invalid_argument("group size must satisfy 1 <= k <= n");
  if (flat_members.empty() || flat_members.size() % k != 0) {
    throw std::invalid_argument("explicit assignment needs m >= 1 groups of exactly k members");
  }
  const std::size_t m = flat_members.size() / k;
  if (!labels.empty() && labels.size() != m) throw std::invalid_argument("label count must match group count");

  for (std::size_t g = 0; g < m; ++g) {
    auto first = flat_members.begin() + static_cast<std::ptrdiff_t>(g * k);
    auto last = first + k;
    std::sort(first, last);
    if (std::adjacent_find(first, last) != last) {
      throw std::invalid_argument("group " + std::to_string(g) + " repeats a member");
    }
    if (*(last - 1) >= n) throw std::invalid_argument("group " + std::to_string(g) + " has a node >= n");
  }

  std::vector<std::size_t> order(m);
  for (std::size_t g = 0; g < m; ++g) order[g] = g;
  auto row = [&](std::size_t g) { return flat_members.begin() + static_cast<std::ptrdiff_t>(g * k); };
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return std::lexicographical_compare(row(x), row(x) + k, row(y), row(y) + k);
  });
  for (std::size_t i = 1; i < m; ++i) {
    if (std::equal(row(order[i - 1]), row(order[i - 1]) + k, row(order[i]))) {
      throw std::invalid_argument("duplicate group at index " + std::to_string(std::max(order[i - 1], order[i])));
    }
  }

  GroupAssignment out;
  out.kind_ = Kind::explicit_list;
  out.n_ = n;
  out.k_ = k;
  out.members_ = std::move(flat_members);
  out.labels_ = std::move(labels);
  return out;
}

GroupAssignment GroupAssignment::from_groups(std::uint32_t n, std::uint32_t k, const std::vector<NodeSet>& groups,
                                             std::vector<std::string> labels) {
  std::vector<NodeId> flat;
  flat.reserve(groups.size() * k);
  for (const auto& g : groups) {
    if (g.size() != k) throw std::invalid_argument("every group must have exactly k members");
    flat.insert(flat.end(), g.begin(), g.end());
  }
  return from_groups(n, k, std::move(flat), std::move(labels));
}

GroupAssignment GroupAssignment::symmetric_all(std::uint32_t n, std::uint32_t k) {
  if (k == 0 || k > n) throw std::domain_error("symmetric design requires 1 <= k <= n");
  GroupAssignment out;
  out.kind_ = Kind::symmetric_all;
  out.n_ = n;
  out.k_ = k;
  return out;
}

BigNat GroupAssignment::group_count() const {
  if (kind_ == Kind::symmetric_all) return binom(n_, k_);
  return BigNat(static_cast<unsigned long>(members_.size() / k_));
}

void GroupAssignment::require_explicit(const char* what) const {
  if (kind_ != Kind::explicit_list) {
    throw std::logic_error(std::string(what) + " needs an explicit assignment; materialize or sample first");
  }
}

std::size_t GroupAssignment::size() const {
  require_explicit("size()");
  return members_.size() / k_;
}

std::span<const NodeId> GroupAssignment::group(std::size_t index) const {
  require_explicit("group()");
  return std::span<const NodeId>(members_).subspan(index * k_, k_);
}

const std::string& GroupAssignment::label(std::size_t index) const {
  static const std::string empty;
  return labels_.empty() ? empty : labels_.at(index);
}

std::uint32_t corruption_threshold(std::uint32_t k, const Rational& mu) {
  if (k == 0) throw std::domain_error("group size must be positive");
  if (mu < Rational(1, 2) || mu >= 1) throw std::domain_error("mu must lie in [1/2, 1)");
  const Rational scaled = mu * k;
  BigNat whole;
  mpz_fdiv_q(whole.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  return static_cast<std::uint32_t>(whole.get_ui()) + 1;
}

ThresholdPolicy make_policy(std::uint32_t k, const Rational& mu) { return {mu, corruption_threshold(k, mu)}; }

AdversaryPower AdversaryPower::from_count(std::uint64_t n, std::uint64_t s) {
  if (n == 0 || s > n) throw std::domain_error("corrupted count must satisfy 0 <= s <= n");
  Rational gamma(BigNat(static_cast<unsigned long>(s)), BigNat(static_cast<unsigned long>(n)));
  gamma.canonicalize();
  return {s, gamma};
}

AdversaryPower AdversaryPower::from_fraction(std::uint64_t n, const Rational& gamma) {
  if (gamma < 0 || gamma > 1) throw std::domain_error("gamma must lie in [0, 1]");
  const Rational scaled = gamma * BigNat(static_cast<unsigned long>(n));
  BigNat s;
  mpz_fdiv_q(s.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  return from_count(n, s.get_ui());
}

const char* to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::exact: return "exact";
    case BoundKind::lower_bound: return "lower-bound";
    case BoundKind::upper_bound: return "upper-bound";
  }
  return "?";
}

std::string Eta::exact_string() const { return infinite ? "inf" : to_fraction_string(value); }

std::string Eta::decimal_string(int places) const { return infinite ? "inf" : to_decimal_string(value, places); }

std::uint64_t count_corrupted_groups(const GroupAssignment& a, const ThresholdPolicy& policy,
                                     std::span<const NodeId> corrupted) {
  std::vector<char> hit(a.node_count(), 0);
  for (NodeId v : corrupted) {
    if (v >= a.node_count()) throw std::out_of_range("corrupted node outside [0, n)");
    hit[v] = 1;
  }
  std::uint64_t count = 0;
  const std::size_t m = a.size();
  for (std::size_t g = 0; g < m; ++g) {
    std::uint32_t inside = 0;
    for (NodeId v : a.group(g)) inside += static_cast<std::uint32_t>(hit[v]);
    if (inside >= policy.r) ++count;
  }
  return count;
}

Eta efficiency_factor(const BigNat& f, const BigNat& m, const Rational& gamma) {
  if (f > m) throw std::invalid_argument("efficiency_factor: f exceeds m");
  if (f == 0) return {true, Rational(0), BoundKind::exact};
  Rational value = (gamma * Rational(m) - Rational(f)) / Rational(f);
  return {false, value, BoundKind::exact};
}

bool is_reliable(const BigNat& f, const BigNat& m, const Rational& gamma) {
  return Rational(f) <= gamma * Rational(m);
}

SecurityReport make_report(const BigNat& f, BoundKind f_kind, const BigNat& m, const AdversaryPower& power) {
  SecurityReport out;
  out.f = f;
  out.f_kind = f_kind;
  out.m = m;
  out.s = power.s;
  out.gamma = power.gamma;
  out.reliable = is_reliable(f, m, power.gamma);
  out.eta = efficiency_factor(f, m, power.gamma);
  if (f_kind == BoundKind::upper_bound) out.eta.kind = BoundKind::lower_bound;
  return out;
}

}  // namespace custody
