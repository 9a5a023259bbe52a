#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "custody/exact_math.hpp"

namespace custody {

using NodeId = std::uint32_t;

/// Sorted, duplicate-free list of node indices.
using NodeSet = std::vector<NodeId>;

/// A family of m groups of size k over nodes 0..n-1.  Either an explicit list
/// (flat row-major storage, each row strictly increasing) or the implicit
/// family of all k-subsets.  Immutable once built.
class GroupAssignment {
 public:
  enum class Kind { explicit_list, symmetric_all };

  /// Validates and normalizes: sorts each group, rejects out-of-range or
  /// repeated members and duplicate groups.  `labels` is empty or one per group.
  static GroupAssignment from_groups(std::uint32_t n, std::uint32_t k, std::vector<NodeId> flat_members,
                                     std::vector<std::string> labels = {});

  static GroupAssignment from_groups(std::uint32_t n, std::uint32_t k, const std::vector<NodeSet>& groups,
                                     std::vector<std::string> labels = {});

  static GroupAssignment symmetric_all(std::uint32_t n, std::uint32_t k);

  Kind kind() const { return kind_; }
  bool is_explicit() const { return kind_ == Kind::explicit_list; }

  std::uint32_t node_count() const { return n_; }
  std::uint32_t group_size() const { return k_; }

  /// m, exact (binom(n,k) for the implicit family).
  BigNat group_count() const;

  /// Number of stored groups; explicit assignments only.
  std::size_t size() const;

  std::span<const NodeId> group(std::size_t index) const;
  std::span<const NodeId> members() const { return members_; }

  bool has_labels() const { return !labels_.empty(); }
  const std::string& label(std::size_t index) const;

 private:
  GroupAssignment() = default;

  void require_explicit(const char* what) const;

  Kind kind_ = Kind::explicit_list;
  std::uint32_t n_ = 0;
  std::uint32_t k_ = 0;
  std::vector<NodeId> members_;
  std::vector<std::string> labels_;
};

/// Authentication threshold mu in [1/2, 1) and the derived per-group corruption
/// threshold r, the smallest integer strictly greater than mu*k.
struct ThresholdPolicy {
  Rational mu;
  std::uint32_t r = 0;
};

std::uint32_t corruption_threshold(std::uint32_t k, const Rational& mu);

ThresholdPolicy make_policy(std::uint32_t k, const Rational& mu);

/// s corrupted nodes out of n; gamma = s/n exactly.
struct AdversaryPower {
  std::uint64_t s = 0;
  Rational gamma;

  static AdversaryPower from_count(std::uint64_t n, std::uint64_t s);
  /// s = floor(gamma * n).
  static AdversaryPower from_fraction(std::uint64_t n, const Rational& gamma);
};

enum class BoundKind { exact, lower_bound, upper_bound };

const char* to_string(BoundKind kind);

/// Efficiency factor (gamma*m - f)/f, or infinite when f = 0.
struct Eta {
  bool infinite = false;
  Rational value;
  BoundKind kind = BoundKind::exact;

  std::string exact_string() const;
  std::string decimal_string(int places = 4) const;
};

struct SecurityReport {
  BigNat f;
  BoundKind f_kind = BoundKind::exact;
  BigNat m;
  std::uint64_t s = 0;
  Rational gamma;
  /// f <= gamma*m.  For bound-based reports this is "certified reliable".
  bool reliable = false;
  Eta eta;
};

/// Number of groups with at least r members in `corrupted`.
std::uint64_t count_corrupted_groups(const GroupAssignment& a, const ThresholdPolicy& policy,
                                     std::span<const NodeId> corrupted);

Eta efficiency_factor(const BigNat& f, const BigNat& m, const Rational& gamma);

bool is_reliable(const BigNat& f, const BigNat& m, const Rational& gamma);

SecurityReport make_report(const BigNat& f, BoundKind f_kind, const BigNat& m, const AdversaryPower& power);

}  // namespace custody
