#pragma once

// Hot loops of the library.  Each kernel has a plain serial reference that
// follows the definition directly, and an OpenMP variant used by the public
// API.  The two must agree bit-for-bit; tests and bench/ compare them.

#include <cstdint>
#include <span>
#include <vector>

#include "custody/assignment.hpp"

namespace custody::kernels {

/// threads <= 0 means the OpenMP default.
struct Parallelism {
  int threads = 0;
};

struct SubsetSearchResult {
  std::uint64_t best = 0;
  /// Lexicographically smallest s-set attaining `best`.
  NodeSet witness;
  /// Search-tree nodes (reference: leaves) visited.
  std::uint64_t visited = 0;
};

/// Lexicographic rank of a sorted r-subset of {0..n-1}.
std::uint64_t lex_rank(std::uint32_t n, std::span<const NodeId> subset);
NodeSet lex_unrank(std::uint32_t n, std::uint32_t r, std::uint64_t rank);

enum class NodeStatus : std::uint8_t { undecided = 0, corrupted = 1, honest = 2 };

/// Histogram of groups by (a, b, hit): a members corrupted, b honest, and whether
/// the probe node belongs to the group.
struct GroupTally {
  std::uint32_t k = 0;
  std::vector<std::uint64_t> counts;

  std::uint64_t at(std::uint32_t a, std::uint32_t b, bool hit) const {
    return counts[(static_cast<std::size_t>(a) * (k + 1) + b) * 2 + (hit ? 1 : 0)];
  }
};

namespace reference {

/// Enumerates every s-subset in lexicographic order; no pruning.
SubsetSearchResult max_corrupted_groups(const GroupAssignment& a, std::uint32_t r, std::uint32_t s);

/// For every t-subset (by lex rank), the number of groups containing it,
/// counted subset by subset.
std::vector<std::uint64_t> subset_coverage(const GroupAssignment& a, std::uint32_t t);

GroupTally tally_group_states(const GroupAssignment& a, std::span<const NodeStatus> status, NodeId probe);

}  // namespace reference

/// Depth-first search over s-subsets in lexicographic order, pruning subtrees
/// whose optimistic completion cannot beat the incumbent; prefix subtrees run
/// in parallel.  Returns the same (best, witness) as the reference.
SubsetSearchResult max_corrupted_groups(const GroupAssignment& a, std::uint32_t r, std::uint32_t s,
                                        Parallelism par = {});

/// Same result as reference::subset_coverage, accumulated block by block.
std::vector<std::uint64_t> subset_coverage(const GroupAssignment& a, std::uint32_t t, Parallelism par = {});

GroupTally tally_group_states(const GroupAssignment& a, std::span<const NodeStatus> status, NodeId probe,
                              Parallelism par = {});

}  // namespace custody::kernels
