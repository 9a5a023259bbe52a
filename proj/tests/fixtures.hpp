#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "custody/assignment.hpp"
#include "custody/constructions.hpp"

namespace fixtures {

using custody::GroupAssignment;
using custody::NodeSet;

// Example 1: every triad of five nodes.
inline GroupAssignment toy() { return custody::materialize(custody::build_symmetric(5, 3)); }

inline GroupAssignment fano() { return custody::build_projective_plane(2).assignment; }

// Example 2: two disjoint groups of five.
inline GroupAssignment two_groups() {
  return GroupAssignment::from_groups(10, 5, std::vector<NodeSet>{{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}});
}

inline GroupAssignment random_assignment(std::mt19937_64& gen, std::uint32_t n, std::uint32_t k, std::size_t m) {
  std::set<NodeSet> groups;
  std::vector<custody::NodeId> nodes(n);
  for (std::uint32_t i = 0; i < n; ++i) nodes[i] = i;
  while (groups.size() < m) {
    std::shuffle(nodes.begin(), nodes.end(), gen);
    NodeSet g(nodes.begin(), nodes.begin() + k);
    std::sort(g.begin(), g.end());
    groups.insert(std::move(g));
  }
  return GroupAssignment::from_groups(n, k, std::vector<NodeSet>(groups.begin(), groups.end()));
}

}  // namespace fixtures
