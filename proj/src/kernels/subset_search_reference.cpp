#include "custody/kernels.hpp"

#include <algorithm>

namespace custody::kernels::reference {

SubsetSearchResult max_corrupted_groups(const GroupAssignment& a, std::uint32_t r, std::uint32_t s) {
  const std::uint32_t n = a.node_count();
  const std::size_t m = a.size();
  SubsetSearchResult out;
  if (s > n) return out;

  NodeSet pick(s);
  for (std::uint32_t i = 0; i < s; ++i) pick[i] = i;
  std::vector<char> hit(n, 0);
  bool first = true;

  while (true) {
    std::fill(hit.begin(), hit.end(), 0);
    for (NodeId v : pick) hit[v] = 1;
    std::uint64_t value = 0;
    for (std::size_t g = 0; g < m; ++g) {
      std::uint32_t inside = 0;
      for (NodeId v : a.group(g)) inside += static_cast<std::uint32_t>(hit[v]);
      if (inside >= r) ++value;
    }
    ++out.visited;
    if (first || value > out.best) {
      out.best = value;
      out.witness = pick;
      first = false;
    }

    // next combination in lexicographic order
    std::int64_t i = static_cast<std::int64_t>(s) - 1;
    while (i >= 0 && pick[i] == n - s + static_cast<std::uint32_t>(i)) --i;
    if (i < 0) break;
    ++pick[i];
    for (std::uint32_t j = static_cast<std::uint32_t>(i) + 1; j < s; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

}  // namespace custody::kernels::reference
