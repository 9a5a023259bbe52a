#include "custody/kernels.hpp"

#include <algorithm>
#include <stdexcept>

#include "binomial_table.hpp"

namespace custody::kernels {

std::uint64_t lex_rank(std::uint32_t n, std::span<const NodeId> subset) {
  return detail::BinomialTable(n, static_cast<std::uint32_t>(subset.size())).rank(subset);
}

NodeSet lex_unrank(std::uint32_t n, std::uint32_t r, std::uint64_t rank) {
  const detail::BinomialTable table(n, r);
  if (r > n || rank >= table(n, r)) throw std::out_of_range("lex_unrank: rank out of range");
  NodeSet out;
  out.reserve(r);
  NodeId v = 0;
  for (std::uint32_t i = 0; i < r; ++i) {
    // skip every subset whose i-th element is v
    while (true) {
      const std::uint64_t block = table(n - 1 - v, r - 1 - i);
      if (rank < block) break;
      rank -= block;
      ++v;
    }
    out.push_back(v++);
  }
  return out;
}

namespace reference {

std::vector<std::uint64_t> subset_coverage(const GroupAssignment& a, std::uint32_t t) {
  const std::uint32_t n = a.node_count();
  const std::size_t m = a.size();
  const std::size_t words = (n + 63) / 64;
  std::vector<std::uint64_t> masks(m * words, 0);
  for (std::size_t g = 0; g < m; ++g) {
    for (NodeId v : a.group(g)) masks[g * words + v / 64] |= std::uint64_t{1} << (v % 64);
  }

  std::vector<std::uint64_t> counts;
  if (t > n) return counts;
  NodeSet pick(t);
  for (std::uint32_t i = 0; i < t; ++i) pick[i] = i;
  std::vector<std::uint64_t> probe(words);
  while (true) {
    std::fill(probe.begin(), probe.end(), 0);
    for (NodeId v : pick) probe[v / 64] |= std::uint64_t{1} << (v % 64);
    std::uint64_t covered = 0;
    for (std::size_t g = 0; g < m; ++g) {
      bool inside = true;
      for (std::size_t w = 0; w < words && inside; ++w) inside = (probe[w] & ~masks[g * words + w]) == 0;
      covered += inside ? 1 : 0;
    }
    counts.push_back(covered);

    std::int64_t i = static_cast<std::int64_t>(t) - 1;
    while (i >= 0 && pick[i] == n - t + static_cast<std::uint32_t>(i)) --i;
    if (i < 0) break;
    ++pick[i];
    for (std::uint32_t j = static_cast<std::uint32_t>(i) + 1; j < t; ++j) pick[j] = pick[j - 1] + 1;
  }
  return counts;
}

}  // namespace reference
}  // namespace custody::kernels
