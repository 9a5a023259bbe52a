#include "custody/kernels.hpp"

#include <omp.h>

#include "binomial_table.hpp"

namespace custody::kernels {

std::vector<std::uint64_t> subset_coverage(const GroupAssignment& a, std::uint32_t t, Parallelism par) {
  const std::uint32_t n = a.node_count();
  const std::uint32_t k = a.group_size();
  if (t > n) return {};
  const detail::BinomialTable table(n, t);
  std::vector<std::uint64_t> counts(table(n, t), 0);
  if (t > k) return counts;

  const auto m = static_cast<std::int64_t>(a.size());
  const int threads = par.threads > 0 ? par.threads : omp_get_max_threads();

#pragma omp parallel num_threads(threads)
  {
    std::vector<std::uint32_t> pos(t);
    NodeSet sub(t);
#pragma omp for schedule(static)
    for (std::int64_t g = 0; g < m; ++g) {
      auto row = a.group(static_cast<std::size_t>(g));
      for (std::uint32_t i = 0; i < t; ++i) pos[i] = i;
      while (true) {
        for (std::uint32_t i = 0; i < t; ++i) sub[i] = row[pos[i]];
        const std::uint64_t rank = table.rank(sub);
#pragma omp atomic
        ++counts[rank];

        std::int64_t i = static_cast<std::int64_t>(t) - 1;
        while (i >= 0 && pos[i] == k - t + static_cast<std::uint32_t>(i)) --i;
        if (i < 0) break;
        ++pos[i];
        for (std::uint32_t j = static_cast<std::uint32_t>(i) + 1; j < t; ++j) pos[j] = pos[j - 1] + 1;
      }
    }
  }
  return counts;
}

}  // namespace custody::kernels
