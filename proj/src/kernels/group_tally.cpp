#include "custody/kernels.hpp"

#include <omp.h>

namespace custody::kernels {
namespace {

inline std::size_t slot(std::uint32_t k, std::uint32_t a, std::uint32_t b, bool hit) {
  return (static_cast<std::size_t>(a) * (k + 1) + b) * 2 + (hit ? 1 : 0);
}

inline void classify(std::span<const NodeId> row, std::span<const NodeStatus> status, NodeId probe,
                     std::uint32_t& a, std::uint32_t& b, bool& hit) {
  a = b = 0;
  hit = false;
  for (NodeId v : row) {
    switch (status[v]) {
      case NodeStatus::corrupted: ++a; break;
      case NodeStatus::honest: ++b; break;
      case NodeStatus::undecided: hit = hit || v == probe; break;
    }
  }
}

}  // namespace

namespace reference {

GroupTally tally_group_states(const GroupAssignment& a, std::span<const NodeStatus> status, NodeId probe) {
  const std::uint32_t k = a.group_size();
  GroupTally out{k, std::vector<std::uint64_t>((k + 1) * (k + 1) * 2, 0)};
  const std::size_t m = a.size();
  for (std::size_t g = 0; g < m; ++g) {
    std::uint32_t ca, cb;
    bool hit;
    classify(a.group(g), status, probe, ca, cb, hit);
    ++out.counts[slot(k, ca, cb, hit)];
  }
  return out;
}

}  // namespace reference

GroupTally tally_group_states(const GroupAssignment& a, std::span<const NodeStatus> status, NodeId probe,
                              Parallelism par) {
  const std::uint32_t k = a.group_size();
  const std::size_t cells = (k + 1) * (k + 1) * 2;
  GroupTally out{k, std::vector<std::uint64_t>(cells, 0)};
  const auto m = static_cast<std::int64_t>(a.size());
  const int threads = par.threads > 0 ? par.threads : omp_get_max_threads();

#pragma omp parallel num_threads(threads)
  {
    std::vector<std::uint64_t> local(cells, 0);
#pragma omp for schedule(static) nowait
    for (std::int64_t g = 0; g < m; ++g) {
      std::uint32_t ca, cb;
      bool hit;
      classify(a.group(static_cast<std::size_t>(g)), status, probe, ca, cb, hit);
      ++local[slot(k, ca, cb, hit)];
    }
#pragma omp critical(custody_tally_merge)
    for (std::size_t i = 0; i < cells; ++i) out.counts[i] += local[i];
  }
  return out;
}

}  // namespace custody::kernels
