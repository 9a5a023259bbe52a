#include "custody/kernels.hpp"

#include <algorithm>
#include <atomic>

#include <omp.h>

namespace custody::kernels {
namespace {

struct Incidence {
  std::vector<std::size_t> offsets;
  std::vector<std::uint32_t> groups;
};

Incidence build_incidence(const GroupAssignment& a) {
  const std::uint32_t n = a.node_count();
  const std::size_t m = a.size();
  Incidence inc;
  inc.offsets.assign(n + 1, 0);
  for (NodeId v : a.members()) ++inc.offsets[v + 1];
  for (std::uint32_t v = 0; v < n; ++v) inc.offsets[v + 1] += inc.offsets[v];
  inc.groups.resize(a.members().size());
  std::vector<std::size_t> fill(inc.offsets.begin(), inc.offsets.end() - 1);
  for (std::size_t g = 0; g < m; ++g) {
    for (NodeId v : a.group(g)) inc.groups[fill[v]++] = static_cast<std::uint32_t>(g);
  }
  return inc;
}

struct TaskResult {
  bool found = false;
  std::uint64_t best = 0;
  NodeSet witness;
  std::uint64_t visited = 0;
};

class Searcher {
 public:
  Searcher(const GroupAssignment& a, const Incidence& inc, std::uint32_t r, std::uint32_t s,
           std::atomic<std::uint64_t>& global_best)
      : a_(a), inc_(inc), r_(r), s_(s), n_(a.node_count()), counts_(a.size(), 0), global_best_(global_best) {
    chosen_.reserve(s);
  }

  TaskResult run(std::span<const NodeId> prefix) {
    result_ = TaskResult{};
    for (NodeId v : prefix) push(v);
    const NodeId next = prefix.empty() ? 0 : prefix.back() + 1;
    if (chosen_.size() == s_) {
      leaf();
    } else if (worth_exploring(next, s_ - static_cast<std::uint32_t>(chosen_.size()))) {
      descend(next);
    }
    for (std::size_t i = prefix.size(); i-- > 0;) pop(prefix[i]);
    return std::move(result_);
  }

 private:
  void push(NodeId v) {
    for (std::size_t i = inc_.offsets[v]; i < inc_.offsets[v + 1]; ++i) {
      if (++counts_[inc_.groups[i]] == r_) ++corrupted_;
    }
    chosen_.push_back(v);
  }

  void pop(NodeId v) {
    for (std::size_t i = inc_.offsets[v]; i < inc_.offsets[v + 1]; ++i) {
      if (counts_[inc_.groups[i]]-- == r_) --corrupted_;
    }
    chosen_.pop_back();
  }

  // Corrupted groups now, plus every group that could still reach r using the
  // remaining picks among members >= next.
  std::uint64_t optimistic(NodeId next, std::uint32_t remaining) const {
    std::uint64_t bound = corrupted_;
    const std::size_t m = counts_.size();
    for (std::size_t g = 0; g < m; ++g) {
      const std::uint32_t have = counts_[g];
      if (have >= r_) continue;
      if (have + remaining < r_) continue;
      auto row = a_.group(g);
      const auto avail = static_cast<std::uint32_t>(row.end() - std::lower_bound(row.begin(), row.end(), next));
      if (have + std::min(remaining, avail) >= r_) ++bound;
    }
    return bound;
  }

  bool worth_exploring(NodeId next, std::uint32_t remaining) {
    const std::uint64_t bound = optimistic(next, remaining);
    if (result_.found && bound <= result_.best) return false;
    // Strict: a tie with another subtree's incumbent may still hold a smaller witness.
    return bound >= global_best_.load(std::memory_order_relaxed);
  }

  void leaf() {
    ++result_.visited;
    if (!result_.found || corrupted_ > result_.best) {
      result_.found = true;
      result_.best = corrupted_;
      result_.witness = chosen_;
      std::uint64_t seen = global_best_.load(std::memory_order_relaxed);
      while (seen < corrupted_ && !global_best_.compare_exchange_weak(seen, corrupted_, std::memory_order_relaxed)) {
      }
    }
  }

  void descend(NodeId next) {
    const auto remaining = s_ - static_cast<std::uint32_t>(chosen_.size());
    const NodeId last = n_ - remaining;
    for (NodeId v = next; v <= last; ++v) {
      push(v);
      if (remaining == 1) {
        leaf();
      } else if (worth_exploring(v + 1, remaining - 1)) {
        ++result_.visited;
        descend(v + 1);
      }
      pop(v);
      if (result_.found && result_.best == counts_.size()) return;
    }
  }

  const GroupAssignment& a_;
  const Incidence& inc_;
  std::uint32_t r_;
  std::uint32_t s_;
  std::uint32_t n_;
  std::vector<std::uint32_t> counts_;
  std::uint64_t corrupted_ = 0;
  NodeSet chosen_;
  std::atomic<std::uint64_t>& global_best_;
  TaskResult result_;
};

std::vector<NodeSet> prefixes(std::uint32_t n, std::uint32_t s) {
  std::vector<NodeSet> out;
  if (s == 0) {
    out.emplace_back();
    return out;
  }
  if (s == 1) {
    for (NodeId i = 0; i < n; ++i) out.push_back({i});
    return out;
  }
  for (NodeId i = 0; i + s <= n; ++i) {
    for (NodeId j = i + 1; j + s <= n + 1; ++j) out.push_back({i, j});
  }
  return out;
}

}  // namespace

SubsetSearchResult max_corrupted_groups(const GroupAssignment& a, std::uint32_t r, std::uint32_t s, Parallelism par) {
  SubsetSearchResult out;
  const std::uint32_t n = a.node_count();
  if (s > n) return out;

  const Incidence inc = build_incidence(a);
  const std::vector<NodeSet> tasks = prefixes(n, s);
  std::vector<TaskResult> results(tasks.size());
  std::atomic<std::uint64_t> global_best{0};
  const int threads = par.threads > 0 ? par.threads : omp_get_max_threads();

#pragma omp parallel num_threads(threads)
  {
    Searcher searcher(a, inc, r, s, global_best);
#pragma omp for schedule(dynamic, 1)
    for (std::size_t t = 0; t < tasks.size(); ++t) {
      results[t] = searcher.run(tasks[t]);
    }
  }

  bool found = false;
  for (auto& res : results) {
    out.visited += res.visited;
    if (res.found && (!found || res.best > out.best)) {
      out.best = res.best;
      out.witness = std::move(res.witness);
      found = true;
    }
  }
  return out;
}

}  // namespace custody::kernels
