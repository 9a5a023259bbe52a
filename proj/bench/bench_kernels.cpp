#include <benchmark/benchmark.h>

#include <vector>

#include "custody/constructions.hpp"
#include "custody/kernels.hpp"

namespace {

using namespace custody;

const GroupAssignment& fano() {
  static const GroupAssignment a = build_projective_plane(2).assignment;
  return a;
}

const GroupAssignment& plane_13() {
  static const GroupAssignment a = build_projective_plane(3).assignment;
  return a;
}

const GroupAssignment& poly_5_2() {
  static const GroupAssignment a = build_polynomial({5, 2});
  return a;
}

const GroupAssignment& witt() {
  static const GroupAssignment a = build_witt_24().assignment;
  return a;
}

void BM_SubsetSearchReference(benchmark::State& state) {
  const auto s = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::reference::max_corrupted_groups(poly_5_2(), 2, s));
}
BENCHMARK(BM_SubsetSearchReference)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_SubsetSearchOmp(benchmark::State& state) {
  const auto s = static_cast<std::uint32_t>(state.range(0));
  const kernels::Parallelism par{static_cast<int>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(kernels::max_corrupted_groups(poly_5_2(), 2, s, par));
}
BENCHMARK(BM_SubsetSearchOmp)->Args({4, 1})->Args({6, 1})->Args({6, 0})->Unit(benchmark::kMillisecond);

void BM_SubsetSearchPlane13(benchmark::State& state) {
  const auto s = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::max_corrupted_groups(plane_13(), 3, s));
}
BENCHMARK(BM_SubsetSearchPlane13)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_CoverageReference(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kernels::reference::subset_coverage(witt(), 5));
}
BENCHMARK(BM_CoverageReference)->Unit(benchmark::kMillisecond);

void BM_CoverageOmp(benchmark::State& state) {
  const kernels::Parallelism par{static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(kernels::subset_coverage(witt(), 5, par));
}
BENCHMARK(BM_CoverageOmp)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

void BM_TallyReference(benchmark::State& state) {
  std::vector<kernels::NodeStatus> status(24, kernels::NodeStatus::undecided);
  for (NodeId v = 0; v < 6; ++v) status[v] = kernels::NodeStatus::corrupted;
  for (auto _ : state) benchmark::DoNotOptimize(kernels::reference::tally_group_states(witt(), status, 10));
}
BENCHMARK(BM_TallyReference);

void BM_TallyOmp(benchmark::State& state) {
  std::vector<kernels::NodeStatus> status(24, kernels::NodeStatus::undecided);
  for (NodeId v = 0; v < 6; ++v) status[v] = kernels::NodeStatus::corrupted;
  for (auto _ : state) benchmark::DoNotOptimize(kernels::tally_group_states(witt(), status, 10, {0}));
}
BENCHMARK(BM_TallyOmp);

void BM_FanoSearch(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kernels::max_corrupted_groups(fano(), 2, 3));
}
BENCHMARK(BM_FanoSearch);

}  // namespace

BENCHMARK_MAIN();
