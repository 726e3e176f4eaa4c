#include <benchmark/benchmark.h>

#include "realform/coords.hpp"
#include "realform/decide.hpp"
#include "realform/oracle.hpp"

using namespace realform;

namespace {

Instance instance(int k, int n, bool perturb) {
  InstanceSpec s;
  s.k = k;
  s.seed = 42;
  s.mix = TypeMix{n - 1, 0, 1};
  if (k == 2) s.mix = TypeMix{n - 1, 1, 0};
  if (perturb) s.perturbation = Perturbation{0, 0.05};
  return generate(s);
}

void BM_DecideYes(benchmark::State& st) {
  const int k = static_cast<int>(st.range(0));
  const Instance inst = instance(k, 4, false);
  for (auto _ : st) benchmark::DoNotOptimize(decide(inst.matrices, k));
}
BENCHMARK(BM_DecideYes)->DenseRange(2, 8);

void BM_DecideNo(benchmark::State& st) {
  const int k = static_cast<int>(st.range(0));
  const Instance inst = instance(k, 4, true);
  for (auto _ : st) benchmark::DoNotOptimize(decide(inst.matrices, k));
}
BENCHMARK(BM_DecideNo)->DenseRange(2, 8);

void BM_DecideDirect(benchmark::State& st) {
  const int k = static_cast<int>(st.range(0));
  const Instance inst = instance(k, 4, false);
  for (auto _ : st) benchmark::DoNotOptimize(decide(inst.matrices, k, {}, MethodChoice::Direct));
}
BENCHMARK(BM_DecideDirect)->DenseRange(2, 8);

void BM_TripleRatioSet(benchmark::State& st) {
  const int k = static_cast<int>(st.range(0));
  const Instance inst = instance(k, 2, false);
  std::vector<CVector> a, b;
  for (const auto& d : eig(inst.matrices[0]).eigendirections) a.push_back(d.canonical());
  for (const auto& d : eig(inst.matrices[1]).eigendirections) b.push_back(d.canonical());
  const Flag A{a}, B{b}, C = A.reversed();
  for (auto _ : st) benchmark::DoNotOptimize(triple_ratio_set(A, B, C));
}
BENCHMARK(BM_TripleRatioSet)->DenseRange(3, 8);

void BM_BruteSearch(benchmark::State& st) {
  const Instance inst = instance(2, 3, true);
  const int grid = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(brute_rform_search(inst.matrices, grid));
}
BENCHMARK(BM_BruteSearch)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
