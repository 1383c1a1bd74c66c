// Copyright 2026 The tripletomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "tripletomo/measurement.hpp"
#include "tripletomo/pipeline.hpp"
#include "tripletomo/reconstruction.hpp"

namespace {

using namespace tripletomo;

const DensityMatrix& fixture() {
  static const DensityMatrix rho = density_from_pure(random_pure_state(0));
  return rho;
}

void BM_ExactPairwise(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(exact_pairwise(fixture()));
}
BENCHMARK(BM_ExactPairwise);

void BM_BuildSystem(benchmark::State& state) {
  const PairwiseData data = exact_pairwise(fixture());
  for (auto _ : state) benchmark::DoNotOptimize(build_system(data));
}
BENCHMARK(BM_BuildSystem);

void BM_Solve(benchmark::State& state) {
  const LinearSystem system = build_system(exact_pairwise(fixture()));
  for (auto _ : state) benchmark::DoNotOptimize(solve(system));
}
BENCHMARK(BM_Solve);

void BM_ExactPipeline(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(run_pipeline(fixture()));
}
BENCHMARK(BM_ExactPipeline);

void BM_SampledPairwise(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sampled_pairwise(fixture(), state.range(0), seed++));
  }
}
BENCHMARK(BM_SampledPairwise)->Arg(10'000)->Arg(1'000'000);

void BM_Batch(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(run_batch(state.range(0), 1));
}
BENCHMARK(BM_Batch)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
