// Copyright 2026 The Capacity Studio Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>

#include "capstudio/aggregation.hpp"
#include "capstudio/indices.hpp"
#include "capstudio/sugeno.hpp"

namespace capstudio {
namespace {

Capacity sugeno_capacity(int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  std::mt19937_64 rng(1);
  for (auto& x : g) x = std::uniform_real_distribution<double>(0.5, 1.5)(rng) / n;
  return identify_sugeno(SingletonDensities(g)).capacity;
}

void BM_Choquet(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto c = sugeno_capacity(n);
  std::mt19937_64 rng(2);
  std::vector<double> f(static_cast<std::size_t>(n));
  for (auto& x : f) x = std::uniform_real_distribution<double>(0, 1)(rng);
  const CriteriaVector v(f);
  for (auto _ : state) benchmark::DoNotOptimize(choquet(c, v));
}
BENCHMARK(BM_Choquet)->DenseRange(2, 12, 2);

void BM_Shapley(benchmark::State& state) {
  const auto c = sugeno_capacity(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(shapley(c));
}
BENCHMARK(BM_Shapley)->DenseRange(2, 12, 2);

void BM_Interaction(benchmark::State& state) {
  const auto c = sugeno_capacity(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(interaction(c));
}
BENCHMARK(BM_Interaction)->DenseRange(2, 12, 2);

void BM_Validate(benchmark::State& state) {
  const auto c = sugeno_capacity(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(validate(c));
}
BENCHMARK(BM_Validate)->DenseRange(2, 12, 2);

void BM_SugenoIdentify(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<double> g(static_cast<std::size_t>(n), 0.6 / n);
  const SingletonDensities d(g);
  for (auto _ : state) benchmark::DoNotOptimize(identify_sugeno(d));
}
BENCHMARK(BM_SugenoIdentify)->Arg(5)->Arg(8)->Arg(12);

}  // namespace
}  // namespace capstudio

BENCHMARK_MAIN();
