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
#include "capstudio/learn.hpp"
#include "capstudio/qp.hpp"
#include "capstudio/semantic.hpp"
#include "capstudio/sugeno.hpp"

namespace capstudio {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

QPProblem random_problem(int m, int rows) {
  std::mt19937_64 rng(static_cast<unsigned>(m * 131 + rows));
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  MatrixXd b(m, m);
  for (Eigen::Index i = 0; i < b.size(); ++i) b.data()[i] = unit(rng);
  QPProblem p;
  p.hessian = b * b.transpose();
  p.linear = VectorXd::NullaryExpr(m, [&] { return 2 * unit(rng); });
  const VectorXd x0 = VectorXd::NullaryExpr(m, [&] { return 0.5 + 0.5 * unit(rng); });
  p.ineq = MatrixXd::NullaryExpr(rows, m, [&] { return unit(rng); });
  p.ineq_offset = -p.ineq * x0;
  p.eq = MatrixXd(0, m);
  p.eq_offset = VectorXd(0);
  p.lower = VectorXd::Zero(m);
  p.upper = VectorXd::Ones(m);
  return p;
}

void BM_SolveQP(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto p = random_problem(m, 2 * m);
  for (auto _ : state) benchmark::DoNotOptimize(solve_qp(p));
}
BENCHMARK(BM_SolveQP)->Arg(10)->Arg(30)->Arg(62)->Arg(126)->Unit(benchmark::kMillisecond);

std::vector<LearningSample> samples_for(int n, int count) {
  std::vector<double> g(static_cast<std::size_t>(n), 0.7 / n);
  const auto hidden = identify_sugeno(SingletonDensities(g)).capacity;
  std::mt19937_64 rng(3);
  std::vector<LearningSample> out;
  for (int k = 0; k < count; ++k) {
    std::vector<double> f(static_cast<std::size_t>(n));
    for (auto& x : f) x = std::uniform_real_distribution<double>(0, 1)(rng);
    CriteriaVector v(f);
    out.push_back({v, choquet(hidden, v), "s" + std::to_string(k)});
  }
  return out;
}

void BM_LearnFromData(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto samples = samples_for(n, 2 * min_samples(n));
  for (auto _ : state) benchmark::DoNotOptimize(identify_from_data(n, samples, {}));
}
BENCHMARK(BM_LearnFromData)->DenseRange(3, 7)->Unit(benchmark::kMillisecond);

void BM_SemanticProjection(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SemanticProblem p;
  p.n = n;
  p.constraints.push_back(
      LinguisticConstraint::from_term(LinguisticKind::importance, {2}, {1}, "A is more important than B"));
  p.constraints.push_back(LinguisticConstraint::from_term(LinguisticKind::dependence, {1}, {3}, "dependent"));
  p.constraints.push_back(LinguisticConstraint::from_term(LinguisticKind::synergy, {2}, {3}, "support"));
  for (auto _ : state) benchmark::DoNotOptimize(identify_semantic(p));
}
BENCHMARK(BM_SemanticProjection)->DenseRange(3, 8)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace capstudio

BENCHMARK_MAIN();
