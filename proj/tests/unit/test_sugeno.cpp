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

#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "capstudio/indices.hpp"
#include "capstudio/sugeno.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace capstudio {
namespace {

// Plain bisection on prod(1 + l g_i) - (1 + l) in long double.
long double lambda_by_bisection(const std::vector<double>& g) {
  long double sum = 0;
  for (double v : g) sum += v;
  const auto f = [&](long double l) {
    long double p = 1;
    for (double v : g) p *= 1 + l * v;
    return p - (1 + l);
  };
  long double lo, hi;
  if (sum > 1) {
    lo = -1;
    hi = -1e-18L;
  } else {
    lo = 1e-18L;
    hi = 1;
    while (f(hi) < 0) hi *= 2;
  }
  const bool rising = f(hi) > 0;
  for (int i = 0; i < 400; ++i) {
    const long double mid = (lo + hi) / 2;
    if ((f(mid) > 0) == rising) hi = mid;
    else lo = mid;
  }
  return (lo + hi) / 2;
}

double lattice_by_product(const std::vector<double>& g, double lambda, unsigned mask) {
  if (lambda == 0.0) {
    double s = 0;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (mask & (1u << i)) s += g[i];
    return s;
  }
  long double p = 1;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (mask & (1u << i)) p *= 1 + static_cast<long double>(lambda) * g[i];
  return static_cast<double>((p - 1) / lambda);
}

TEST(Sugeno, TwoCriteriaClosedForm) {
  const auto s = solve_lambda({0.4, 0.4});
  EXPECT_NEAR(s.lambda, 1.25, 1e-12);
  EXPECT_EQ(s.branch, LambdaBranch::positive);
}

TEST(Sugeno, AdditiveSumGivesZero) {
  const auto s = solve_lambda({0.2, 0.3, 0.5});
  EXPECT_EQ(s.lambda, 0.0);
  EXPECT_EQ(s.branch, LambdaBranch::zero);
  const auto c = build_lattice({0.2, 0.3, 0.5}, 0.0);
  EXPECT_NEAR(c.value(CriterionSet::of(3, {1, 3})), 0.7, 1e-15);
}

TEST(Sugeno, FiveEqualDensitiesNegativeBranch) {
  const auto s = solve_lambda({0.3, 0.3, 0.3, 0.3, 0.3});
  EXPECT_EQ(s.branch, LambdaBranch::negative);
  EXPECT_GT(s.lambda, -1.0);
  EXPECT_LT(s.lambda, 0.0);
  EXPECT_NEAR(std::pow(1 + 0.3 * s.lambda, 5), 1 + s.lambda, 1e-12);
  EXPECT_NEAR(s.lambda, static_cast<double>(lambda_by_bisection({0.3, 0.3, 0.3, 0.3, 0.3})), 1e-12);
}

TEST(Sugeno, ReferenceCapacityReproduced) {
  const SingletonDensities d{0.22, 0.24, 0.17, 0.16, 0.20};
  const auto r = identify_sugeno(d);
  ASSERT_TRUE(r.lambda.has_value());
  EXPECT_NEAR(r.lambda->lambda, 0.0255, 5e-5);
  EXPECT_LE(r.lambda->residual, 1e-12);
  const auto reference = test::load_capacity("sugeno-capacity.json");
  for (CriterionSet::Mask m = 1; m < 31; ++m)
    EXPECT_NEAR(r.capacity[m], reference[m], 5e-5) << CriterionSet(5, m).key();
  EXPECT_TRUE(r.capacity.is_valid());
  EXPECT_EQ(r.method, "sugeno");
}

TEST(Sugeno, AgreesWithBisectionAndProductForm) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + trial % 11;
    std::vector<double> g(static_cast<std::size_t>(n));
    const double scale = std::uniform_real_distribution<double>(0.2, 2.5)(rng) / n;
    for (auto& v : g) v = std::clamp(scale * std::uniform_real_distribution<double>(0.3, 1.7)(rng), 0.01, 0.99);
    double sum = 0;
    for (double v : g) sum += v;
    if (std::abs(sum - 1.0) < 1e-6) continue;
    const auto s = solve_lambda(SingletonDensities(g));
    const double expected = static_cast<double>(lambda_by_bisection(g));
    EXPECT_NEAR(s.lambda, expected, 1e-9 * std::max(1.0, std::abs(expected))) << "n=" << n << " sum=" << sum;
    EXPECT_EQ(s.branch, sum < 1 ? LambdaBranch::positive : LambdaBranch::negative);
    EXPECT_GT(s.lambda, -1.0);
    const auto c = build_lattice(SingletonDensities(g), s.lambda);
    EXPECT_TRUE(c.is_valid());
    const unsigned full = (1u << n) - 1;
    for (unsigned m = 1; m < full; m += 1 + m / 7)
      EXPECT_NEAR(c[m], lattice_by_product(g, s.lambda, m), 1e-9);
  }
}

TEST(Sugeno, PermutingDensitiesPermutesTheLattice) {
  const std::vector<double> g{0.1, 0.35, 0.2, 0.05};
  const std::vector<int> perm{2, 0, 3, 1};  // new position k holds old criterion perm[k]
  std::vector<double> h(4);
  for (int k = 0; k < 4; ++k) h[k] = g[perm[k]];
  const auto a = identify_sugeno(SingletonDensities(g));
  const auto b = identify_sugeno(SingletonDensities(h));
  EXPECT_NEAR(a.lambda->lambda, b.lambda->lambda, 1e-14);
  for (unsigned m = 1; m < 16; ++m) {
    unsigned old_mask = 0;
    for (int k = 0; k < 4; ++k)
      if (m & (1u << k)) old_mask |= 1u << perm[k];
    EXPECT_NEAR(b.capacity[m], a.capacity[old_mask], 1e-12);
  }
}

TEST(Sugeno, LambdaDecreasesAsADensityGrows) {
  double previous = 1e300;
  for (double g1 = 0.05; g1 < 0.95; g1 += 0.05) {
    const double lambda = solve_lambda({g1, 0.2, 0.15}).lambda;
    EXPECT_LT(lambda, previous);
    previous = lambda;
  }
}

TEST(Sugeno, RejectsDensitiesOutsideOpenInterval) {
  EXPECT_THROW(SingletonDensities({0.0, 0.5}), DomainError);
  EXPECT_THROW(SingletonDensities({1.0, 0.5}), DomainError);
  EXPECT_THROW(SingletonDensities({0.5}), DomainError);
  EXPECT_THROW(SingletonDensities(std::vector<double>(13, 0.1)), DomainError);
}

TEST(Sugeno, InconsistentLambdaRejected) { EXPECT_THROW(build_lattice({0.4, 0.4}, 0.3), DomainError); }

TEST(Sugeno, TwelveCriteriaIsFast) {
  std::vector<double> g(12, 0.05);
  const auto start = std::chrono::steady_clock::now();
  const auto r = identify_sugeno(SingletonDensities(g));
  const auto elapsed = std::chrono::steady_clock::now() - start;
  EXPECT_TRUE(r.capacity.is_valid());
  EXPECT_LT(std::chrono::duration<double>(elapsed).count(), 0.5);
}

}  // namespace
}  // namespace capstudio
