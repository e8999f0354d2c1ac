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

#include "capstudio/sugeno.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "capstudio/errors.hpp"

namespace capstudio {

namespace {

using Mask = CriterionSet::Mask;

// Coefficients of (prod(1 + x mu_i) - 1 - x) / x, constant term first.
std::vector<double> reduced_polynomial(const SingletonDensities& d) {
  const int n = d.n();
  std::vector<double> e(static_cast<std::size_t>(n + 1), 0.0);  // elementary symmetric sums
  e[0] = 1.0;
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k >= 1; --k) e[static_cast<std::size_t>(k)] += d[i] * e[static_cast<std::size_t>(k - 1)];
  std::vector<double> poly(e.begin() + 1, e.end());
  poly[0] -= 1.0;
  return poly;
}

struct Eval {
  double value;
  double slope;
};

Eval horner(const std::vector<double>& poly, double x) {
  double v = 0.0;
  double dv = 0.0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) {
    dv = dv * x + v;
    v = v * x + *it;
  }
  return {v, dv};
}

double eq15_residual(const SingletonDensities& d, double lambda) {
  double prod = 1.0;
  for (double m : d.values()) prod *= 1.0 + lambda * m;
  return std::abs(prod - (1.0 + lambda));
}

}  // namespace

SingletonDensities::SingletonDensities(std::vector<double> values) : values_(std::move(values)) {
  require_criterion_count(static_cast<int>(values_.size()));
  for (double v : values_)
    if (!(v > 0.0 && v < 1.0)) throw DomainError("singleton density outside (0, 1)");
}

double SingletonDensities::sum() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

LambdaSolution solve_lambda(const SingletonDensities& d) {
  const double s = d.sum();
  if (std::abs(s - 1.0) < kAdditiveWindow) return {0.0, LambdaBranch::zero, 0.0, 0};

  const auto poly = reduced_polynomial(d);
  double lo = 0.0;
  double hi = 0.0;
  LambdaBranch branch;
  if (s < 1.0) {
    branch = LambdaBranch::positive;
    hi = 1.0;
    while (horner(poly, hi).value <= 0.0) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e15) throw NumericError("solve_lambda: no sign change below 1e15 (density sum " + std::to_string(s) + ")");
    }
  } else {
    branch = LambdaBranch::negative;
    lo = -1.0;
    hi = 0.0;
  }
  // The reduced polynomial is negative at lo and positive at hi.
  double x = 0.5 * (lo + hi);
  int it = 0;
  for (; it < 200; ++it) {
    const auto [v, dv] = horner(poly, x);
    if (v == 0.0) break;
    if (v < 0.0) lo = x;
    else hi = x;
    double next = (dv != 0.0) ? x - v / dv : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    // Damp steps that would jump more than half the bracket.
    if (std::abs(next - x) > 0.5 * (hi - lo)) next = 0.5 * (lo + hi);
    if (next == x || hi - lo <= 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) {
      x = next;
      break;
    }
    x = next;
  }
  return {x, branch, eq15_residual(d, x), it + 1};
}

Capacity build_lattice(const SingletonDensities& d, double lambda) {
  const int n = d.n();
  const Mask full = CriterionSet::full_mask(n);
  std::vector<double> values(std::size_t{full} + 1, 0.0);
  for (Mask m = 1; m <= full; ++m) {
    const int top = 31 - std::countl_zero(m);
    const Mask rest = m & ~(Mask{1} << top);
    const double a = values[rest];
    const double b = d[top];
    values[m] = a + b + lambda * a * b;
  }
  if (std::abs(values[full] - 1.0) > 1e-4)
    throw DomainError("lambda " + std::to_string(lambda) + " is inconsistent with the densities: mu(N) = " +
                      std::to_string(values[full]));
  values[full] = 1.0;
  return Capacity(n, std::move(values));
}

IdentificationResult identify_sugeno(const SingletonDensities& d) {
  const auto lambda = solve_lambda(d);
  auto capacity = build_lattice(d, lambda.lambda);
  auto indices = index_report(capacity);
  IdentificationResult result{"sugeno", std::move(capacity), std::move(indices)};
  result.lambda = lambda;
  return result;
}

}  // namespace capstudio
