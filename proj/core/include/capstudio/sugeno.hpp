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

#ifndef CAPSTUDIO_SUGENO_HPP
#define CAPSTUDIO_SUGENO_HPP

#include <initializer_list>
#include <span>
#include <vector>

#include "capstudio/capacity.hpp"
#include "capstudio/identification.hpp"

namespace capstudio {

/// Singleton weights mu({i}), each strictly inside (0, 1).
class SingletonDensities {
 public:
  explicit SingletonDensities(std::vector<double> values);
  SingletonDensities(std::initializer_list<double> values)
      : SingletonDensities(std::vector<double>(values)) {}

  int n() const { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
  std::span<const double> values() const { return values_; }
  double sum() const;

 private:
  std::vector<double> values_;
};

/// Sums within this distance of 1 take the additive (lambda = 0) branch.
inline constexpr double kAdditiveWindow = 1e-12;

/// The unique non-zero root of 1 + lambda = prod(1 + lambda mu_i) on
/// (-1, inf), or lambda = 0 when the densities sum to 1.
///
/// The trivial root at 0 is divided out, leaving the polynomial
/// (e1 - 1) + e2 lambda + ... + en lambda^(n-1) in the elementary symmetric
/// sums e_k, which is bracketed (expanding the upper end for positive
/// roots) and solved by Newton steps safeguarded with bisection.
/// Throws NumericError when no bracket is found below 1e15.
LambdaSolution solve_lambda(const SingletonDensities& d);

/// Full lattice from mu(A u B) = mu(A) + mu(B) + lambda mu(A) mu(B), folding
/// members in ascending order. Throws DomainError when the folded mu(N)
/// misses 1 by more than 1e-4, i.e. lambda does not belong to d.
Capacity build_lattice(const SingletonDensities& d, double lambda);

/// solve_lambda followed by build_lattice.
IdentificationResult identify_sugeno(const SingletonDensities& d);

}  // namespace capstudio

#endif  // CAPSTUDIO_SUGENO_HPP
