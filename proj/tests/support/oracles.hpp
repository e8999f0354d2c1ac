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

#ifndef CAPSTUDIO_TESTS_ORACLES_HPP
#define CAPSTUDIO_TESTS_ORACLES_HPP

// Reference implementations used to cross-check the library. They work
// directly on mask-indexed value tables and share no code with the indices,
// aggregation or solver modules.

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "capstudio/capacity.hpp"
#include "capstudio/qp.hpp"

namespace capstudio::oracle {

using Rng = std::mt19937_64;

/// Average marginal contribution of each criterion over all n! orderings.
std::vector<double> shapley_by_permutations(const Capacity& c);

/// Interaction indices by literal summation of the second differences with
/// factorial weights computed in long double.
Eigen::MatrixXd interaction_by_summation(const Capacity& c);

/// Choquet integral as sum of f_(i) (mu(A_(i)) - mu(A_(i+1))) over a
/// descending sort.
double choquet_by_levels(const Capacity& c, const std::vector<double>& f);

/// Monotonicity checked over every pair A subset of B, not just covers.
bool monotone_all_pairs(const Capacity& c, double tol);

/// Random valid capacity. Roughly one increment in five is zero so that
/// ties and flat regions appear.
Capacity random_capacity(int n, Rng& rng);

/// Random valid 2-additive capacity from a Moebius representation with
/// non-negative singleton masses and signed pair masses, rejection sampled
/// for monotonicity.
Capacity random_two_additive(int n, Rng& rng);

/// Additive capacity with the given positive weights (normalised).
Capacity additive(const std::vector<double>& weights);

std::vector<double> random_scores(int n, Rng& rng);

/// Minimum of 1/2 x'Dx + c'x over the grid {0, h, 2h, ..., 1}^m, m <= 3,
/// restricted to points with A x + b <= 0. Returns +inf when no grid point
/// is feasible.
double grid_minimum(const Eigen::MatrixXd& d, const Eigen::VectorXd& c, const Eigen::MatrixXd& a,
                    const Eigen::VectorXd& b, double h);

/// Random symmetric PSD matrix of the given rank.
Eigen::MatrixXd random_psd(int m, int rank, Rng& rng);

/// Random QP with a known feasible point: general rows, optional equalities,
/// box [0, 1] and a PSD Hessian of random (possibly deficient) rank. The
/// feasible point is stored in `feasible` when given.
QPProblem random_problem(int m, int rows, int equalities, Rng& rng, Eigen::VectorXd* feasible = nullptr);

}  // namespace capstudio::oracle

#endif  // CAPSTUDIO_TESTS_ORACLES_HPP
