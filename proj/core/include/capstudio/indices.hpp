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

#ifndef CAPSTUDIO_INDICES_HPP
#define CAPSTUDIO_INDICES_HPP

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "capstudio/aggregation.hpp"
#include "capstudio/capacity.hpp"
#include "capstudio/linear_form.hpp"

namespace capstudio {

/// Symmetric n x n matrix of pairwise interaction indices, zero diagonal.
/// Row/column k corresponds to criterion k + 1.
using InteractionMatrix = Eigen::MatrixXd;

/// Shapley importance of every criterion (entry k is criterion k + 1).
/// Sums to mu(N) = 1.
std::vector<double> shapley(const Capacity& c);

/// Pairwise interaction indices I(mu, ij).
InteractionMatrix interaction(const Capacity& c);

struct IndexReport {
  std::vector<double> shapley;
  InteractionMatrix interactions;
  /// n * shapley: values above 1 flag a criterion that weighs more than average.
  std::vector<double> scaled_shapley;
};

IndexReport index_report(const Capacity& c);

/// Weight (n - t - 1)! t! / n! applied to a marginal contribution of a
/// coalition of size t.
double shapley_weight(int n, int t);

/// Weight (n - t - 2)! t! / (n - 1)! applied to a second difference over a
/// coalition of size t.
double interaction_weight(int n, int t);

/// Shapley value of criterion i (1-based) as an affine form in the canonical
/// coefficient vector.
LinearForm shapley_form(int n, int i);

/// Interaction index of criteria i and j (1-based) as an affine form.
LinearForm interaction_form(int n, int i, int j);

/// Residuals of the 2-additivity conditions. Normality, non-negativity and
/// monotonicity are the singleton/pair conditions; `extension` measures how
/// far coefficients of larger coalitions are from the values those
/// singletons and pairs imply.
struct TwoAdditivityReport {
  bool two_additive = false;
  double normality = 0.0;       // sum_pairs mu_ij - (n - 2) sum_i mu_i - 1
  double nonnegativity = 0.0;   // max(0, -min_i mu_i)
  double monotonicity = 0.0;    // largest shortfall of the pair/singleton inequalities
  double extension = 0.0;       // max |mu(A) - mu_2add(A)| for |A| >= 3
};

/// Does not require c to be valid; invalid inputs simply fail a condition.
TwoAdditivityReport is_two_additive(const Capacity& c, double tol = kValidityTolerance);

/// Closed form of the Choquet integral for 2-additive capacities:
/// sum_i phi_i f_i - 1/2 sum_{i<j} I_ij |f_i - f_j|.
/// Agrees with choquet() only when phi and I come from a 2-additive capacity.
double two_additive_choquet(std::span<const double> phi, const InteractionMatrix& interactions,
                            const CriteriaVector& f);

enum class PairLabel { negative_correlation, positive_correlation, independent };

const char* to_string(PairLabel label);

struct PairEntry {
  int i;  // 1-based, i < j
  int j;
  PairLabel label;
  double excess;  // mu(ij) - mu(i) - mu(j)
};

struct PairSemantics {
  std::vector<PairEntry> pairs;
  std::vector<int> veto;  // criteria whose absence drives every coalition to ~0
  std::vector<int> pass;  // criteria whose presence drives every coalition to ~1
  double pair_tolerance;
  double effect_tolerance;
};

inline constexpr double kDefaultEffectTolerance = 0.05;

/// Labels every pair by the sign of mu(ij) - mu(i) - mu(j) outside a
/// +/- pair_tolerance band, and flags veto/pass criteria within
/// effect_tolerance of 0/1.
PairSemantics classify_pairs(const Capacity& c, double pair_tolerance = kUserTolerance,
                             double effect_tolerance = kDefaultEffectTolerance);

}  // namespace capstudio

#endif  // CAPSTUDIO_INDICES_HPP
