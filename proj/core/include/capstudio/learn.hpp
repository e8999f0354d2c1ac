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

#ifndef CAPSTUDIO_LEARN_HPP
#define CAPSTUDIO_LEARN_HPP

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "capstudio/aggregation.hpp"
#include "capstudio/identification.hpp"
#include "capstudio/linear_form.hpp"
#include "capstudio/qp.hpp"

namespace capstudio {

/// Largest n for which the quadratic-programming identifications run.
inline constexpr int kMaxQPCriteria = 8;

inline constexpr double kDefaultRankingMargin = 0.05;
inline constexpr double kDefaultOrderMargin = 0.01;

/// One assessed alternative: its criterion scores and the global score the
/// decision maker gave it.
struct LearningSample {
  CriteriaVector f;
  double y;
  std::string label;
};

/// Minimum number of learning samples for a well-posed fit on n criteria:
/// the central binomial coefficient C(n, floor(n/2)).
int min_samples(int n);

/// The Choquet integral of f as an affine form c_k . u + f_(1) over the
/// canonical coefficient vector u: sorted score increments placed at the
/// positions of the tail sets.
LinearForm choquet_row(const CriteriaVector& f);

/// Rows mu(S) - mu(S + {i}) <= 0 for every nonempty S and i not in S, ordered
/// by |S|, then S, then i. Rows reaching the full set read mu(S) - 1 <= 0, so
/// exactly n offsets equal -1 and they come last. Non-negativity of the
/// singletons is left to the bounds 0 <= u <= 1.
/// Throws DomainError unless 2 <= n <= kMaxQPCriteria.
LinearSystem monotonicity_constraints(int n);

/// 1/2 u'Du + c'u + constant equals the squared Choquet error summed over the
/// samples.
struct QuadraticObjective {
  Eigen::MatrixXd hessian;
  Eigen::VectorXd linear;
  double constant = 0.0;
};

QuadraticObjective assemble_objective(int n, std::span<const LearningSample> samples);

/// Criteria and samples are numbered from 1 in every preference record.
struct RankingPreference {
  int better;
  int worse;
  double margin = kDefaultRankingMargin;
};

struct ShapleyOrder {  // phi_i - phi_j >= margin
  int i;
  int j;
  double margin = kDefaultOrderMargin;
};

struct ShapleyEquality {
  int i;
  int j;
};

struct CriterionPair {
  int i;
  int j;
  friend bool operator==(const CriterionPair&, const CriterionPair&) = default;
};

struct InteractionOrder {  // I(first) - I(second) >= margin
  CriterionPair first;
  CriterionPair second;
  double margin = kDefaultOrderMargin;
};

struct InteractionEquality {
  CriterionPair first;
  CriterionPair second;
};

struct PreferenceSpec {
  std::vector<RankingPreference> rankings;
  std::vector<ShapleyOrder> shapley_orders;
  std::vector<ShapleyEquality> shapley_equalities;
  std::vector<InteractionOrder> interaction_orders;
  std::vector<InteractionEquality> interaction_equalities;

  bool empty() const;
  std::size_t size() const;

  /// Throws DomainError on out-of-range indices or negative margins, and on
  /// contradictory orderings: a cycle of orders containing a positive margin,
  /// or a positive-margin order between items declared equal.
  void check(int n, int sample_count) const;
};

/// Linear rows over u for the ranking, Shapley and interaction preferences;
/// orders become inequalities, equalities become equality rows.
ConstraintSet preference_constraints(int n, const PreferenceSpec& spec, std::span<const LearningSample> samples);

struct LearnOptions {
  QPOptions qp;
};

/// Least-squares Choquet fit to the samples under monotonicity and the
/// preference rows. Throws InfeasibleError when the constraints admit no
/// capacity, NumericError when the solver does not converge.
IdentificationResult identify_from_data(int n, std::span<const LearningSample> samples, const PreferenceSpec& spec,
                                        const LearnOptions& options = {});

namespace detail {

/// Violations of every row at u, largest first, keeping at most `limit`.
std::vector<ViolatedConstraint> rank_violations(const ConstraintSet& constraints, const Eigen::VectorXd& u,
                                                std::size_t limit);

/// Converts labelled constraints plus the box 0 <= u <= 1 into a QP with the
/// given objective.
QPProblem to_qp(const Eigen::MatrixXd& hessian, const Eigen::VectorXd& linear, const ConstraintSet& constraints);

/// Largest violation among the rows at u.
double worst_violation(const ConstraintSet& constraints, const Eigen::VectorXd& u);

std::vector<std::string> active_labels(const ConstraintSet& constraints, const QPSolution& solution);

}  // namespace detail

}  // namespace capstudio

#endif  // CAPSTUDIO_LEARN_HPP
