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

#ifndef CAPSTUDIO_QP_HPP
#define CAPSTUDIO_QP_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace capstudio {

/// min 1/2 u'Du + c'u  s.t.  A u + b <= 0,  E u + e = 0,  lower <= u <= upper.
///
/// Empty `lower`/`upper` vectors mean "unbounded"; individual entries may be
/// +/- infinity.
struct QPProblem {
  Eigen::MatrixXd hessian;  // D, symmetric positive semidefinite
  Eigen::VectorXd linear;   // c
  Eigen::MatrixXd ineq;     // A
  Eigen::VectorXd ineq_offset;  // b
  Eigen::MatrixXd eq;       // E
  Eigen::VectorXd eq_offset;    // e
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  int dimension() const { return static_cast<int>(linear.size()); }
  double objective(const Eigen::VectorXd& u) const { return 0.5 * u.dot(hessian * u) + linear.dot(u); }
};

enum class QPStatus { optimal, infeasible, max_iterations };

const char* to_string(QPStatus status);

struct KKTResiduals {
  double stationarity = 0.0;
  double primal_feasibility = 0.0;
  double complementarity = 0.0;
  double dual_feasibility = 0.0;

  double worst() const;
};

struct QPSolution {
  Eigen::VectorXd u;
  double objective = 0.0;
  QPStatus status = QPStatus::max_iterations;
  KKTResiduals kkt;
  int iterations = 0;
  /// Largest constraint violation at u; for infeasible problems this is the
  /// violation at the least-infeasible point found.
  double max_violation = 0.0;
  Eigen::VectorXd ineq_multipliers;
  Eigen::VectorXd eq_multipliers;
  Eigen::VectorXd lower_multipliers;
  Eigen::VectorXd upper_multipliers;
  /// Rows of A in the final working set.
  std::vector<int> active_inequalities;
};

struct QPOptions {
  /// Added to the diagonal of a singular D so every subproblem is strictly
  /// convex; positive definite D is left unchanged.
  double regularization = 1e-9;
  /// Cap on working-set changes per phase; 0 selects 50 * dimension.
  int max_iterations = 0;
  /// Phase-1 optimum above this is reported as infeasible.
  double feasibility_tolerance = 1e-9;
};

/// Primal active-set solver: a phase-1 problem minimises the largest
/// constraint violation, then the working set is updated one constraint at a
/// time from that feasible point. Deterministic for identical inputs.
///
/// Throws DimensionError on inconsistent sizes and DomainError on NaN/Inf or
/// a Hessian that is asymmetric beyond 1e-10. Eigenvalues of D down to -1e-8
/// are clipped to zero; anything more negative is rejected.
QPSolution solve_qp(const QPProblem& problem, const QPOptions& options = {});

/// KKT residuals of (u, multipliers) against the unregularised problem.
KKTResiduals kkt_residuals(const QPProblem& problem, const QPSolution& solution);

/// Largest violation of the constraints of `problem` at u (0 when feasible).
double max_violation(const QPProblem& problem, const Eigen::VectorXd& u);

/// Plain-text dump (matrix-market style coordinate entries) for reproducing
/// solver issues outside the application.
void write_qp_dump(std::ostream& out, const QPProblem& problem);
QPProblem read_qp_dump(std::istream& in);

}  // namespace capstudio

#endif  // CAPSTUDIO_QP_HPP
