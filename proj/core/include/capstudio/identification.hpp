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

#ifndef CAPSTUDIO_IDENTIFICATION_HPP
#define CAPSTUDIO_IDENTIFICATION_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "capstudio/capacity.hpp"
#include "capstudio/errors.hpp"
#include "capstudio/indices.hpp"
#include "capstudio/qp.hpp"

namespace capstudio {

/// Which side of 1 the singleton densities sum to, and hence the sign of lambda.
enum class LambdaBranch { negative, zero, positive };

const char* to_string(LambdaBranch branch);

struct LambdaSolution {
  double lambda = 0.0;
  LambdaBranch branch = LambdaBranch::zero;
  double residual = 0.0;  // |prod(1 + lambda mu_i) - (1 + lambda)|
  int iterations = 0;
};

/// One constraint that could not be met, with its violation at the
/// least-infeasible point.
struct ViolatedConstraint {
  std::string label;
  double violation;
};

struct InfeasibilityReport {
  double max_violation = 0.0;
  /// Constraints sorted by decreasing violation (truncated).
  std::vector<ViolatedConstraint> most_violated;
  /// A subset of user constraints that is infeasible on its own together with
  /// monotonicity, and where dropping any member restores feasibility. Empty
  /// when not computed.
  std::vector<std::string> conflicting_subset;

  std::string summary() const;
};

/// Raised when the monotonicity and user constraints admit no capacity.
class InfeasibleError : public Error {
 public:
  explicit InfeasibleError(InfeasibilityReport report)
      : Error(report.summary()), report_(std::move(report)) {}
  const InfeasibilityReport& report() const { return report_; }

 private:
  InfeasibilityReport report_;
};

struct IdentificationResult {
  IdentificationResult(std::string method_name, Capacity result_capacity, IndexReport result_indices)
      : method(std::move(method_name)), capacity(std::move(result_capacity)), indices(std::move(result_indices)) {}

  std::string method;  // "sugeno", "learn" or "semantic"
  Capacity capacity;
  IndexReport indices;

  std::optional<LambdaSolution> lambda;
  /// Root of the minimised squared Choquet error over the learning set.
  std::optional<double> fit_error;
  /// Squared distance objective 1/2 |u - u0|^2 to the equidistributed capacity.
  std::optional<double> distance;

  std::optional<QPStatus> status;
  KKTResiduals kkt;
  int iterations = 0;
  std::vector<std::string> active_constraints;
  std::vector<std::string> warnings;
};

}  // namespace capstudio

#endif  // CAPSTUDIO_IDENTIFICATION_HPP
