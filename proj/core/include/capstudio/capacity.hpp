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

#ifndef CAPSTUDIO_CAPACITY_HPP
#define CAPSTUDIO_CAPACITY_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "capstudio/criterion_set.hpp"

namespace capstudio {

inline constexpr double kValidityTolerance = 1e-9;
inline constexpr double kUserTolerance = 1e-6;

/// A set function over the criteria {1..n} with mu(empty) = 0 and mu(N) = 1.
///
/// Values are held by mask. Construction enforces the boundary values but not
/// monotonicity, so that malformed inputs can still be inspected with
/// validate(); is_valid() caches the outcome of validate() at
/// kValidityTolerance. Objects are immutable once built.
class Capacity {
 public:
  /// `by_mask` must have 2^n entries; entry 0 must be 0 and the last one 1.
  Capacity(int n, std::vector<double> by_mask);

  /// Builds from the 2^n - 2 free coefficients in canonical order.
  static Capacity from_vector(int n, std::span<const double> coefficients);

  /// Builds from optional per-mask values; throws StructuralError listing the
  /// subsets that are missing. The empty set may be omitted (implied 0), and
  /// so may the full set (implied 1).
  static Capacity from_partial(int n, const std::vector<std::optional<double>>& by_mask);

  int n() const { return n_; }
  double operator[](CriterionSet::Mask mask) const { return values_[mask]; }
  double value(const CriterionSet& s) const;
  std::span<const double> by_mask() const { return values_; }

  /// Free coefficients in canonical order (length 2^n - 2).
  std::vector<double> to_vector() const;

  bool is_valid() const { return valid_; }

  /// Throws InvalidCapacityError when !is_valid().
  void require_valid() const;

 private:
  int n_;
  std::vector<double> values_;
  bool valid_ = false;
};

/// One broken relation mu(subset) <= mu(superset), superset = subset + {i}.
struct MonotonicityViolation {
  CriterionSet subset;
  CriterionSet superset;
  double gap;  // mu(subset) - mu(superset) > tol
};

struct ValidationReport {
  std::vector<MonotonicityViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks mu(S) <= mu(S + {i}) for every S and i not in S, including the
/// edges from the empty set and into the full set.
ValidationReport validate(const Capacity& c, double tol = kValidityTolerance);

/// The additive capacity mu(A) = |A| / n.
Capacity equidistributed(int n);

/// Clamps values into [0, 1] and lifts each coefficient to the maximum of its
/// immediate subsets, in cardinality order. Used to absorb solver round-off;
/// the result differs from the input by at most its largest violation.
Capacity monotone_closure(int n, std::span<const double> coefficients);

}  // namespace capstudio

#endif  // CAPSTUDIO_CAPACITY_HPP
