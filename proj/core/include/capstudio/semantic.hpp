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

#ifndef CAPSTUDIO_SEMANTIC_HPP
#define CAPSTUDIO_SEMANTIC_HPP

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "capstudio/identification.hpp"
#include "capstudio/learn.hpp"
#include "capstudio/linear_form.hpp"

namespace capstudio {

enum class LinguisticKind { importance, dependence, synergy };

const char* to_string(LinguisticKind kind);
LinguisticKind parse_linguistic_kind(std::string_view name);

struct Bounds {
  double lo;
  double hi;
};

/// Parameter range of a linguistic term:
///   importance (eta):  same level [0.9, 1.1], a little more important [1.1, 1.3],
///                      more important [1.3, 1.7], quite more important [1.7, 1.9];
///   dependence:        highly dependent 0, dependent [0, 0.5],
///                      a little dependent [0.5, 1], independent 1;
///   synergy (gamma):   high support 1, support [0.5, 1], a little support [0, 0.5].
/// Matching ignores case and surrounding blanks. Throws DomainError for
/// terms outside the table of the kind.
Bounds linguistic_to_bounds(LinguisticKind kind, std::string_view term);

/// The linguistic terms of a kind, in their canonical order.
std::vector<std::string> linguistic_terms(LinguisticKind kind);

/// Range of admissible explicit bounds for a kind.
Bounds admissible_range(LinguisticKind kind);

/// A designer statement relating criterion groups A and B (1-based members).
///
///   importance:  mu(A) <= hi * mu(B), plus lo * mu(B) <= mu(A) when two-sided;
///   dependence:  mu(A) + lo mu(B) <= mu(A u B) <= mu(A) + hi mu(B);
///   synergy:     mu(A) + mu(B) + lo (1 - mu(A) - mu(B)) <= mu(A u B)
///                               <= mu(A) + mu(B) + hi (1 - mu(A) - mu(B)).
struct LinguisticConstraint {
  LinguisticKind kind;
  std::vector<int> a;
  std::vector<int> b;
  Bounds bounds;
  bool two_sided;
  std::string term;  // empty for explicit bounds

  /// Importance terms other than "same level" only bound mu(A) from above.
  static LinguisticConstraint from_term(LinguisticKind kind, std::vector<int> a, std::vector<int> b,
                                        std::string_view term);
  static LinguisticConstraint from_bounds(LinguisticKind kind, std::vector<int> a, std::vector<int> b, double lo,
                                          double hi);

  std::string describe() const;
};

inline constexpr double kDefaultIntervalHalfWidth = 0.35;

/// Requires the Choquet value of sample `sample` (1-based) to stay within
/// y +/- delta.
struct IntervalScore {
  int sample;
  double delta = kDefaultIntervalHalfWidth;
};

/// Linear rows (<= 0) for the linguistic constraints. Throws DomainError for
/// empty or out-of-range groups, overlapping groups in dependence/synergy
/// statements, or bounds outside admissible_range().
LinearSystem semantic_constraints(int n, std::span<const LinguisticConstraint> constraints);

LinearSystem interval_constraints(int n, std::span<const IntervalScore> scores,
                                  std::span<const LearningSample> samples);

struct SemanticProblem {
  int n = 0;
  std::vector<LinguisticConstraint> constraints;
  std::vector<IntervalScore> intervals;
  std::vector<LearningSample> samples;
  /// Optional ordinal information (e.g. a ranking of alternatives); encoded
  /// rows hold exactly in the result.
  PreferenceSpec preferences;
  /// Additional caller-built rows, as inequalities (<= 0).
  std::vector<std::pair<LinearForm, std::string>> extra_rows;
};

struct SemanticOptions {
  QPOptions qp;
  /// Search for a conflicting subset when the system is infeasible.
  bool explain_infeasibility = true;
};

/// Euclidean projection of the equidistributed capacity onto the capacities
/// satisfying monotonicity and every row of the problem.
///
/// On infeasibility the thrown InfeasibleError carries a conflicting subset
/// found by a deletion filter: user rows are visited in declaration order
/// (linguistic, interval, preference, extra) and a row is discarded whenever
/// the remaining rows stay infeasible without it.
IdentificationResult identify_semantic(const SemanticProblem& problem, const SemanticOptions& options = {});

}  // namespace capstudio

#endif  // CAPSTUDIO_SEMANTIC_HPP
