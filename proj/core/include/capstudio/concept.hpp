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

#ifndef CAPSTUDIO_CONCEPT_HPP
#define CAPSTUDIO_CONCEPT_HPP

#include <span>
#include <string>
#include <vector>

#include "capstudio/aggregation.hpp"
#include "capstudio/capacity.hpp"

namespace capstudio {

/// MIQ, RS, CX, FX, CT.
const std::vector<std::string>& default_criteria();

/// Weighted sum of sub-criterion values. Weights must be non-negative and sum
/// to 1 within 1e-9; values must lie in [0, 1].
double aggregate_subcriteria(std::span<const double> values, std::span<const double> weights);

struct SubCriterion {
  std::string name;
  double weight;
};

class MMPProfile {
 public:
  /// One sub-criterion list per criterion.
  MMPProfile(std::vector<std::string> criteria, std::vector<std::vector<SubCriterion>> subcriteria);

  int size() const { return static_cast<int>(criteria_.size()); }
  const std::vector<std::string>& criteria() const { return criteria_; }
  const std::vector<std::vector<SubCriterion>>& subcriteria() const { return subcriteria_; }

  /// values[i] holds the sub-criterion values of criterion i.
  CriteriaVector evaluate(const std::vector<std::vector<double>>& values) const;

 private:
  std::vector<std::string> criteria_;
  std::vector<std::vector<SubCriterion>> subcriteria_;
};

struct Concept {
  std::string name;
  CriteriaVector values;
  /// Outcome of each declared design constraint.
  std::vector<bool> constraints_met;

  bool feasible() const;
};

/// Global concept score: the Choquet value of the concept, or 0 when a
/// design constraint fails.
double gcs(const Capacity& c, const Concept& alternative);

struct RankedConcept {
  std::string name;
  double score;
};

/// Concepts by descending score; equal scores are ordered by name.
/// Throws DomainError for an empty list.
std::vector<RankedConcept> rank_concepts(const Capacity& c, std::span<const Concept> concepts);

}  // namespace capstudio

#endif  // CAPSTUDIO_CONCEPT_HPP
