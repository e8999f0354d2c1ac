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

#include "capstudio/concept.hpp"

#include <algorithm>
#include <cmath>

#include "capstudio/errors.hpp"

namespace capstudio {

namespace {

constexpr double kWeightSumTolerance = 1e-9;

void check_weights(std::span<const double> weights) {
  if (weights.empty()) throw DomainError("sub-criterion weights are empty");
  double sum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) throw DomainError("sub-criterion weights must be non-negative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kWeightSumTolerance) throw DomainError("sub-criterion weights must sum to 1");
}

}  // namespace

const std::vector<std::string>& default_criteria() {
  static const std::vector<std::string> names{"MIQ", "RS", "CX", "FX", "CT"};
  return names;
}

double aggregate_subcriteria(std::span<const double> values, std::span<const double> weights) {
  if (values.size() != weights.size()) throw DimensionError("sub-criterion values and weights differ in length");
  check_weights(weights);
  double total = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!(values[k] >= 0.0 && values[k] <= 1.0)) throw DomainError("sub-criterion values must lie in [0, 1]");
    total += weights[k] * values[k];
  }
  return std::clamp(total, 0.0, 1.0);
}

MMPProfile::MMPProfile(std::vector<std::string> criteria, std::vector<std::vector<SubCriterion>> subcriteria)
    : criteria_(std::move(criteria)), subcriteria_(std::move(subcriteria)) {
  require_criterion_count(size());
  if (subcriteria_.size() != criteria_.size())
    throw DimensionError("each criterion needs a sub-criterion list");
  for (const auto& list : subcriteria_) {
    std::vector<double> w;
    for (const auto& s : list) w.push_back(s.weight);
    check_weights(w);
  }
}

CriteriaVector MMPProfile::evaluate(const std::vector<std::vector<double>>& values) const {
  if (values.size() != subcriteria_.size()) throw DimensionError("sub-criterion values per criterion mismatch");
  std::vector<double> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::vector<double> w;
    for (const auto& s : subcriteria_[i]) w.push_back(s.weight);
    out.push_back(aggregate_subcriteria(values[i], w));
  }
  return CriteriaVector(std::move(out));
}

bool Concept::feasible() const {
  return std::all_of(constraints_met.begin(), constraints_met.end(), [](bool b) { return b; });
}

double gcs(const Capacity& c, const Concept& alternative) {
  if (alternative.values.size() != c.n())
    throw DimensionError("concept '" + alternative.name + "' has " + std::to_string(alternative.values.size()) +
                         " criteria, capacity has " + std::to_string(c.n()));
  const double score = choquet(c, alternative.values);
  return alternative.feasible() ? score : 0.0;
}

std::vector<RankedConcept> rank_concepts(const Capacity& c, std::span<const Concept> concepts) {
  if (concepts.empty()) throw DomainError("no concepts to rank");
  std::vector<RankedConcept> out;
  out.reserve(concepts.size());
  for (const auto& item : concepts) out.push_back({item.name, gcs(c, item)});
  std::stable_sort(out.begin(), out.end(), [](const RankedConcept& a, const RankedConcept& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.name < b.name;
  });
  return out;
}

}  // namespace capstudio
