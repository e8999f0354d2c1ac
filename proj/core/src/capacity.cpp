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

#include "capstudio/capacity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "capstudio/errors.hpp"

namespace capstudio {

namespace {

std::size_t lattice_size(int n) { return std::size_t{1} << n; }

}  // namespace

Capacity::Capacity(int n, std::vector<double> by_mask) : n_(n), values_(std::move(by_mask)) {
  require_criterion_count(n);
  if (values_.size() != lattice_size(n))
    throw DimensionError("capacity needs " + std::to_string(lattice_size(n)) + " values, got " +
                         std::to_string(values_.size()));
  for (double v : values_)
    if (!std::isfinite(v)) throw DomainError("capacity coefficient is not finite");
  if (values_.front() != 0.0) throw DomainError("mu(empty) must be 0");
  if (std::abs(values_.back() - 1.0) > 1e-12) throw DomainError("mu(N) must be 1");
  values_.back() = 1.0;
  valid_ = validate(*this).ok();
}

Capacity Capacity::from_vector(int n, std::span<const double> coefficients) {
  require_criterion_count(n);
  if (static_cast<int>(coefficients.size()) != coefficient_count(n))
    throw DimensionError("expected " + std::to_string(coefficient_count(n)) +
                         " coefficients, got " + std::to_string(coefficients.size()));
  std::vector<double> values(lattice_size(n), 0.0);
  values.back() = 1.0;
  const auto& masks = canonical_masks(n);
  for (std::size_t k = 0; k < masks.size(); ++k) values[masks[k]] = coefficients[k];
  return Capacity(n, std::move(values));
}

Capacity Capacity::from_partial(int n, const std::vector<std::optional<double>>& by_mask) {
  require_criterion_count(n);
  if (by_mask.size() != lattice_size(n)) throw DimensionError("partial capacity has wrong size");
  std::vector<double> values(lattice_size(n), 0.0);
  values.back() = 1.0;
  std::vector<std::string> missing;
  for (auto m : canonical_masks(n)) {
    if (by_mask[m]) {
      values[m] = *by_mask[m];
    } else {
      missing.push_back("{" + CriterionSet(n, m).key() + "}");
    }
  }
  if (by_mask.front()) values.front() = *by_mask.front();
  if (by_mask.back()) values.back() = *by_mask.back();
  if (!missing.empty()) {
    std::ostringstream msg;
    msg << missing.size() << " coefficient(s) missing:";
    for (std::size_t k = 0; k < missing.size() && k < 8; ++k) msg << ' ' << missing[k];
    if (missing.size() > 8) msg << " ...";
    throw StructuralError(msg.str());
  }
  return Capacity(n, std::move(values));
}

double Capacity::value(const CriterionSet& s) const {
  if (s.n() != n_) throw DimensionError("criterion set and capacity disagree on n");
  return values_[s.mask()];
}

std::vector<double> Capacity::to_vector() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(coefficient_count(n_)));
  for (auto m : canonical_masks(n_)) out.push_back(values_[m]);
  return out;
}

void Capacity::require_valid() const {
  if (valid_) return;
  const auto report = validate(*this);
  const auto& v = report.violations.front();
  throw InvalidCapacityError("capacity is not monotone: mu({" + v.subset.key() + "}) exceeds mu({" +
                             v.superset.key() + "}) by " + std::to_string(v.gap));
}

ValidationReport validate(const Capacity& c, double tol) {
  ValidationReport report;
  const int n = c.n();
  const auto full = CriterionSet::full_mask(n);
  for (CriterionSet::Mask s = 0; s < full; ++s) {
    for (int i = 0; i < n; ++i) {
      const CriterionSet::Mask bit = CriterionSet::Mask{1} << i;
      if (s & bit) continue;
      const double gap = c[s] - c[s | bit];
      if (gap > tol) report.violations.push_back({CriterionSet(n, s), CriterionSet(n, s | bit), gap});
    }
  }
  return report;
}

Capacity equidistributed(int n) {
  require_criterion_count(n);
  std::vector<double> values(lattice_size(n));
  for (std::size_t m = 0; m < values.size(); ++m)
    values[m] = static_cast<double>(std::popcount(static_cast<unsigned>(m))) / n;
  values.back() = 1.0;
  return Capacity(n, std::move(values));
}

Capacity monotone_closure(int n, std::span<const double> coefficients) {
  require_criterion_count(n);
  if (static_cast<int>(coefficients.size()) != coefficient_count(n))
    throw DimensionError("monotone_closure: wrong coefficient count");
  std::vector<double> values(lattice_size(n), 0.0);
  values.back() = 1.0;
  const auto& masks = canonical_masks(n);
  // Canonical order is by cardinality, so subsets are final before supersets.
  for (std::size_t k = 0; k < masks.size(); ++k) {
    const auto m = masks[k];
    double v = std::clamp(coefficients[k], 0.0, 1.0);
    for (int i = 0; i < n; ++i) {
      const CriterionSet::Mask bit = CriterionSet::Mask{1} << i;
      if (m & bit) v = std::max(v, values[m & ~bit]);
    }
    values[m] = v;
  }
  return Capacity(n, std::move(values));
}

}  // namespace capstudio
