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

#include "capstudio/aggregation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "capstudio/errors.hpp"

namespace capstudio {

CriteriaVector::CriteriaVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw DimensionError("criteria vector is empty");
  for (double v : values_)
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("criterion score outside [0, 1]");
}

std::vector<int> ascending_order(const CriteriaVector& f) {
  std::vector<int> order(static_cast<std::size_t>(f.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return f[a] < f[b]; });
  return order;
}

double choquet(const Capacity& c, const CriteriaVector& f) {
  if (f.size() != c.n())
    throw DimensionError("criteria vector has " + std::to_string(f.size()) + " entries, capacity has n = " +
                         std::to_string(c.n()));
  c.require_valid();
  const auto order = ascending_order(f);
  CriterionSet::Mask tail = CriterionSet::full_mask(c.n());
  double previous = 0.0;
  double total = 0.0;
  for (int idx : order) {
    total += (f[idx] - previous) * c[tail];
    previous = f[idx];
    tail &= ~(CriterionSet::Mask{1} << idx);
  }
  return total;
}

}  // namespace capstudio
