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

#ifndef CAPSTUDIO_AGGREGATION_HPP
#define CAPSTUDIO_AGGREGATION_HPP

#include <initializer_list>
#include <span>
#include <vector>

#include "capstudio/capacity.hpp"

namespace capstudio {

/// Normalized per-criterion scores f(x_i), each in [0, 1].
class CriteriaVector {
 public:
  explicit CriteriaVector(std::vector<double> values);
  CriteriaVector(std::initializer_list<double> values)
      : CriteriaVector(std::vector<double>(values)) {}

  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
  std::span<const double> values() const { return values_; }

 private:
  std::vector<double> values_;
};

/// Zero-based criterion indices sorted by ascending score; equal scores keep
/// ascending criterion order.
std::vector<int> ascending_order(const CriteriaVector& f);

/// Discrete Choquet integral of f with respect to c.
///
/// Throws DimensionError when sizes differ and InvalidCapacityError when c is
/// not a valid capacity.
double choquet(const Capacity& c, const CriteriaVector& f);

}  // namespace capstudio

#endif  // CAPSTUDIO_AGGREGATION_HPP
