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

#ifndef CAPSTUDIO_CRITERION_SET_HPP
#define CAPSTUDIO_CRITERION_SET_HPP

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace capstudio {

inline constexpr int kMinCriteria = 2;
inline constexpr int kMaxCriteria = 12;

/// Throws DomainError unless kMinCriteria <= n <= kMaxCriteria.
void require_criterion_count(int n);

/// Number of free capacity coefficients, 2^n - 2 (everything but the empty
/// and the full set).
constexpr int coefficient_count(int n) { return (1 << n) - 2; }

/// A subset of the criteria {1, ..., n}, stored as a bit mask where bit
/// (i - 1) stands for criterion i. Criteria are numbered from 1 throughout
/// the public API.
class CriterionSet {
 public:
  using Mask = std::uint32_t;

  CriterionSet(int n, Mask mask);

  static CriterionSet empty(int n) { return {n, 0}; }
  static CriterionSet full(int n) { return {n, full_mask(n)}; }
  static CriterionSet of(int n, std::span<const int> elements);
  static CriterionSet of(int n, std::initializer_list<int> elements) {
    return of(n, std::span<const int>(elements.begin(), elements.size()));
  }

  static constexpr Mask full_mask(int n) { return (Mask{1} << n) - 1; }

  int n() const { return n_; }
  Mask mask() const { return mask_; }
  int size() const;
  bool is_empty() const { return mask_ == 0; }
  bool is_full() const { return mask_ == full_mask(n_); }
  bool contains(int criterion) const;
  bool intersects(const CriterionSet& other) const { return (mask_ & other.mask_) != 0; }
  bool is_subset_of(const CriterionSet& other) const { return (mask_ & ~other.mask_) == 0; }

  CriterionSet with(int criterion) const;
  CriterionSet without(int criterion) const;
  CriterionSet united(const CriterionSet& other) const;

  /// Sorted 1-based members.
  std::vector<int> elements() const;

  /// Comma-joined ascending members, e.g. "1,3,5"; the empty set gives "".
  std::string key() const;

  friend bool operator==(const CriterionSet&, const CriterionSet&) = default;
  friend auto operator<=>(const CriterionSet&, const CriterionSet&) = default;

 private:
  int n_;
  Mask mask_;
};

/// Position of a nonempty proper subset in the canonical coefficient vector:
/// subsets ordered by cardinality, then lexicographically by their sorted
/// member lists. Positions run from 1 to 2^n - 2; for n = 5 the sets {5},
/// {4,5}, {3,4,5} and {2,3,4,5} sit at 5, 15, 25 and 30.
int subset_position(const CriterionSet& s);

/// Inverse of subset_position.
CriterionSet subset_at_position(int n, int position);

/// Zero-based index of s in a coefficient vector (subset_position - 1).
inline int coefficient_index(const CriterionSet& s) { return subset_position(s) - 1; }

/// Masks of all nonempty proper subsets in canonical order.
const std::vector<CriterionSet::Mask>& canonical_masks(int n);

/// Lookup table mask -> zero-based coefficient index; -1 for the empty and full sets.
const std::vector<int>& coefficient_index_table(int n);

}  // namespace capstudio

#endif  // CAPSTUDIO_CRITERION_SET_HPP
