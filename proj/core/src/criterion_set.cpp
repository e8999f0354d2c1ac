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

#include "capstudio/criterion_set.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <mutex>

#include "capstudio/errors.hpp"

namespace capstudio {

namespace {

struct Layout {
  std::vector<CriterionSet::Mask> masks;  // canonical order
  std::vector<int> index_of;              // mask -> index or -1
};

Layout build_layout(int n) {
  Layout layout;
  const auto full = CriterionSet::full_mask(n);
  layout.index_of.assign(std::size_t{full} + 1, -1);
  for (CriterionSet::Mask m = 1; m < full; ++m) layout.masks.push_back(m);
  // Lexicographic order of sorted member lists within a cardinality block.
  auto members = [n](CriterionSet::Mask m) {
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
      if (m & (CriterionSet::Mask{1} << i)) out.push_back(i);
    return out;
  };
  std::stable_sort(layout.masks.begin(), layout.masks.end(),
                   [&](CriterionSet::Mask a, CriterionSet::Mask b) {
                     const int ca = std::popcount(a);
                     const int cb = std::popcount(b);
                     if (ca != cb) return ca < cb;
                     return members(a) < members(b);
                   });
  for (std::size_t k = 0; k < layout.masks.size(); ++k)
    layout.index_of[layout.masks[k]] = static_cast<int>(k);
  return layout;
}

const Layout& layout_for(int n) {
  require_criterion_count(n);
  static std::array<Layout, kMaxCriteria + 1> layouts;
  static std::array<std::once_flag, kMaxCriteria + 1> flags;
  std::call_once(flags[static_cast<std::size_t>(n)],
                 [n] { layouts[static_cast<std::size_t>(n)] = build_layout(n); });
  return layouts[static_cast<std::size_t>(n)];
}

}  // namespace

void require_criterion_count(int n) {
  if (n < kMinCriteria || n > kMaxCriteria)
    throw DomainError("criterion count " + std::to_string(n) + " outside [" +
                      std::to_string(kMinCriteria) + ", " + std::to_string(kMaxCriteria) + "]");
}

CriterionSet::CriterionSet(int n, Mask mask) : n_(n), mask_(mask) {
  require_criterion_count(n);
  if ((mask & ~full_mask(n)) != 0)
    throw DomainError("subset mask has bits beyond criterion " + std::to_string(n));
}

CriterionSet CriterionSet::of(int n, std::span<const int> elements) {
  require_criterion_count(n);
  Mask mask = 0;
  for (int e : elements) {
    if (e < 1 || e > n)
      throw DomainError("criterion " + std::to_string(e) + " outside 1.." + std::to_string(n));
    mask |= Mask{1} << (e - 1);
  }
  return {n, mask};
}

int CriterionSet::size() const { return std::popcount(mask_); }

bool CriterionSet::contains(int criterion) const {
  return criterion >= 1 && criterion <= n_ && (mask_ & (Mask{1} << (criterion - 1))) != 0;
}

CriterionSet CriterionSet::with(int criterion) const {
  if (criterion < 1 || criterion > n_) throw DomainError("criterion out of range");
  return {n_, mask_ | (Mask{1} << (criterion - 1))};
}

CriterionSet CriterionSet::without(int criterion) const {
  if (criterion < 1 || criterion > n_) throw DomainError("criterion out of range");
  return {n_, mask_ & ~(Mask{1} << (criterion - 1))};
}

CriterionSet CriterionSet::united(const CriterionSet& other) const {
  if (other.n_ != n_) throw DimensionError("criterion sets over different n");
  return {n_, mask_ | other.mask_};
}

std::vector<int> CriterionSet::elements() const {
  std::vector<int> out;
  for (int i = 1; i <= n_; ++i)
    if (contains(i)) out.push_back(i);
  return out;
}

std::string CriterionSet::key() const {
  std::string out;
  for (int e : elements()) {
    if (!out.empty()) out += ',';
    out += std::to_string(e);
  }
  return out;
}

int subset_position(const CriterionSet& s) {
  if (s.is_empty() || s.is_full())
    throw DomainError("empty and full sets have no coefficient position");
  return layout_for(s.n()).index_of[s.mask()] + 1;
}

CriterionSet subset_at_position(int n, int position) {
  const auto& layout = layout_for(n);
  if (position < 1 || position > coefficient_count(n))
    throw DomainError("coefficient position " + std::to_string(position) + " out of range");
  return {n, layout.masks[static_cast<std::size_t>(position - 1)]};
}

const std::vector<CriterionSet::Mask>& canonical_masks(int n) { return layout_for(n).masks; }

const std::vector<int>& coefficient_index_table(int n) { return layout_for(n).index_of; }

}  // namespace capstudio
