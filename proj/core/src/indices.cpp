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

#include "capstudio/indices.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "capstudio/errors.hpp"

namespace capstudio {

namespace {

using Mask = CriterionSet::Mask;

constexpr Mask bit(int k) { return Mask{1} << k; }

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void add_subset(LinearForm& form, int n, Mask m, double w) {
  if (m == 0) return;
  if (m == CriterionSet::full_mask(n)) {
    form.constant += w;
    return;
  }
  form.coeffs[coefficient_index_table(n)[m]] += w;
}

void require_criterion(int n, int i) {
  if (i < 1 || i > n) throw DomainError("criterion " + std::to_string(i) + " outside 1.." + std::to_string(n));
}

}  // namespace

double shapley_weight(int n, int t) { return 1.0 / (n * binomial(n - 1, t)); }

double interaction_weight(int n, int t) { return 1.0 / ((n - 1) * binomial(n - 2, t)); }

std::vector<double> shapley(const Capacity& c) {
  c.require_valid();
  const int n = c.n();
  const Mask full = CriterionSet::full_mask(n);
  std::vector<double> weights(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) weights[static_cast<std::size_t>(t)] = shapley_weight(n, t);
  std::vector<double> phi(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    for (Mask t = 0; t <= full; ++t) {
      if (t & bit(i)) continue;
      sum += weights[static_cast<std::size_t>(std::popcount(t))] * (c[t | bit(i)] - c[t]);
    }
    phi[static_cast<std::size_t>(i)] = sum;
  }
  return phi;
}

InteractionMatrix interaction(const Capacity& c) {
  c.require_valid();
  const int n = c.n();
  const Mask full = CriterionSet::full_mask(n);
  std::vector<double> weights(static_cast<std::size_t>(n - 1));
  for (int t = 0; t + 2 <= n; ++t) weights[static_cast<std::size_t>(t)] = interaction_weight(n, t);
  InteractionMatrix out = InteractionMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Mask ij = bit(i) | bit(j);
      double sum = 0.0;
      for (Mask t = 0; t <= full; ++t) {
        if (t & ij) continue;
        sum += weights[static_cast<std::size_t>(std::popcount(t))] *
               (c[t | ij] - c[t | bit(i)] - c[t | bit(j)] + c[t]);
      }
      out(i, j) = out(j, i) = sum;
    }
  }
  return out;
}

IndexReport index_report(const Capacity& c) {
  IndexReport r{shapley(c), interaction(c), {}};
  for (double p : r.shapley) r.scaled_shapley.push_back(p * c.n());
  return r;
}

LinearForm shapley_form(int n, int i) {
  require_criterion_count(n);
  require_criterion(n, i);
  auto form = LinearForm::zero(n);
  const Mask full = CriterionSet::full_mask(n);
  const Mask bi = bit(i - 1);
  for (Mask t = 0; t <= full; ++t) {
    if (t & bi) continue;
    const double w = shapley_weight(n, std::popcount(t));
    add_subset(form, n, t | bi, w);
    add_subset(form, n, t, -w);
  }
  return form;
}

LinearForm interaction_form(int n, int i, int j) {
  require_criterion_count(n);
  require_criterion(n, i);
  require_criterion(n, j);
  if (i == j) throw DomainError("interaction needs two distinct criteria");
  auto form = LinearForm::zero(n);
  const Mask full = CriterionSet::full_mask(n);
  const Mask bi = bit(i - 1);
  const Mask bj = bit(j - 1);
  for (Mask t = 0; t <= full; ++t) {
    if (t & (bi | bj)) continue;
    const double w = interaction_weight(n, std::popcount(t));
    add_subset(form, n, t | bi | bj, w);
    add_subset(form, n, t | bi, -w);
    add_subset(form, n, t | bj, -w);
    add_subset(form, n, t, w);
  }
  return form;
}

TwoAdditivityReport is_two_additive(const Capacity& c, double tol) {
  const int n = c.n();
  const Mask full = CriterionSet::full_mask(n);
  auto single = [&](int i) { return c[bit(i)]; };
  auto pair = [&](int i, int j) { return c[bit(i) | bit(j)]; };

  TwoAdditivityReport r;
  double pair_sum = 0.0;
  double single_sum = 0.0;
  double min_single = 0.0;
  for (int i = 0; i < n; ++i) {
    single_sum += single(i);
    min_single = std::min(min_single, single(i));
    for (int j = i + 1; j < n; ++j) pair_sum += pair(i, j);
  }
  r.normality = pair_sum - (n - 2) * single_sum - 1.0;
  r.nonnegativity = -min_single;

  for (Mask a = 0; a <= full; ++a) {
    const int size = std::popcount(a);
    if (size < 2) continue;
    for (int k = 0; k < n; ++k) {
      if (!(a & bit(k))) continue;
      double lhs = 0.0;
      for (int i = 0; i < n; ++i)
        if (i != k && (a & bit(i))) lhs += pair(i, k) - single(i);
      r.monotonicity = std::max(r.monotonicity, (size - 2) * single(k) - lhs);
    }
    if (size >= 3) {
      // A 2-additive capacity is fixed by its singletons and pairs:
      // mu(A) = sum_{pairs in A} mu_ij - (|A| - 2) sum_{i in A} mu_i.
      double implied = 0.0;
      double singles = 0.0;
      for (int i = 0; i < n; ++i) {
        if (!(a & bit(i))) continue;
        singles += single(i);
        for (int j = i + 1; j < n; ++j)
          if (a & bit(j)) implied += pair(i, j);
      }
      implied -= (size - 2) * singles;
      r.extension = std::max(r.extension, std::abs(c[a] - implied));
    }
  }
  r.two_additive = std::abs(r.normality) <= tol && r.nonnegativity <= tol && r.monotonicity <= tol &&
                   r.extension <= tol;
  return r;
}

double two_additive_choquet(std::span<const double> phi, const InteractionMatrix& interactions,
                            const CriteriaVector& f) {
  const auto n = static_cast<Eigen::Index>(f.size());
  if (static_cast<Eigen::Index>(phi.size()) != n || interactions.rows() != n || interactions.cols() != n)
    throw DimensionError("two_additive_choquet: inconsistent dimensions");
  double total = 0.0;
  for (int i = 0; i < f.size(); ++i) total += phi[static_cast<std::size_t>(i)] * f[i];
  for (int i = 0; i < f.size(); ++i)
    for (int j = i + 1; j < f.size(); ++j) total -= 0.5 * interactions(i, j) * std::abs(f[i] - f[j]);
  return total;
}

const char* to_string(PairLabel label) {
  switch (label) {
    case PairLabel::negative_correlation:
      return "negative-correlation";
    case PairLabel::positive_correlation:
      return "positive-correlation";
    case PairLabel::independent:
      return "independent";
  }
  return "?";
}

PairSemantics classify_pairs(const Capacity& c, double pair_tolerance, double effect_tolerance) {
  c.require_valid();
  const int n = c.n();
  const Mask full = CriterionSet::full_mask(n);
  PairSemantics out{{}, {}, {}, pair_tolerance, effect_tolerance};
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double excess = c[bit(i) | bit(j)] - c[bit(i)] - c[bit(j)];
      PairLabel label = PairLabel::independent;
      if (excess > pair_tolerance) label = PairLabel::negative_correlation;
      else if (excess < -pair_tolerance) label = PairLabel::positive_correlation;
      out.pairs.push_back({i + 1, j + 1, label, excess});
    }
  }
  for (int i = 0; i < n; ++i) {
    bool veto = true;
    bool pass = true;
    for (Mask t = 1; t <= full; ++t) {
      if (t & bit(i)) pass = pass && c[t] >= 1.0 - effect_tolerance;
      else veto = veto && c[t] <= effect_tolerance;
    }
    if (veto) out.veto.push_back(i + 1);
    if (pass) out.pass.push_back(i + 1);
  }
  return out;
}

}  // namespace capstudio
