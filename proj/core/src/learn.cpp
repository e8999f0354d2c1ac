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

#include "capstudio/learn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <queue>
#include <sstream>

#include "capstudio/errors.hpp"
#include "capstudio/indices.hpp"

namespace capstudio {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string set_name(const CriterionSet& s) {
  if (s.is_full()) return "N";
  return "{" + s.key() + "}";
}

void require_qp_range(int n) {
  if (n < kMinCriteria || n > kMaxQPCriteria)
    throw DomainError("quadratic identification supports 2 <= n <= " + std::to_string(kMaxQPCriteria) + ", got " +
                      std::to_string(n));
}

// Order edges a -> b ("a above b by margin") with equality classes.
class OrderGraph {
 public:
  explicit OrderGraph(int nodes) : parent_(static_cast<std::size_t>(nodes)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  void equal(int a, int b) { parent_[static_cast<std::size_t>(find(a))] = find(b); }
  void order(int a, int b, double margin, std::string what) { edges_.push_back({a, b, margin, std::move(what)}); }

  void check(const char* family) {
    const int n = static_cast<int>(parent_.size());
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (const auto& e : edges_) adj[static_cast<std::size_t>(find(e.from))].push_back(find(e.to));
    for (const auto& e : edges_) {
      const int a = find(e.from);
      const int b = find(e.to);
      if (e.margin <= 0.0) continue;
      if (a == b) throw DomainError(std::string(family) + " preference " + e.what + " contradicts a declared equality");
      // Strict edge a -> b closes a cycle when a is reachable from b.
      std::vector<char> seen(static_cast<std::size_t>(n), 0);
      std::queue<int> q;
      q.push(b);
      seen[static_cast<std::size_t>(b)] = 1;
      while (!q.empty()) {
        const int v = q.front();
        q.pop();
        if (v == a) throw DomainError(std::string(family) + " preferences are cyclic (through " + e.what + ")");
        for (int w : adj[static_cast<std::size_t>(v)])
          if (!seen[static_cast<std::size_t>(w)]) {
            seen[static_cast<std::size_t>(w)] = 1;
            q.push(w);
          }
      }
    }
  }

 private:
  struct Edge {
    int from;
    int to;
    double margin;
    std::string what;
  };

  int find(int v) {
    while (parent_[static_cast<std::size_t>(v)] != v) {
      parent_[static_cast<std::size_t>(v)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(v)])];
      v = parent_[static_cast<std::size_t>(v)];
    }
    return v;
  }

  std::vector<int> parent_;
  std::vector<Edge> edges_;
};

int pair_node(int n, const CriterionPair& p) {
  int i = std::min(p.i, p.j) - 1;
  int j = std::max(p.i, p.j) - 1;
  return i * n + j;
}

std::string pair_name(const CriterionPair& p) {
  return "I(" + std::to_string(p.i) + "," + std::to_string(p.j) + ")";
}

void require_index(int value, int count, const char* what) {
  if (value < 1 || value > count)
    throw DomainError(std::string(what) + " index " + std::to_string(value) + " outside 1.." + std::to_string(count));
}

void require_pair(int n, const CriterionPair& p) {
  require_index(p.i, n, "criterion");
  require_index(p.j, n, "criterion");
  if (p.i == p.j) throw DomainError("interaction pair needs two distinct criteria");
}

void require_margin(double margin) {
  if (!(margin >= 0.0) || !std::isfinite(margin)) throw DomainError("preference margin must be finite and >= 0");
}

}  // namespace

int min_samples(int n) {
  if (n < kMinCriteria) throw DomainError("min_samples needs n >= 2");
  const int k = n / 2;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<int>(r);
}

LinearForm choquet_row(const CriteriaVector& f) {
  const int n = f.size();
  require_criterion_count(n);
  auto form = LinearForm::zero(n);
  const auto order = ascending_order(f);
  form.constant = f[order[0]];
  CriterionSet::Mask tail = CriterionSet::full_mask(n);
  const auto& index = coefficient_index_table(n);
  for (int k = 1; k < n; ++k) {
    tail &= ~(CriterionSet::Mask{1} << order[static_cast<std::size_t>(k - 1)]);
    form.coeffs[index[tail]] += f[order[static_cast<std::size_t>(k)]] - f[order[static_cast<std::size_t>(k - 1)]];
  }
  return form;
}

LinearSystem monotonicity_constraints(int n) {
  require_qp_range(n);
  LinearSystem system(n);
  for (auto mask : canonical_masks(n)) {
    const CriterionSet s(n, mask);
    for (int i = 1; i <= n; ++i) {
      if (s.contains(i)) continue;
      const auto bigger = s.with(i);
      system.add(subset_form(s) - subset_form(bigger), "monotonicity mu(" + set_name(s) + ") <= mu(" + set_name(bigger) + ")");
    }
  }
  return system;
}

QuadraticObjective assemble_objective(int n, std::span<const LearningSample> samples) {
  require_criterion_count(n);
  const int m = coefficient_count(n);
  QuadraticObjective obj{MatrixXd::Zero(m, m), VectorXd::Zero(m), 0.0};
  for (const auto& s : samples) {
    if (s.f.size() != n)
      throw DimensionError("sample '" + s.label + "' has " + std::to_string(s.f.size()) + " scores, expected " +
                           std::to_string(n));
    const auto row = choquet_row(s.f);
    const double residual = row.constant - s.y;
    obj.hessian.noalias() += 2.0 * row.coeffs * row.coeffs.transpose();
    obj.linear += 2.0 * residual * row.coeffs;
    obj.constant += residual * residual;
  }
  return obj;
}

bool PreferenceSpec::empty() const { return size() == 0; }

std::size_t PreferenceSpec::size() const {
  return rankings.size() + shapley_orders.size() + shapley_equalities.size() + interaction_orders.size() +
         interaction_equalities.size();
}

void PreferenceSpec::check(int n, int sample_count) const {
  OrderGraph samples(std::max(sample_count, 1));
  for (const auto& r : rankings) {
    require_index(r.better, sample_count, "sample");
    require_index(r.worse, sample_count, "sample");
    require_margin(r.margin);
    samples.order(r.better - 1, r.worse - 1, r.margin,
                  "sample " + std::to_string(r.better) + " > sample " + std::to_string(r.worse));
  }
  samples.check("ranking");

  OrderGraph criteria(n);
  for (const auto& e : shapley_equalities) {
    require_index(e.i, n, "criterion");
    require_index(e.j, n, "criterion");
    criteria.equal(e.i - 1, e.j - 1);
  }
  for (const auto& o : shapley_orders) {
    require_index(o.i, n, "criterion");
    require_index(o.j, n, "criterion");
    require_margin(o.margin);
    criteria.order(o.i - 1, o.j - 1, o.margin, "phi" + std::to_string(o.i) + " > phi" + std::to_string(o.j));
  }
  criteria.check("Shapley");

  OrderGraph pairs(n * n);
  for (const auto& e : interaction_equalities) {
    require_pair(n, e.first);
    require_pair(n, e.second);
    pairs.equal(pair_node(n, e.first), pair_node(n, e.second));
  }
  for (const auto& o : interaction_orders) {
    require_pair(n, o.first);
    require_pair(n, o.second);
    require_margin(o.margin);
    pairs.order(pair_node(n, o.first), pair_node(n, o.second), o.margin,
                pair_name(o.first) + " > " + pair_name(o.second));
  }
  pairs.check("interaction");
}

ConstraintSet preference_constraints(int n, const PreferenceSpec& spec, std::span<const LearningSample> samples) {
  require_criterion_count(n);
  spec.check(n, static_cast<int>(samples.size()));
  ConstraintSet out(n);
  for (const auto& r : spec.rankings) {
    const auto& better = samples[static_cast<std::size_t>(r.better - 1)];
    const auto& worse = samples[static_cast<std::size_t>(r.worse - 1)];
    if (better.f.size() != n || worse.f.size() != n) throw DimensionError("ranked sample has the wrong size");
    // C(worse) - C(better) + margin <= 0
    out.inequalities.add(choquet_row(worse.f) - choquet_row(better.f) + r.margin,
                         "ranking sample " + std::to_string(r.better) + " over sample " + std::to_string(r.worse) +
                             " by " + fmt(r.margin));
  }
  for (const auto& o : spec.shapley_orders)
    out.inequalities.add(shapley_form(n, o.j) - shapley_form(n, o.i) + o.margin,
                         "phi" + std::to_string(o.i) + " - phi" + std::to_string(o.j) + " >= " + fmt(o.margin));
  for (const auto& e : spec.shapley_equalities)
    out.equalities.add(shapley_form(n, e.i) - shapley_form(n, e.j),
                       "phi" + std::to_string(e.i) + " = phi" + std::to_string(e.j));
  for (const auto& o : spec.interaction_orders)
    out.inequalities.add(interaction_form(n, o.second.i, o.second.j) - interaction_form(n, o.first.i, o.first.j) +
                             o.margin,
                         pair_name(o.first) + " - " + pair_name(o.second) + " >= " + fmt(o.margin));
  for (const auto& e : spec.interaction_equalities)
    out.equalities.add(interaction_form(n, e.first.i, e.first.j) - interaction_form(n, e.second.i, e.second.j),
                       pair_name(e.first) + " = " + pair_name(e.second));
  return out;
}

namespace detail {

QPProblem to_qp(const MatrixXd& hessian, const VectorXd& linear, const ConstraintSet& constraints) {
  const auto m = linear.size();
  QPProblem p;
  p.hessian = hessian;
  p.linear = linear;
  p.ineq = constraints.inequalities.rows() ? constraints.inequalities.matrix() : MatrixXd(0, m);
  p.ineq_offset = constraints.inequalities.offsets();
  p.eq = constraints.equalities.rows() ? constraints.equalities.matrix() : MatrixXd(0, m);
  p.eq_offset = constraints.equalities.offsets();
  p.lower = VectorXd::Zero(m);
  p.upper = VectorXd::Ones(m);
  return p;
}

std::vector<ViolatedConstraint> rank_violations(const ConstraintSet& constraints, const VectorXd& u,
                                                std::size_t limit) {
  std::vector<ViolatedConstraint> out;
  const auto ineq = constraints.inequalities.evaluate(u);
  for (int r = 0; r < constraints.inequalities.rows(); ++r)
    if (ineq[r] > 0.0) out.push_back({constraints.inequalities.label(r), ineq[r]});
  const auto eq = constraints.equalities.evaluate(u);
  for (int r = 0; r < constraints.equalities.rows(); ++r)
    if (eq[r] != 0.0) out.push_back({constraints.equalities.label(r), std::abs(eq[r])});
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const auto s = "bound on mu(" + set_name(subset_at_position(constraints.inequalities.n(), static_cast<int>(i) + 1)) + ")";
    if (u[i] < 0.0) out.push_back({s, -u[i]});
    if (u[i] > 1.0) out.push_back({s, u[i] - 1.0});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const ViolatedConstraint& a, const ViolatedConstraint& b) { return a.violation > b.violation; });
  if (out.size() > limit) out.resize(limit);
  return out;
}

double worst_violation(const ConstraintSet& constraints, const VectorXd& u) {
  double worst = 0.0;
  if (constraints.inequalities.rows()) worst = std::max(worst, constraints.inequalities.evaluate(u).maxCoeff());
  if (constraints.equalities.rows())
    worst = std::max(worst, constraints.equalities.evaluate(u).cwiseAbs().maxCoeff());
  return worst;
}

std::vector<std::string> active_labels(const ConstraintSet& constraints, const QPSolution& solution) {
  std::vector<std::string> out;
  for (int r : solution.active_inequalities) out.push_back(constraints.inequalities.label(r));
  for (int r = 0; r < constraints.equalities.rows(); ++r) out.push_back(constraints.equalities.label(r));
  return out;
}

}  // namespace detail

IdentificationResult identify_from_data(int n, std::span<const LearningSample> samples, const PreferenceSpec& spec,
                                        const LearnOptions& options) {
  require_qp_range(n);
  for (const auto& s : samples)
    if (!(s.y >= 0.0 && s.y <= 1.0)) throw DomainError("sample '" + s.label + "' has a global score outside [0, 1]");

  const auto objective = assemble_objective(n, samples);
  ConstraintSet constraints(n);
  constraints.inequalities = monotonicity_constraints(n);
  constraints.append(preference_constraints(n, spec, samples));

  const auto problem = detail::to_qp(objective.hessian, objective.linear, constraints);
  const auto solution = solve_qp(problem, options.qp);
  if (solution.status == QPStatus::infeasible) {
    InfeasibilityReport report;
    report.max_violation = solution.max_violation;
    report.most_violated = detail::rank_violations(constraints, solution.u, 5);
    throw InfeasibleError(std::move(report));
  }
  if (solution.status != QPStatus::optimal) {
    std::ostringstream msg;
    msg << "learning QP did not converge after " << solution.iterations
        << " working-set changes (worst KKT residual " << solution.kkt.worst() << ")";
    throw NumericError(msg.str());
  }

  const auto u = solution.u;
  auto capacity = monotone_closure(n, std::vector<double>(u.data(), u.data() + u.size()));
  const auto coeffs = capacity.to_vector();
  const VectorXd closed = Eigen::Map<const VectorXd>(coeffs.data(), static_cast<Eigen::Index>(coeffs.size()));
  if (detail::worst_violation(constraints, closed) > kUserTolerance)
    throw NumericError("identified capacity violates a constraint beyond tolerance");

  double squared = 0.0;
  for (const auto& s : samples) {
    const double e = choquet(capacity, s.f) - s.y;
    squared += e * e;
  }

  auto indices = index_report(capacity);
  IdentificationResult result{"learn", std::move(capacity), std::move(indices)};
  result.fit_error = std::sqrt(squared);
  result.status = solution.status;
  result.kkt = solution.kkt;
  result.iterations = solution.iterations;
  result.active_constraints = detail::active_labels(constraints, solution);
  if (samples.empty()) {
    result.warnings.push_back("underdetermined: no learning samples, any feasible capacity fits");
  } else if (static_cast<int>(samples.size()) < min_samples(n)) {
    result.warnings.push_back("below minimum sample count: " + std::to_string(samples.size()) + " < " +
                              std::to_string(min_samples(n)));
  }
  return result;
}

}  // namespace capstudio
