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

#include "capstudio/semantic.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>

#include "capstudio/errors.hpp"
#include "capstudio/indices.hpp"

namespace capstudio {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct TermEntry {
  const char* term;
  double lo;
  double hi;
};

constexpr std::array kImportanceTerms{
    TermEntry{"same level", 0.9, 1.1},
    TermEntry{"A is a little more important than B", 1.1, 1.3},
    TermEntry{"A is more important than B", 1.3, 1.7},
    TermEntry{"A is quite more important than B", 1.7, 1.9},
};

constexpr std::array kDependenceTerms{
    TermEntry{"highly dependent", 0.0, 0.0},
    TermEntry{"dependent", 0.0, 0.5},
    TermEntry{"a little dependent", 0.5, 1.0},
    TermEntry{"independent", 1.0, 1.0},
};

constexpr std::array kSynergyTerms{
    TermEntry{"high support", 1.0, 1.0},
    TermEntry{"support", 0.5, 1.0},
    TermEntry{"a little support", 0.0, 0.5},
};

std::span<const TermEntry> table_for(LinguisticKind kind) {
  switch (kind) {
    case LinguisticKind::importance:
      return kImportanceTerms;
    case LinguisticKind::dependence:
      return kDependenceTerms;
    case LinguisticKind::synergy:
      return kSynergyTerms;
  }
  return {};
}

std::string normalize(std::string_view s) {
  std::string out;
  for (char ch : s) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isspace(c)) {
      if (!out.empty() && out.back() != ' ') out += ' ';
    } else {
      out += static_cast<char>(std::tolower(c));
    }
  }
  if (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

CriterionSet group(int n, const std::vector<int>& members, const char* which) {
  if (members.empty()) throw DomainError(std::string("linguistic constraint has an empty group ") + which);
  return CriterionSet::of(n, members);
}

std::string group_name(const std::vector<int>& members) {
  std::string out = "{";
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(members[k]);
  }
  return out + "}";
}

void require_qp_range(int n) {
  if (n < kMinCriteria || n > kMaxQPCriteria)
    throw DomainError("semantic identification supports 2 <= n <= " + std::to_string(kMaxQPCriteria));
}

}  // namespace

const char* to_string(LinguisticKind kind) {
  switch (kind) {
    case LinguisticKind::importance:
      return "importance";
    case LinguisticKind::dependence:
      return "dependence";
    case LinguisticKind::synergy:
      return "synergy";
  }
  return "?";
}

LinguisticKind parse_linguistic_kind(std::string_view name) {
  const auto key = normalize(name);
  if (key == "importance") return LinguisticKind::importance;
  if (key == "dependence") return LinguisticKind::dependence;
  if (key == "synergy" || key == "support") return LinguisticKind::synergy;
  throw DomainError("unknown linguistic kind '" + std::string(name) + "'");
}

Bounds linguistic_to_bounds(LinguisticKind kind, std::string_view term) {
  const auto key = normalize(term);
  for (const auto& entry : table_for(kind))
    if (normalize(entry.term) == key) return {entry.lo, entry.hi};
  throw DomainError("unknown " + std::string(to_string(kind)) + " term '" + std::string(term) + "'");
}

std::vector<std::string> linguistic_terms(LinguisticKind kind) {
  std::vector<std::string> out;
  for (const auto& entry : table_for(kind)) out.emplace_back(entry.term);
  return out;
}

Bounds admissible_range(LinguisticKind kind) {
  switch (kind) {
    case LinguisticKind::importance:
      return {0.9, 1.9};
    case LinguisticKind::dependence:
    case LinguisticKind::synergy:
      return {0.0, 1.0};
  }
  return {0.0, 0.0};
}

LinguisticConstraint LinguisticConstraint::from_term(LinguisticKind kind, std::vector<int> a, std::vector<int> b,
                                                     std::string_view term) {
  const auto bounds = linguistic_to_bounds(kind, term);
  const bool two_sided = kind != LinguisticKind::importance || normalize(term) == "same level";
  return {kind, std::move(a), std::move(b), bounds, two_sided, std::string(term)};
}

LinguisticConstraint LinguisticConstraint::from_bounds(LinguisticKind kind, std::vector<int> a, std::vector<int> b,
                                                       double lo, double hi) {
  return {kind, std::move(a), std::move(b), {lo, hi}, true, {}};
}

std::string LinguisticConstraint::describe() const {
  std::string out = std::string(to_string(kind)) + " " + group_name(a) + " vs " + group_name(b);
  if (!term.empty()) out += " '" + term + "'";
  out += " [" + fmt(bounds.lo) + ", " + fmt(bounds.hi) + "]";
  return out;
}

LinearSystem semantic_constraints(int n, std::span<const LinguisticConstraint> constraints) {
  require_criterion_count(n);
  LinearSystem rows(n);
  for (const auto& c : constraints) {
    const auto range = admissible_range(c.kind);
    if (!(c.bounds.lo <= c.bounds.hi) || c.bounds.lo < range.lo - 1e-12 || c.bounds.hi > range.hi + 1e-12)
      throw DomainError(c.describe() + ": bounds outside [" + fmt(range.lo) + ", " + fmt(range.hi) + "]");
    const auto a = group(n, c.a, "A");
    const auto b = group(n, c.b, "B");
    const auto mu_a = subset_form(a);
    const auto mu_b = subset_form(b);
    const auto name = c.describe();
    switch (c.kind) {
      case LinguisticKind::importance:
        if (a == b) throw DomainError(name + ": A and B are the same group");
        rows.add(mu_a - c.bounds.hi * mu_b, name + " upper");
        if (c.two_sided) rows.add(c.bounds.lo * mu_b - mu_a, name + " lower");
        break;
      case LinguisticKind::dependence: {
        if (a.intersects(b)) throw DomainError(name + ": groups overlap");
        const auto mu_ab = subset_form(a.united(b));
        rows.add(mu_a + c.bounds.lo * mu_b - mu_ab, name + " lower");
        rows.add(mu_ab - mu_a - c.bounds.hi * mu_b, name + " upper");
        break;
      }
      case LinguisticKind::synergy: {
        if (a.intersects(b)) throw DomainError(name + ": groups overlap");
        const auto mu_ab = subset_form(a.united(b));
        const auto sum = mu_a + mu_b;
        // mu(A) + mu(B) + g (1 - mu(A) - mu(B)) = (1 - g)(mu(A) + mu(B)) + g
        rows.add((1.0 - c.bounds.lo) * sum + c.bounds.lo - mu_ab, name + " lower");
        rows.add(mu_ab - (1.0 - c.bounds.hi) * sum - c.bounds.hi, name + " upper");
        break;
      }
    }
  }
  return rows;
}

LinearSystem interval_constraints(int n, std::span<const IntervalScore> scores,
                                  std::span<const LearningSample> samples) {
  require_criterion_count(n);
  LinearSystem rows(n);
  for (const auto& s : scores) {
    if (s.sample < 1 || s.sample > static_cast<int>(samples.size()))
      throw DomainError("interval score refers to unknown sample " + std::to_string(s.sample));
    if (!(s.delta > 0.0)) throw DomainError("interval half-width must be positive");
    const auto& sample = samples[static_cast<std::size_t>(s.sample - 1)];
    if (sample.f.size() != n) throw DimensionError("interval sample has the wrong size");
    const auto row = choquet_row(sample.f);
    const auto name = "interval sample " + std::to_string(s.sample) + " within " + fmt(sample.y) + " +/- " + fmt(s.delta);
    rows.add(row - (sample.y + s.delta), name + " upper");
    rows.add((sample.y - s.delta) - row, name + " lower");
  }
  return rows;
}

namespace {

struct UserRow {
  LinearForm form;
  std::string label;
  bool equality;
};

ConstraintSet assemble(int n, const std::vector<UserRow>& rows, const std::vector<char>& keep) {
  ConstraintSet set(n);
  set.inequalities = monotonicity_constraints(n);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (!keep[k]) continue;
    if (rows[k].equality) set.equalities.add(rows[k].form, rows[k].label);
    else set.inequalities.add(rows[k].form, rows[k].label);
  }
  return set;
}

bool feasible(int n, const std::vector<UserRow>& rows, const std::vector<char>& keep, const QPOptions& qp) {
  const int m = coefficient_count(n);
  const auto set = assemble(n, rows, keep);
  const auto problem = detail::to_qp(MatrixXd::Zero(m, m), VectorXd::Zero(m), set);
  return solve_qp(problem, qp).status != QPStatus::infeasible;
}

}  // namespace

IdentificationResult identify_semantic(const SemanticProblem& problem, const SemanticOptions& options) {
  const int n = problem.n;
  require_qp_range(n);

  std::vector<UserRow> rows;
  const auto linguistic = semantic_constraints(n, problem.constraints);
  for (int r = 0; r < linguistic.rows(); ++r) rows.push_back({linguistic.form(r), linguistic.label(r), false});
  const auto intervals = interval_constraints(n, problem.intervals, problem.samples);
  for (int r = 0; r < intervals.rows(); ++r) rows.push_back({intervals.form(r), intervals.label(r), false});
  const auto prefs = preference_constraints(n, problem.preferences, problem.samples);
  for (int r = 0; r < prefs.inequalities.rows(); ++r)
    rows.push_back({prefs.inequalities.form(r), prefs.inequalities.label(r), false});
  for (int r = 0; r < prefs.equalities.rows(); ++r)
    rows.push_back({prefs.equalities.form(r), prefs.equalities.label(r), true});
  for (const auto& [form, label] : problem.extra_rows) {
    if (form.coeffs.size() != coefficient_count(n)) throw DimensionError("extra row '" + label + "' has the wrong width");
    rows.push_back({form, label, false});
  }

  std::vector<char> keep(rows.size(), 1);
  const auto constraints = assemble(n, rows, keep);
  const int m = coefficient_count(n);
  const auto u0_capacity = equidistributed(n);
  const auto u0_values = u0_capacity.to_vector();
  const VectorXd u0 = Eigen::Map<const VectorXd>(u0_values.data(), m);

  const auto qp = detail::to_qp(MatrixXd::Identity(m, m), -u0, constraints);
  const auto solution = solve_qp(qp, options.qp);
  if (solution.status == QPStatus::infeasible) {
    InfeasibilityReport report;
    report.max_violation = solution.max_violation;
    report.most_violated = detail::rank_violations(constraints, solution.u, 5);
    if (options.explain_infeasibility) {
      for (std::size_t k = 0; k < rows.size(); ++k) {
        keep[k] = 0;
        if (feasible(n, rows, keep, options.qp)) keep[k] = 1;
      }
      for (std::size_t k = 0; k < rows.size(); ++k)
        if (keep[k]) report.conflicting_subset.push_back(rows[k].label);
    }
    throw InfeasibleError(std::move(report));
  }
  if (solution.status != QPStatus::optimal)
    throw NumericError("semantic QP did not converge after " + std::to_string(solution.iterations) +
                       " working-set changes");

  const auto& u = solution.u;
  auto capacity = monotone_closure(n, std::vector<double>(u.data(), u.data() + u.size()));
  const auto coeffs = capacity.to_vector();
  const VectorXd closed = Eigen::Map<const VectorXd>(coeffs.data(), m);
  if (detail::worst_violation(constraints, closed) > kUserTolerance)
    throw NumericError("identified capacity violates a constraint beyond tolerance");

  auto indices = index_report(capacity);
  IdentificationResult result{"semantic", std::move(capacity), std::move(indices)};
  result.distance = 0.5 * (closed - u0).squaredNorm();
  result.status = solution.status;
  result.kkt = solution.kkt;
  result.iterations = solution.iterations;
  result.active_constraints = detail::active_labels(constraints, solution);
  return result;
}

}  // namespace capstudio
