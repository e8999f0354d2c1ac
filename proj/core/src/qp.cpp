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

#include "capstudio/qp.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "capstudio/errors.hpp"

namespace capstudio {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Internal form: G x <= h for inequalities (general rows and bounds),
// E x = d for equalities.
enum class RowKind { general, lower, upper };

struct RowRef {
  RowKind kind;
  int index;  // row of A, or variable index for bounds
};

struct InequalityRows {
  MatrixXd g;
  VectorXd h;
  std::vector<RowRef> refs;
};

InequalityRows gather_inequalities(const QPProblem& p) {
  const int m = p.dimension();
  std::vector<RowRef> refs;
  for (int r = 0; r < p.ineq.rows(); ++r) refs.push_back({RowKind::general, r});
  for (int i = 0; i < p.lower.size(); ++i)
    if (std::isfinite(p.lower[i])) refs.push_back({RowKind::lower, i});
  for (int i = 0; i < p.upper.size(); ++i)
    if (std::isfinite(p.upper[i])) refs.push_back({RowKind::upper, i});
  InequalityRows rows{MatrixXd::Zero(static_cast<Eigen::Index>(refs.size()), m),
                      VectorXd::Zero(static_cast<Eigen::Index>(refs.size())), refs};
  for (std::size_t k = 0; k < refs.size(); ++k) {
    const auto r = static_cast<Eigen::Index>(k);
    const auto& ref = refs[k];
    switch (ref.kind) {
      case RowKind::general:
        rows.g.row(r) = p.ineq.row(ref.index);
        rows.h[r] = -p.ineq_offset[ref.index];
        break;
      case RowKind::lower:
        rows.g(r, ref.index) = -1.0;
        rows.h[r] = -p.lower[ref.index];
        break;
      case RowKind::upper:
        rows.g(r, ref.index) = 1.0;
        rows.h[r] = p.upper[ref.index];
        break;
    }
  }
  return rows;
}

struct EqpStep {
  VectorXd p;
  VectorXd multipliers;  // for the rows of the working matrix, in order
  double decrease;
};

// min 1/2 p'Hp + g'p  s.t.  M p = 0, by the null-space method.
EqpStep solve_eqp(const MatrixXd& h, const VectorXd& g, const MatrixXd& m_rows) {
  const auto n = h.rows();
  const auto k = m_rows.rows();
  EqpStep out{VectorXd::Zero(n), VectorXd::Zero(k), 0.0};
  MatrixXd z;
  Eigen::ColPivHouseholderQR<MatrixXd> qr;
  Eigen::Index rank = 0;
  if (k == 0) {
    z = MatrixXd::Identity(n, n);
  } else {
    qr.compute(m_rows.transpose());
    rank = qr.rank();
    MatrixXd q = qr.householderQ();
    z = q.rightCols(n - rank);
  }
  if (z.cols() > 0) {
    const MatrixXd reduced = z.transpose() * h * z;
    const VectorXd pz = -reduced.ldlt().solve(z.transpose() * g);
    out.p = z * pz;
    out.decrease = -(g.dot(out.p) + 0.5 * out.p.dot(h * out.p));
  }
  if (k > 0) out.multipliers = qr.solve(VectorXd(-(g + h * out.p)));
  return out;
}

struct ActiveSetOutcome {
  VectorXd x;
  std::vector<int> working;     // inequality rows in the working set
  VectorXd ineq_multipliers;    // indexed like the inequality rows
  VectorXd eq_multipliers;
  bool converged = false;
  int changes = 0;
};

// Primal active-set iterations from a feasible x0. `eq` rows are always
// active; `working` holds inequality rows.
ActiveSetOutcome active_set(const MatrixXd& h, const VectorXd& g0, const MatrixXd& g_rows, const VectorXd& h_rows,
                            const MatrixXd& eq, VectorXd x0, int max_changes) {
  const auto n = h.rows();
  const auto n_ineq = g_rows.rows();
  const auto n_eq = eq.rows();
  ActiveSetOutcome out;
  out.x = std::move(x0);
  out.ineq_multipliers = VectorXd::Zero(n_ineq);
  out.eq_multipliers = VectorXd::Zero(n_eq);
  std::vector<char> in_working(static_cast<std::size_t>(n_ineq), 0);
  int degenerate_streak = 0;
  const int iteration_cap = 3 * max_changes + 10;

  for (int iter = 0; iter < iteration_cap; ++iter) {
    MatrixXd m_rows(n_eq + static_cast<Eigen::Index>(out.working.size()), n);
    if (n_eq > 0) m_rows.topRows(n_eq) = eq;
    for (std::size_t w = 0; w < out.working.size(); ++w)
      m_rows.row(n_eq + static_cast<Eigen::Index>(w)) = g_rows.row(out.working[w]);

    const VectorXd grad = h * out.x + g0;
    const auto step = solve_eqp(h, grad, m_rows);
    const double fx = 0.5 * out.x.dot(h * out.x) + g0.dot(out.x);
    const double scale = 1.0 + std::abs(fx);
    const bool negligible = step.p.lpNorm<Eigen::Infinity>() <= 1e-13 * (1.0 + out.x.lpNorm<Eigen::Infinity>()) ||
                            step.decrease <= 1e-15 * scale;

    if (negligible) {
      const double dual_tol = 1e-12 * (1.0 + grad.lpNorm<Eigen::Infinity>());
      int drop = -1;
      double most_negative = -dual_tol;
      for (std::size_t w = 0; w < out.working.size(); ++w) {
        const double lambda = step.multipliers[n_eq + static_cast<Eigen::Index>(w)];
        if (degenerate_streak > 2 * n) {
          // Bland-style: first negative multiplier by row index.
          if (lambda < -dual_tol && (drop < 0 || out.working[w] < out.working[static_cast<std::size_t>(drop)]))
            drop = static_cast<int>(w);
        } else if (lambda < most_negative ||
                   (lambda == most_negative && drop >= 0 &&
                    out.working[w] < out.working[static_cast<std::size_t>(drop)])) {
          most_negative = lambda;
          drop = static_cast<int>(w);
        }
      }
      if (drop < 0) {
        out.converged = true;
        out.eq_multipliers = step.multipliers.head(n_eq);
        for (std::size_t w = 0; w < out.working.size(); ++w)
          out.ineq_multipliers[out.working[w]] = step.multipliers[n_eq + static_cast<Eigen::Index>(w)];
        return out;
      }
      in_working[static_cast<std::size_t>(out.working[static_cast<std::size_t>(drop)])] = 0;
      out.working.erase(out.working.begin() + drop);
      if (++out.changes > max_changes) return out;
      continue;
    }

    double alpha = 1.0;
    int blocking = -1;
    const double p_norm = step.p.lpNorm<Eigen::Infinity>();
    for (Eigen::Index r = 0; r < n_ineq; ++r) {
      if (in_working[static_cast<std::size_t>(r)]) continue;
      const double slope = g_rows.row(r).dot(step.p);
      if (slope <= 1e-13 * g_rows.row(r).lpNorm<Eigen::Infinity>() * p_norm) continue;
      const double room = h_rows[r] - g_rows.row(r).dot(out.x);
      const double a = std::max(0.0, room / slope);
      if (a < alpha) {
        alpha = a;
        blocking = static_cast<int>(r);
      }
    }
    out.x += alpha * step.p;
    if (blocking >= 0) {
      degenerate_streak = alpha == 0.0 ? degenerate_streak + 1 : 0;
      out.working.push_back(blocking);
      in_working[static_cast<std::size_t>(blocking)] = 1;
      if (++out.changes > max_changes) return out;
    }
  }
  return out;
}

// Keeps a maximal linearly independent subset of the equality rows.
std::vector<int> independent_rows(const MatrixXd& e) {
  std::vector<int> keep;
  if (e.rows() == 0) return keep;
  Eigen::ColPivHouseholderQR<MatrixXd> qr(e.transpose());
  qr.setThreshold(1e-10);
  const auto& perm = qr.colsPermutation().indices();
  for (Eigen::Index k = 0; k < qr.rank(); ++k) keep.push_back(perm[k]);
  std::sort(keep.begin(), keep.end());
  return keep;
}

void check_finite(const MatrixXd& m, const char* what) {
  if (!m.allFinite()) throw DomainError(std::string("solve_qp: ") + what + " contains NaN or Inf");
}

void validate_problem(const QPProblem& p) {
  const auto m = p.linear.size();
  if (p.hessian.rows() != m || p.hessian.cols() != m) throw DimensionError("solve_qp: Hessian size mismatch");
  if (p.ineq.rows() != p.ineq_offset.size() || (p.ineq.rows() > 0 && p.ineq.cols() != m))
    throw DimensionError("solve_qp: inequality block size mismatch");
  if (p.eq.rows() != p.eq_offset.size() || (p.eq.rows() > 0 && p.eq.cols() != m))
    throw DimensionError("solve_qp: equality block size mismatch");
  if ((p.lower.size() != 0 && p.lower.size() != m) || (p.upper.size() != 0 && p.upper.size() != m))
    throw DimensionError("solve_qp: bound vector size mismatch");
  check_finite(p.hessian, "D");
  check_finite(p.linear, "c");
  check_finite(p.ineq, "A");
  check_finite(p.ineq_offset, "b");
  check_finite(p.eq, "E");
  check_finite(p.eq_offset, "e");
  for (Eigen::Index i = 0; i < p.lower.size(); ++i)
    if (std::isnan(p.lower[i]) || p.lower[i] == kInf) throw DomainError("solve_qp: invalid lower bound");
  for (Eigen::Index i = 0; i < p.upper.size(); ++i)
    if (std::isnan(p.upper[i]) || p.upper[i] == -kInf) throw DomainError("solve_qp: invalid upper bound");
  if ((p.hessian - p.hessian.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw DomainError("solve_qp: D is not symmetric");
}

struct SymmetricHessian {
  MatrixXd d;
  bool singular;
};

// Symmetrised D with round-off negative eigenvalues clipped to zero.
SymmetricHessian psd_hessian(const MatrixXd& d) {
  MatrixXd sym = 0.5 * (d + d.transpose());
  if (sym.rows() == 0) return {sym, false};
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(sym);
  const double floor = eig.eigenvalues().minCoeff();
  const double top = std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
  if (floor < -1e-8) throw DomainError("solve_qp: D is not positive semidefinite (eigenvalue " + std::to_string(floor) + ")");
  if (floor < 0.0) {
    const VectorXd clipped = eig.eigenvalues().cwiseMax(0.0);
    sym = eig.eigenvectors() * clipped.asDiagonal() * eig.eigenvectors().transpose();
    sym = 0.5 * (sym + sym.transpose());
  }
  return {sym, floor <= 1e-10 * top};
}

VectorXd start_point(const QPProblem& p) {
  VectorXd x = VectorXd::Zero(p.dimension());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (p.lower.size() && std::isfinite(p.lower[i])) x[i] = std::max(x[i], p.lower[i]);
    if (p.upper.size() && std::isfinite(p.upper[i])) x[i] = std::min(x[i], p.upper[i]);
  }
  return x;
}

}  // namespace

const char* to_string(QPStatus status) {
  switch (status) {
    case QPStatus::optimal:
      return "optimal";
    case QPStatus::infeasible:
      return "infeasible";
    case QPStatus::max_iterations:
      return "max-iterations";
  }
  return "?";
}

double KKTResiduals::worst() const {
  return std::max({stationarity, primal_feasibility, complementarity, dual_feasibility});
}

double max_violation(const QPProblem& p, const VectorXd& u) {
  double v = 0.0;
  if (p.ineq.rows() > 0) v = std::max(v, (p.ineq * u + p.ineq_offset).maxCoeff());
  if (p.eq.rows() > 0) v = std::max(v, (p.eq * u + p.eq_offset).cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < p.lower.size(); ++i)
    if (std::isfinite(p.lower[i])) v = std::max(v, p.lower[i] - u[i]);
  for (Eigen::Index i = 0; i < p.upper.size(); ++i)
    if (std::isfinite(p.upper[i])) v = std::max(v, u[i] - p.upper[i]);
  return v;
}

KKTResiduals kkt_residuals(const QPProblem& p, const QPSolution& s) {
  KKTResiduals r;
  const auto m = p.dimension();
  VectorXd grad = p.hessian * s.u + p.linear;
  auto multiplier = [](const VectorXd& v, Eigen::Index i) { return v.size() > i ? v[i] : 0.0; };
  for (Eigen::Index k = 0; k < p.ineq.rows(); ++k) {
    const double lambda = multiplier(s.ineq_multipliers, k);
    grad += lambda * p.ineq.row(k).transpose();
    const double slack = p.ineq.row(k).dot(s.u) + p.ineq_offset[k];
    r.complementarity = std::max(r.complementarity, std::abs(lambda * slack));
    r.dual_feasibility = std::max(r.dual_feasibility, -lambda);
  }
  for (Eigen::Index k = 0; k < p.eq.rows(); ++k) grad += multiplier(s.eq_multipliers, k) * p.eq.row(k).transpose();
  for (Eigen::Index i = 0; i < m; ++i) {
    const double lo = multiplier(s.lower_multipliers, i);
    const double hi = multiplier(s.upper_multipliers, i);
    grad[i] += hi - lo;
    if (p.lower.size() && std::isfinite(p.lower[i]))
      r.complementarity = std::max(r.complementarity, std::abs(lo * (p.lower[i] - s.u[i])));
    if (p.upper.size() && std::isfinite(p.upper[i]))
      r.complementarity = std::max(r.complementarity, std::abs(hi * (s.u[i] - p.upper[i])));
    r.dual_feasibility = std::max({r.dual_feasibility, -lo, -hi});
  }
  r.stationarity = m > 0 ? grad.lpNorm<Eigen::Infinity>() : 0.0;
  r.primal_feasibility = max_violation(p, s.u);
  return r;
}

QPSolution solve_qp(const QPProblem& problem, const QPOptions& options) {
  validate_problem(problem);
  const int m = problem.dimension();
  const int cap = options.max_iterations > 0 ? options.max_iterations : std::max(50 * m, 50);
  // Only singular D is regularised, so strictly convex problems are solved
  // unperturbed.
  const auto hessian = psd_hessian(problem.hessian);
  const double rho = hessian.singular ? options.regularization : 0.0;
  const MatrixXd h = hessian.d + rho * MatrixXd::Identity(m, m);

  QPSolution sol;
  sol.ineq_multipliers = VectorXd::Zero(problem.ineq.rows());
  sol.eq_multipliers = VectorXd::Zero(problem.eq.rows());
  sol.lower_multipliers = VectorXd::Zero(m);
  sol.upper_multipliers = VectorXd::Zero(m);

  for (Eigen::Index i = 0; i < problem.lower.size() && i < problem.upper.size(); ++i) {
    if (problem.lower[i] > problem.upper[i]) {
      sol.u = start_point(problem);
      sol.status = QPStatus::infeasible;
      sol.max_violation = problem.lower[i] - problem.upper[i];
      sol.objective = problem.objective(sol.u);
      sol.kkt = kkt_residuals(problem, sol);
      return sol;
    }
  }

  const auto rows = gather_inequalities(problem);
  const auto n_general = problem.ineq.rows();
  const auto n_rows = rows.g.rows();
  const MatrixXd e_all = problem.eq.rows() > 0 ? MatrixXd(problem.eq) : MatrixXd(0, m);
  const VectorXd d_all = -problem.eq_offset;
  const auto eq_keep = independent_rows(e_all);
  MatrixXd e_indep(static_cast<Eigen::Index>(eq_keep.size()), m);
  for (std::size_t k = 0; k < eq_keep.size(); ++k) e_indep.row(static_cast<Eigen::Index>(k)) = e_all.row(eq_keep[k]);

  // Phase 1: minimise the largest violation t of general rows and equalities,
  // with bounds kept hard.
  VectorXd x = start_point(problem);
  int total_changes = 0;
  if (max_violation(problem, x) > 0.0) {
    const Eigen::Index n1 = m + 1;
    const Eigen::Index n_eq_all = e_all.rows();
    const Eigen::Index r1 = n_rows + 2 * n_eq_all + 1;
    MatrixXd g1 = MatrixXd::Zero(r1, n1);
    VectorXd h1 = VectorXd::Zero(r1);
    g1.topLeftCorner(n_rows, m) = rows.g;
    h1.head(n_rows) = rows.h;
    for (Eigen::Index r = 0; r < n_general; ++r) g1(r, m) = -1.0;
    for (Eigen::Index k = 0; k < n_eq_all; ++k) {
      g1.block(n_rows + 2 * k, 0, 1, m) = e_all.row(k);
      g1(n_rows + 2 * k, m) = -1.0;
      h1[n_rows + 2 * k] = d_all[k];
      g1.block(n_rows + 2 * k + 1, 0, 1, m) = -e_all.row(k);
      g1(n_rows + 2 * k + 1, m) = -1.0;
      h1[n_rows + 2 * k + 1] = -d_all[k];
    }
    g1(r1 - 1, m) = -1.0;  // t >= 0

    double t0 = 0.0;
    if (n_general > 0) t0 = std::max(t0, (rows.g.topRows(n_general) * x - rows.h.head(n_general)).maxCoeff());
    if (n_eq_all > 0) t0 = std::max(t0, (e_all * x - d_all).cwiseAbs().maxCoeff());
    VectorXd y(n1);
    y << x, t0;
    const MatrixXd h1_hess = options.regularization * MatrixXd::Identity(n1, n1);
    VectorXd c1 = VectorXd::Zero(n1);
    c1[m] = 1.0;
    auto phase1 = active_set(h1_hess, c1, g1, h1, MatrixXd(0, n1), y, 50 * static_cast<int>(n1));
    total_changes += phase1.changes;
    x = phase1.x.head(m);
    const double worst = max_violation(problem, x);
    if (worst > options.feasibility_tolerance) {
      sol.u = x;
      sol.status = phase1.converged ? QPStatus::infeasible : QPStatus::max_iterations;
      sol.max_violation = worst;
      sol.iterations = total_changes;
      sol.objective = problem.objective(x);
      sol.kkt = kkt_residuals(problem, sol);
      return sol;
    }
  }

  auto phase2 = active_set(h, problem.linear, rows.g, rows.h, e_indep, x, cap);
  total_changes += phase2.changes;

  sol.u = phase2.x;
  sol.iterations = total_changes;
  for (Eigen::Index r = 0; r < n_rows; ++r) {
    const auto& ref = rows.refs[static_cast<std::size_t>(r)];
    const double lambda = phase2.ineq_multipliers[r];
    switch (ref.kind) {
      case RowKind::general:
        sol.ineq_multipliers[ref.index] = lambda;
        break;
      case RowKind::lower:
        sol.lower_multipliers[ref.index] = lambda;
        break;
      case RowKind::upper:
        sol.upper_multipliers[ref.index] = lambda;
        break;
    }
  }
  for (std::size_t k = 0; k < eq_keep.size(); ++k)
    sol.eq_multipliers[eq_keep[k]] = phase2.eq_multipliers[static_cast<Eigen::Index>(k)];
  for (int w : phase2.working)
    if (rows.refs[static_cast<std::size_t>(w)].kind == RowKind::general)
      sol.active_inequalities.push_back(rows.refs[static_cast<std::size_t>(w)].index);
  std::sort(sol.active_inequalities.begin(), sol.active_inequalities.end());

  sol.objective = problem.objective(sol.u);
  sol.max_violation = max_violation(problem, sol.u);
  sol.kkt = kkt_residuals(problem, sol);
  const bool certified = sol.kkt.stationarity < 1e-6 && sol.kkt.complementarity < 1e-6 &&
                         sol.kkt.dual_feasibility < 1e-6 && sol.max_violation < 1e-8;
  sol.status = phase2.converged && certified ? QPStatus::optimal : QPStatus::max_iterations;
  return sol;
}

// ---------------------------------------------------------------------------
// Debug dump

namespace {

void write_matrix(std::ostream& out, const char* name, const MatrixXd& m) {
  out << "%matrix " << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0.0) out << i + 1 << ' ' << j + 1 << ' ' << m(i, j) << '\n';
  out << "%end\n";
}

}  // namespace

void write_qp_dump(std::ostream& out, const QPProblem& p) {
  const auto old_precision = out.precision(17);
  out << "%%CapStudioQP 1\n";
  write_matrix(out, "hessian", p.hessian);
  write_matrix(out, "linear", p.linear);
  write_matrix(out, "ineq", p.ineq);
  write_matrix(out, "ineq_offset", p.ineq_offset);
  write_matrix(out, "eq", p.eq);
  write_matrix(out, "eq_offset", p.eq_offset);
  write_matrix(out, "lower", p.lower);
  write_matrix(out, "upper", p.upper);
  out.precision(old_precision);
}

QPProblem read_qp_dump(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("%%CapStudioQP", 0) != 0) throw ParseError("not a QP dump");
  QPProblem p;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream head(line);
    std::string tag, name;
    Eigen::Index rows = 0, cols = 0;
    head >> tag >> name >> rows >> cols;
    if (tag != "%matrix" || rows < 0 || cols < 0) throw ParseError("QP dump: bad header '" + line + "'");
    MatrixXd m = MatrixXd::Zero(rows, cols);
    while (std::getline(in, line) && line != "%end") {
      std::istringstream entry(line);
      Eigen::Index i = 0, j = 0;
      std::string value;
      entry >> i >> j >> value;
      if (i < 1 || j < 1 || i > rows || j > cols) throw ParseError("QP dump: entry out of range");
      m(i - 1, j - 1) = std::stod(value);
    }
    if (name == "hessian") p.hessian = m;
    else if (name == "linear") p.linear = cols ? VectorXd(m.col(0)) : VectorXd(rows);
    else if (name == "ineq") p.ineq = m;
    else if (name == "ineq_offset") p.ineq_offset = cols ? VectorXd(m.col(0)) : VectorXd(rows);
    else if (name == "eq") p.eq = m;
    else if (name == "eq_offset") p.eq_offset = cols ? VectorXd(m.col(0)) : VectorXd(rows);
    else if (name == "lower") p.lower = cols ? VectorXd(m.col(0)) : VectorXd(rows);
    else if (name == "upper") p.upper = cols ? VectorXd(m.col(0)) : VectorXd(rows);
    else throw ParseError("QP dump: unknown block " + name);
  }
  return p;
}

}  // namespace capstudio
