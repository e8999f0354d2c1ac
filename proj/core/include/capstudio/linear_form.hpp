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

#ifndef CAPSTUDIO_LINEAR_FORM_HPP
#define CAPSTUDIO_LINEAR_FORM_HPP

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "capstudio/criterion_set.hpp"

namespace capstudio {

/// An affine function coeffs . u + constant over the canonical coefficient
/// vector u of a capacity on n criteria.
struct LinearForm {
  Eigen::VectorXd coeffs;
  double constant = 0.0;

  static LinearForm zero(int n);

  double operator()(const Eigen::VectorXd& u) const { return coeffs.dot(u) + constant; }

  LinearForm& operator+=(const LinearForm& other);
  LinearForm& operator-=(const LinearForm& other);
  LinearForm& operator*=(double s);
  LinearForm& operator+=(double s) {
    constant += s;
    return *this;
  }
};

LinearForm operator+(LinearForm a, const LinearForm& b);
LinearForm operator-(LinearForm a, const LinearForm& b);
LinearForm operator*(double s, LinearForm a);
LinearForm operator+(LinearForm a, double s);
LinearForm operator-(LinearForm a, double s);
inline LinearForm operator-(double s, LinearForm a) { return -1.0 * std::move(a) + s; }

/// mu(s) as a form: a unit coefficient for proper subsets, the constant 0 or 1
/// for the empty and full sets.
LinearForm subset_form(const CriterionSet& s);

/// A labelled list of affine rows; whether each row means "<= 0" or "= 0" is
/// decided by the container that holds it.
class LinearSystem {
 public:
  explicit LinearSystem(int n) : n_(n) {}

  int n() const { return n_; }
  int rows() const { return static_cast<int>(forms_.size()); }
  bool empty() const { return forms_.empty(); }

  void add(LinearForm form, std::string label);
  void append(const LinearSystem& other);

  const LinearForm& form(int row) const { return forms_[static_cast<std::size_t>(row)]; }
  const std::string& label(int row) const { return labels_[static_cast<std::size_t>(row)]; }

  /// Dense coefficient matrix A (rows x (2^n - 2)).
  Eigen::MatrixXd matrix() const;
  /// Constant vector b, so that the rows read A u + b.
  Eigen::VectorXd offsets() const;
  /// A u + b.
  Eigen::VectorXd evaluate(const Eigen::VectorXd& u) const;

 private:
  int n_;
  std::vector<LinearForm> forms_;
  std::vector<std::string> labels_;
};

/// Inequalities (rows <= 0) and equalities (rows = 0) over one coefficient vector.
struct ConstraintSet {
  LinearSystem inequalities;
  LinearSystem equalities;

  explicit ConstraintSet(int n) : inequalities(n), equalities(n) {}
  void append(const ConstraintSet& other) {
    inequalities.append(other.inequalities);
    equalities.append(other.equalities);
  }
};

}  // namespace capstudio

#endif  // CAPSTUDIO_LINEAR_FORM_HPP
