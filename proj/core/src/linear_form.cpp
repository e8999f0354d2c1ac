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

#include "capstudio/linear_form.hpp"

#include "capstudio/errors.hpp"

namespace capstudio {

namespace {

void require_same_size(const LinearForm& a, const LinearForm& b) {
  if (a.coeffs.size() != b.coeffs.size()) throw DimensionError("linear forms over different n");
}

}  // namespace

LinearForm LinearForm::zero(int n) {
  require_criterion_count(n);
  return {Eigen::VectorXd::Zero(coefficient_count(n)), 0.0};
}

LinearForm& LinearForm::operator+=(const LinearForm& other) {
  require_same_size(*this, other);
  coeffs += other.coeffs;
  constant += other.constant;
  return *this;
}

LinearForm& LinearForm::operator-=(const LinearForm& other) {
  require_same_size(*this, other);
  coeffs -= other.coeffs;
  constant -= other.constant;
  return *this;
}

LinearForm& LinearForm::operator*=(double s) {
  coeffs *= s;
  constant *= s;
  return *this;
}

LinearForm operator+(LinearForm a, const LinearForm& b) { return a += b; }
LinearForm operator-(LinearForm a, const LinearForm& b) { return a -= b; }
LinearForm operator*(double s, LinearForm a) { return a *= s; }
LinearForm operator+(LinearForm a, double s) { return a += s; }
LinearForm operator-(LinearForm a, double s) { return a += -s; }

LinearForm subset_form(const CriterionSet& s) {
  auto form = LinearForm::zero(s.n());
  if (s.is_full()) {
    form.constant = 1.0;
  } else if (!s.is_empty()) {
    form.coeffs[coefficient_index(s)] = 1.0;
  }
  return form;
}

void LinearSystem::add(LinearForm form, std::string label) {
  if (form.coeffs.size() != coefficient_count(n_))
    throw DimensionError("row '" + label + "' has the wrong width");
  forms_.push_back(std::move(form));
  labels_.push_back(std::move(label));
}

void LinearSystem::append(const LinearSystem& other) {
  if (other.n_ != n_) throw DimensionError("cannot append rows over a different n");
  forms_.insert(forms_.end(), other.forms_.begin(), other.forms_.end());
  labels_.insert(labels_.end(), other.labels_.begin(), other.labels_.end());
}

Eigen::MatrixXd LinearSystem::matrix() const {
  Eigen::MatrixXd a(rows(), coefficient_count(n_));
  for (int r = 0; r < rows(); ++r) a.row(r) = form(r).coeffs.transpose();
  return a;
}

Eigen::VectorXd LinearSystem::offsets() const {
  Eigen::VectorXd b(rows());
  for (int r = 0; r < rows(); ++r) b[r] = form(r).constant;
  return b;
}

Eigen::VectorXd LinearSystem::evaluate(const Eigen::VectorXd& u) const {
  Eigen::VectorXd out(rows());
  for (int r = 0; r < rows(); ++r) out[r] = form(r)(u);
  return out;
}

}  // namespace capstudio
