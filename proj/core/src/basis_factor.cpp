// Copyright 2026 The flexdesign Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "basis_factor.hpp"

#include <cmath>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

namespace flexdesign::internal {

namespace {
constexpr double kEtaDropTol = 1e-14;
}  // namespace

struct BasisFactor::Impl {
  Eigen::SparseMatrix<double> matrix;
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  Eigen::VectorXd work;
};

BasisFactor::BasisFactor() : impl_(std::make_unique<Impl>()) {}
BasisFactor::~BasisFactor() = default;
BasisFactor::BasisFactor(BasisFactor&&) noexcept = default;
BasisFactor& BasisFactor::operator=(BasisFactor&&) noexcept = default;

bool BasisFactor::Refactorize(int m, std::span<const ColumnView> columns) {
  m_ = m;
  etas_.clear();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(columns.size() * 2);
  for (int j = 0; j < static_cast<int>(columns.size()); ++j) {
    const ColumnView& col = columns[j];
    for (std::size_t k = 0; k < col.rows.size(); ++k) {
      triplets.emplace_back(col.rows[k], j, col.values[k]);
    }
  }
  impl_->matrix.resize(m, m);
  impl_->matrix.setFromTriplets(triplets.begin(), triplets.end());
  impl_->matrix.makeCompressed();
  impl_->lu.analyzePattern(impl_->matrix);
  impl_->lu.factorize(impl_->matrix);
  // SparseLU only reports exact zero pivots; the simplex checks residuals
  // after every refactorization to catch near-singular bases.
  return impl_->lu.info() == Eigen::Success;
}

void BasisFactor::Ftran(std::vector<double>& rhs) const {
  Eigen::Map<Eigen::VectorXd> v(rhs.data(), m_);
  impl_->work = impl_->lu.solve(v);
  v = impl_->work;
  for (const Eta& eta : etas_) {
    const double xr = rhs[eta.pos] / eta.pivot;
    rhs[eta.pos] = xr;
    if (xr == 0.0) continue;
    for (std::size_t k = 0; k < eta.index.size(); ++k) {
      rhs[eta.index[k]] -= eta.value[k] * xr;
    }
  }
}

void BasisFactor::Btran(std::vector<double>& rhs) const {
  for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
    double acc = rhs[it->pos];
    for (std::size_t k = 0; k < it->index.size(); ++k) {
      acc -= it->value[k] * rhs[it->index[k]];
    }
    rhs[it->pos] = acc / it->pivot;
  }
  Eigen::Map<Eigen::VectorXd> v(rhs.data(), m_);
  impl_->work = impl_->lu.transpose().solve(v);
  v = impl_->work;
}

void BasisFactor::Update(int pos, const std::vector<double>& alpha) {
  Eta eta;
  eta.pos = pos;
  eta.pivot = alpha[pos];
  for (int i = 0; i < m_; ++i) {
    if (i == pos) continue;
    if (std::abs(alpha[i]) > kEtaDropTol) {
      eta.index.push_back(i);
      eta.value.push_back(alpha[i]);
    }
  }
  etas_.push_back(std::move(eta));
}

}  // namespace flexdesign::internal
