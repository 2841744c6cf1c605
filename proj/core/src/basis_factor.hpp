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

#ifndef FLEXDESIGN_SRC_BASIS_FACTOR_HPP_
#define FLEXDESIGN_SRC_BASIS_FACTOR_HPP_

#include <memory>
#include <span>
#include <vector>

namespace flexdesign::internal {

// Sparse column of the basis matrix (row indices + values).
struct ColumnView {
  std::span<const int> rows;
  std::span<const double> values;
};

// LU factorization of a simplex basis followed by a product-form eta file.
// Refactorize() discards all etas.
class BasisFactor {
 public:
  BasisFactor();
  ~BasisFactor();
  BasisFactor(BasisFactor&&) noexcept;
  BasisFactor& operator=(BasisFactor&&) noexcept;

  // Returns false when the basis is (numerically) singular.
  bool Refactorize(int m, std::span<const ColumnView> columns);

  // rhs <- B^{-1} rhs
  void Ftran(std::vector<double>& rhs) const;
  // rhs <- B^{-T} rhs
  void Btran(std::vector<double>& rhs) const;

  // Replaces basis column `pos` by a column whose FTRAN image is `alpha`.
  void Update(int pos, const std::vector<double>& alpha);

  int num_updates() const { return static_cast<int>(etas_.size()); }

 private:
  struct Eta {
    int pos = 0;
    double pivot = 1.0;
    std::vector<int> index;
    std::vector<double> value;
  };
  struct Impl;

  int m_ = 0;
  std::unique_ptr<Impl> impl_;
  std::vector<Eta> etas_;
};

}  // namespace flexdesign::internal

#endif  // FLEXDESIGN_SRC_BASIS_FACTOR_HPP_
