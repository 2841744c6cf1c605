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

// Multivariate Gaussian sampling of the uncertain parameters.

#ifndef FLEXDESIGN_SAMPLING_HPP_
#define FLEXDESIGN_SAMPLING_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace flexdesign {

// Row-major dense matrix.
struct DenseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(int r, int c, double fill = 0.0)
      : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, fill) {}

  double& operator()(int r, int c) {
    return data[static_cast<std::size_t>(r) * cols + c];
  }
  double operator()(int r, int c) const {
    return data[static_cast<std::size_t>(r) * cols + c];
  }
  std::span<const double> row(int r) const {
    return {data.data() + static_cast<std::size_t>(r) * cols,
            static_cast<std::size_t>(cols)};
  }

  static DenseMatrix Identity(int n, double scale = 1.0);
};

struct GaussianSpec {
  std::vector<double> mean;
  DenseMatrix covariance;

  int dim() const { return static_cast<int>(mean.size()); }
  // Throws ValidationError on shape mismatch, asymmetry or non-finite data.
  void Check() const;
};

struct CholeskyResult {
  DenseMatrix lower;    // covariance = lower * lower^T
  double jitter = 0.0;  // largest negative pivot clamped to zero
};

// Semidefinite Cholesky. Zero pivots are accepted when the remaining column
// is also zero; anything clearly indefinite throws ValidationError.
CholeskyResult CholeskyFactor(const DenseMatrix& covariance);

inline constexpr const char* kGeneratorTag = "mt19937_64/box-muller/v1";

struct SampleSet {
  DenseMatrix values;  // K rows, one sample each
  std::uint64_t seed = 0;
  std::string generator = kGeneratorTag;

  int size() const { return values.rows; }
  int dim() const { return values.cols; }
  std::span<const double> sample(int k) const { return values.row(k); }

  // Keeps the listed rows, in order.
  SampleSet Subset(std::span<const int> rows) const;
};

SampleSet DrawSamples(const GaussianSpec& spec, int count,
                      std::uint64_t seed);

struct Moments {
  std::vector<double> mean;
  DenseMatrix covariance;  // unbiased; empty when not requested
};

Moments EmpiricalMoments(const SampleSet& samples,
                         bool with_covariance = true);

// Text form: a header "n_theta K seed generator", then K rows.
void WriteSamples(const SampleSet& samples, std::ostream& out);
SampleSet ReadSamples(std::istream& in);

}  // namespace flexdesign

#endif  // FLEXDESIGN_SAMPLING_HPP_
