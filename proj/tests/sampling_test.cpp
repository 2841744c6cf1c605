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

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "flexdesign/error.hpp"
#include "flexdesign/sampling.hpp"

namespace flexdesign {
namespace {

DenseMatrix Matrix(int n, std::initializer_list<double> values) {
  DenseMatrix m(n, n);
  m.data.assign(values.begin(), values.end());
  return m;
}

TEST(CholeskyTest, IdentityFactorsToIdentity) {
  const CholeskyResult r = CholeskyFactor(DenseMatrix::Identity(3));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_EQ(r.lower(i, j), i == j ? 1.0 : 0.0);
  }
}

TEST(CholeskyTest, TwoByTwoReproducesMatrix) {
  const DenseMatrix a = Matrix(2, {4, 2, 2, 3});
  const DenseMatrix l = CholeskyFactor(a).lower;
  EXPECT_NEAR(l(0, 0), 2.0, 1e-15);
  EXPECT_NEAR(l(1, 0), 1.0, 1e-15);
  EXPECT_NEAR(l(1, 1), std::sqrt(2.0), 1e-15);
  EXPECT_EQ(l(0, 1), 0.0);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      double s = 0.0;
      for (int k = 0; k < 2; ++k) s += l(i, k) * l(j, k);
      EXPECT_NEAR(s, a(i, j), 1e-14);
    }
  }
}

TEST(CholeskyTest, IndefiniteIsRejected) {
  EXPECT_THROW(CholeskyFactor(Matrix(2, {1, 2, 2, 1})), ValidationError);
}

TEST(CholeskyTest, SemidefiniteZeroColumnAccepted) {
  const DenseMatrix l = CholeskyFactor(Matrix(2, {1, 0, 0, 0})).lower;
  EXPECT_EQ(l(0, 0), 1.0);
  EXPECT_EQ(l(1, 1), 0.0);
}

TEST(DrawSamplesTest, ZeroCovarianceReturnsMeanExactly) {
  GaussianSpec spec{{0.1, -3.7, 60.0}, DenseMatrix(3, 3)};
  const SampleSet s = DrawSamples(spec, 25, 9);
  ASSERT_EQ(s.size(), 25);
  for (int k = 0; k < s.size(); ++k) {
    for (int i = 0; i < 3; ++i) EXPECT_EQ(s.values(k, i), spec.mean[i]);
  }
}

TEST(DrawSamplesTest, StandardNormalMoments) {
  GaussianSpec spec{{0.0}, DenseMatrix::Identity(1)};
  const SampleSet s = DrawSamples(spec, 10000, 2024);
  const Moments m = EmpiricalMoments(s);
  EXPECT_NEAR(m.mean[0], 0.0, 0.05);
  EXPECT_NEAR(m.covariance(0, 0), 1.0, 0.1);
}

TEST(DrawSamplesTest, CorrelatedMomentsWithinFourSigma) {
  GaussianSpec spec{{1.0, -2.0}, Matrix(2, {4, 1.2, 1.2, 1})};
  const int k = 20000;
  const Moments m = EmpiricalMoments(DrawSamples(spec, k, 5));
  for (int i = 0; i < 2; ++i) {
    const double se = std::sqrt(spec.covariance(i, i) / k);
    EXPECT_NEAR(m.mean[i], spec.mean[i], 4.0 * se);
  }
  // Var of a sample covariance entry is (s_ii s_jj + s_ij^2) / (k - 1).
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double v = spec.covariance(i, i) * spec.covariance(j, j) +
                       spec.covariance(i, j) * spec.covariance(i, j);
      EXPECT_NEAR(m.covariance(i, j), spec.covariance(i, j),
                  4.0 * std::sqrt(v / (k - 1)));
    }
  }
}

TEST(DrawSamplesTest, SameInputsGiveIdenticalBits) {
  GaussianSpec spec{{0.0, 60.0, 10.0}, Matrix(3, {80, 0, 0, 0, 80, 0, 0, 0,
                                                  120})};
  const SampleSet a = DrawSamples(spec, 300, 42);
  const SampleSet b = DrawSamples(spec, 300, 42);
  EXPECT_EQ(a.values.data, b.values.data);
  EXPECT_EQ(a.generator, kGeneratorTag);
  const SampleSet c = DrawSamples(spec, 300, 43);
  EXPECT_NE(a.values.data, c.values.data);
}

TEST(DrawSamplesTest, StreamIsMersenneBoxMuller) {
  GaussianSpec spec{{0.0}, DenseMatrix::Identity(1)};
  const SampleSet s = DrawSamples(spec, 4, 77);
  std::mt19937_64 rng(77);
  auto uniform = [&] {
    return (static_cast<double>(rng() >> 11) + 0.5) / 9007199254740992.0;
  };
  for (int pair = 0; pair < 2; ++pair) {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    EXPECT_EQ(s.values(2 * pair, 0), r * std::cos(t));
    EXPECT_EQ(s.values(2 * pair + 1, 0), r * std::sin(t));
  }
}

TEST(EmpiricalMomentsTest, ConstantRowsHaveZeroCovariance) {
  SampleSet s;
  s.values = DenseMatrix(4, 2, 3.5);
  const Moments m = EmpiricalMoments(s);
  for (double v : m.covariance.data) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(m.mean[0], 3.5);
}

TEST(EmpiricalMomentsTest, TwoRowsUnbiased) {
  SampleSet s;
  s.values = DenseMatrix(2, 1);
  s.values(0, 0) = 0.0;
  s.values(1, 0) = 2.0;
  const Moments m = EmpiricalMoments(s);
  EXPECT_DOUBLE_EQ(m.mean[0], 1.0);
  EXPECT_DOUBLE_EQ(m.covariance(0, 0), 2.0);
}

TEST(EmpiricalMomentsTest, SingleRowCovarianceIsAnError) {
  SampleSet s;
  s.values = DenseMatrix(1, 1, 1.0);
  EXPECT_THROW(EmpiricalMoments(s), ValidationError);
  EXPECT_NO_THROW(EmpiricalMoments(s, false));
}

TEST(SampleFileTest, RoundTripIsExact) {
  GaussianSpec spec{{0.0, 1.0}, Matrix(2, {2, 0.3, 0.3, 1})};
  const SampleSet a = DrawSamples(spec, 17, 123456789012345ULL);
  std::stringstream text;
  WriteSamples(a, text);
  const SampleSet b = ReadSamples(text);
  EXPECT_EQ(b.values.data, a.values.data);
  EXPECT_EQ(b.seed, a.seed);
  EXPECT_EQ(b.generator, a.generator);
}

TEST(SampleFileTest, TruncatedFileIsAnError) {
  std::stringstream text("1 3 0 custom\n0.5\n1.5\n");
  EXPECT_THROW(ReadSamples(text), Error);
}

TEST(SubsetTest, KeepsRowsInOrder) {
  GaussianSpec spec{{0.0}, DenseMatrix::Identity(1)};
  const SampleSet s = DrawSamples(spec, 5, 1);
  const std::vector<int> rows{4, 1};
  const SampleSet t = s.Subset(rows);
  ASSERT_EQ(t.size(), 2);
  EXPECT_EQ(t.values(0, 0), s.values(4, 0));
  EXPECT_EQ(t.values(1, 0), s.values(1, 0));
}

}  // namespace
}  // namespace flexdesign
