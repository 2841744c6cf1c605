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

#include "flexdesign/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "flexdesign/error.hpp"

namespace flexdesign {
namespace {

constexpr double kNegativePivotTol = 1e-10;
constexpr double kResidualTol = 1e-9;

// Uniform on the open interval (0, 1) from the top 53 bits.
double OpenUniform(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : rng_(seed) {}

  double Next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = OpenUniform(rng_);
    const double u2 = OpenUniform(rng_);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

 private:
  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace

DenseMatrix DenseMatrix::Identity(int n, double scale) {
  DenseMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = scale;
  return m;
}

void GaussianSpec::Check() const {
  const int n = dim();
  if (covariance.rows != n || covariance.cols != n) {
    throw ValidationError("covariance shape does not match mean length " +
                          std::to_string(n));
  }
  for (double m : mean) {
    if (!std::isfinite(m)) throw ValidationError("non-finite mean entry");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double a = covariance(i, j);
      if (!std::isfinite(a)) {
        throw ValidationError("non-finite covariance entry");
      }
      const double b = covariance(j, i);
      if (std::abs(a - b) > 1e-12 * (1.0 + std::abs(a) + std::abs(b))) {
        throw ValidationError("covariance not symmetric");
      }
    }
  }
}

CholeskyResult CholeskyFactor(const DenseMatrix& cov) {
  const int n = cov.rows;
  if (cov.cols != n) throw ValidationError("covariance not square");
  CholeskyResult out;
  out.lower = DenseMatrix(n, n);
  DenseMatrix& l = out.lower;
  double scale = 0.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(cov(i, i)));
  const double neg_tol = kNegativePivotTol * std::max(1.0, scale);
  const double res_tol = kResidualTol * std::max(1.0, scale);

  for (int j = 0; j < n; ++j) {
    double pivot = cov(j, j);
    for (int k = 0; k < j; ++k) pivot -= l(j, k) * l(j, k);
    if (pivot < -neg_tol) {
      throw ValidationError("covariance not positive semidefinite (pivot " +
                            std::to_string(pivot) + " at row " +
                            std::to_string(j + 1) + ")");
    }
    if (pivot <= neg_tol) {
      if (pivot < 0.0) out.jitter = std::max(out.jitter, -pivot);
      // Zero pivot: the rest of the column must vanish too.
      for (int i = j + 1; i < n; ++i) {
        double r = cov(i, j);
        for (int k = 0; k < j; ++k) r -= l(i, k) * l(j, k);
        if (std::abs(r) > res_tol) {
          throw ValidationError(
              "covariance not positive semidefinite (row " +
              std::to_string(j + 1) + ")");
        }
      }
      continue;  // column j of l stays zero
    }
    const double d = std::sqrt(pivot);
    l(j, j) = d;
    for (int i = j + 1; i < n; ++i) {
      double r = cov(i, j);
      for (int k = 0; k < j; ++k) r -= l(i, k) * l(j, k);
      l(i, j) = r / d;
    }
  }
  return out;
}

SampleSet SampleSet::Subset(std::span<const int> rows) const {
  SampleSet s;
  s.seed = seed;
  s.generator = generator;
  s.values = DenseMatrix(static_cast<int>(rows.size()), dim());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    auto src = sample(rows[r]);
    std::copy(src.begin(), src.end(),
              s.values.data.begin() + static_cast<std::ptrdiff_t>(r) * dim());
  }
  return s;
}

SampleSet DrawSamples(const GaussianSpec& spec, int count,
                      std::uint64_t seed) {
  if (count < 0) throw ValidationError("sample count must be non-negative");
  spec.Check();
  const int n = spec.dim();
  const CholeskyResult chol = CholeskyFactor(spec.covariance);
  SampleSet s;
  s.seed = seed;
  s.values = DenseMatrix(count, n);
  NormalStream normals(seed);
  std::vector<double> g(n);
  for (int k = 0; k < count; ++k) {
    for (int i = 0; i < n; ++i) g[i] = normals.Next();
    for (int i = 0; i < n; ++i) {
      double v = spec.mean[i];
      for (int j = 0; j <= i; ++j) v += chol.lower(i, j) * g[j];
      s.values(k, i) = v;
    }
  }
  return s;
}

Moments EmpiricalMoments(const SampleSet& samples, bool with_covariance) {
  const int k = samples.size();
  const int n = samples.dim();
  if (k < 1) throw ValidationError("empirical moments need at least 1 sample");
  if (with_covariance && k < 2) {
    throw ValidationError("empirical covariance needs at least 2 samples");
  }
  Moments m;
  m.mean.assign(n, 0.0);
  for (int r = 0; r < k; ++r) {
    for (int i = 0; i < n; ++i) m.mean[i] += samples.values(r, i);
  }
  for (double& v : m.mean) v /= k;
  if (!with_covariance) return m;
  m.covariance = DenseMatrix(n, n);
  for (int r = 0; r < k; ++r) {
    for (int i = 0; i < n; ++i) {
      const double di = samples.values(r, i) - m.mean[i];
      for (int j = 0; j <= i; ++j) {
        m.covariance(i, j) += di * (samples.values(r, j) - m.mean[j]);
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      m.covariance(i, j) /= (k - 1);
      m.covariance(j, i) = m.covariance(i, j);
    }
  }
  return m;
}

void WriteSamples(const SampleSet& samples, std::ostream& out) {
  out << samples.dim() << ' ' << samples.size() << ' ' << samples.seed << ' '
      << samples.generator << '\n';
  char buf[32];
  for (int k = 0; k < samples.size(); ++k) {
    for (int i = 0; i < samples.dim(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", samples.values(k, i));
      if (i > 0) out << ' ';
      out << buf;
    }
    out << '\n';
  }
}

SampleSet ReadSamples(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty sample file", 1, 1);
  std::istringstream header(line);
  long long n = -1;
  long long k = -1;
  SampleSet s;
  if (!(header >> n >> k >> s.seed >> s.generator) || n < 0 || k < 0) {
    throw ParseError("bad sample header, expected 'n_theta K seed generator'",
                     1, 1);
  }
  s.values = DenseMatrix(static_cast<int>(k), static_cast<int>(n));
  for (long long r = 0; r < k; ++r) {
    const int line_no = static_cast<int>(r) + 2;
    if (!std::getline(in, line)) {
      throw ParseError("expected " + std::to_string(k) + " sample rows",
                       line_no, 1);
    }
    std::istringstream row(line);
    for (long long i = 0; i < n; ++i) {
      std::string tok;
      if (!(row >> tok)) {
        throw ParseError("too few values in sample row", line_no,
                         static_cast<int>(line.size()) + 1);
      }
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size() || !std::isfinite(v)) {
        throw ParseError("bad number '" + tok + "'", line_no,
                         static_cast<int>(line.find(tok)) + 1);
      }
      s.values(static_cast<int>(r), static_cast<int>(i)) = v;
    }
    std::string extra;
    if (row >> extra) {
      throw ParseError("too many values in sample row", line_no,
                       static_cast<int>(line.find(extra)) + 1);
    }
  }
  return s;
}

}  // namespace flexdesign
