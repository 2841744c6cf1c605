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

// Feasibility function, Monte Carlo flexibility estimate, mean
// infeasibility, and the feasible center of a fixed design.

#ifndef FLEXDESIGN_FLEXIBILITY_HPP_
#define FLEXDESIGN_FLEXIBILITY_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "flexdesign/lp.hpp"
#include "flexdesign/milp.hpp"
#include "flexdesign/model.hpp"
#include "flexdesign/sampling.hpp"

namespace flexdesign {

inline constexpr double kDefaultBigU = 10000.0;

struct FeasibilityOptions {
  double feas_tol = 1e-7;
  SolverOptions lp;
};

struct FeasibilityResult {
  // Smallest uniform violation bound u over all recourse choices. +inf when
  // the balances cannot hold for any flow.
  double psi = 0.0;
  std::vector<double> arc_flow;
  std::vector<double> supply;
  bool feasible = false;  // psi <= feas_tol
};

FeasibilityResult Psi(const Network& net, const DesignVector& design,
                      std::span<const double> theta,
                      const FeasibilityOptions& opts = {});

struct SfEstimate {
  double value = 0.0;
  int count = 0;
  std::vector<std::uint8_t> feasible;  // per sample
  std::vector<double> psi;             // per sample
  DesignVector design;
};

// One LP per sample; throws SolverError naming the sample on LP failure.
SfEstimate EstimateSf(const Network& net, const DesignVector& design,
                      const SampleSet& samples,
                      const FeasibilityOptions& opts = {});

// (1/K) sum max(psi, 0).
double MeanInfeasibility(const Network& net, const DesignVector& design,
                         const SampleSet& samples,
                         const FeasibilityOptions& opts = {});

struct CenterOptions {
  // Optional box on theta, applied before solving.
  std::vector<double> theta_lower;
  std::vector<double> theta_upper;
  // Used for the fallback box mean +- 10 sqrt(V_ii) when the problem is
  // unbounded.
  std::optional<GaussianSpec> spec;
  SolverOptions lp;
};

struct FeasibleCenter {
  std::vector<double> theta;
  double psi = 0.0;
  bool unbounded = false;  // raw problem unbounded below
  bool boxed = false;      // result comes from the fallback box
};

FeasibleCenter ComputeFeasibleCenter(const Network& net,
                                     const DesignVector& design,
                                     const CenterOptions& opts = {});

// Single-sample indicator program: min yU s.t. rows <= yU, balances.
MixedIntegerProgram BuildIndicatorProgram(const Network& net,
                                          const DesignVector& design,
                                          std::span<const double> theta,
                                          double big_u = kDefaultBigU);

// All samples at once: min (1/K) sum y^k U with the same rows per sample.
MixedIntegerProgram BuildAggregatedIndicatorProgram(
    const Network& net, const DesignVector& design, const SampleSet& samples,
    double big_u = kDefaultBigU);

// min (1/K) sum u^k with u^k >= 0 bounding every row of sample k.
LinearProgram BuildMeanInfeasibilityProgram(const Network& net,
                                            const DesignVector& design,
                                            const SampleSet& samples);

}  // namespace flexdesign

#endif  // FLEXDESIGN_FLEXIBILITY_HPP_
