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

// Best-bound branch and bound for programs with binary variables.

#ifndef FLEXDESIGN_MILP_HPP_
#define FLEXDESIGN_MILP_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "flexdesign/lp.hpp"

namespace flexdesign {

struct MixedIntegerProgram {
  LinearProgram lp;
  std::vector<int> binaries;  // columns restricted to {0, 1}

  // Throws std::invalid_argument on a bad LP or a binary column whose bounds
  // leave [0, 1].
  void Validate() const;
};

enum class MilpStatus {
  kOptimal,
  kInfeasible,
  kTimeLimitWithIncumbent,
  kTimeLimitNoIncumbent,
};

const char* ToString(MilpStatus status);

struct MilpNodeEvent {
  std::int64_t node = 0;
  int depth = 0;
  double node_bound = 0.0;  // LP objective at this node
  double best_bound = 0.0;  // over all open nodes, including this one
  bool has_incumbent = false;
  double incumbent = 0.0;
};

struct MilpOptions {
  double int_tol = 1e-6;
  double mip_gap_tol = 1e-8;  // absolute
  double time_limit = kInf;   // seconds
  std::int64_t node_limit = -1;
  bool root_rounding = true;
  SolverOptions lp;
  std::function<void(const MilpNodeEvent&)> on_node;
  // When set, every node relaxation is written as <prefix><node>.mps.
  std::string node_mps_prefix;
};

struct MilpSolution {
  MilpStatus status = MilpStatus::kTimeLimitNoIncumbent;
  std::vector<double> x;
  // Final basis of the LP that produced x, with the binaries fixed.
  std::vector<VarStatus> basis;
  double objective = 0.0;
  double best_bound = 0.0;
  double gap = 0.0;
  double root_bound = 0.0;
  std::int64_t nodes = 0;
  std::int64_t lp_iterations = 0;
  double wall_time = 0.0;
};

MilpSolution SolveMilp(const MixedIntegerProgram& mip,
                       const MilpOptions& opts = {});

// Solution of the continuous relaxation (binaries relaxed to [0, 1]).
LpSolution LpBound(const MixedIntegerProgram& mip,
                   const SolverOptions& opts = {});

}  // namespace flexdesign

#endif  // FLEXDESIGN_MILP_HPP_
