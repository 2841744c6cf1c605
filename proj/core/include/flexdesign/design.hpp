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

// Scenario-based design: budget-capped flexibility maximization, its
// continuous relaxation with rounding, flexibility-floored cost
// minimization, Pareto sweeps and front comparison.

#ifndef FLEXDESIGN_DESIGN_HPP_
#define FLEXDESIGN_DESIGN_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "flexdesign/flexibility.hpp"
#include "flexdesign/milp.hpp"
#include "flexdesign/model.hpp"
#include "flexdesign/sampling.hpp"

namespace flexdesign {

enum class FormulationMode { kMixedInteger, kContinuous };
enum class Direction { kMaxFlexibility, kMinCost };

const char* ToString(FormulationMode mode);
const char* ToString(Direction direction);

// Column layout: d^a (one per arc), d^s (one per supplier), then for each
// sample k the block a^k, s^k, y^k. Rows: one block of capacity and balance
// rows per sample, then a single budget row (cost cap or flexibility floor).
struct ScenarioProgram {
  Network network;
  CostSpec cost;
  SampleSet samples;
  FormulationMode mode = FormulationMode::kMixedInteger;
  Direction direction = Direction::kMaxFlexibility;
  double epsilon = 0.0;
  double big_u = kDefaultBigU;

  MixedIntegerProgram program;  // binaries empty in continuous mode
  std::vector<int> design_arc;
  std::vector<int> design_supplier;
  std::vector<int> indicator;  // y^k column per sample
  int block_rows = 0;
  int budget_row = -1;

  int num_samples() const { return samples.size(); }
  int flow_col(int k, int l) const {
    return indicator[k] - network.num_suppliers() - network.num_arcs() + l;
  }
  int supply_col(int k, int b) const {
    return indicator[k] - network.num_suppliers() + b;
  }
  int block_row(int k) const { return k * block_rows; }
};

// epsilon is the cost cap for kMaxFlexibility and the flexibility floor in
// [0, 1] for kMinCost.
ScenarioProgram BuildScenarioProgram(const Network& net, const CostSpec& cost,
                                     const SampleSet& samples,
                                     FormulationMode mode, Direction direction,
                                     double epsilon,
                                     double big_u = kDefaultBigU);

enum class PointStatus {
  kOptimal,     // proven optimal (MIP) or procedure completed (continuous)
  kTimeLimit,   // incumbent returned without proof
  kNoSolution,  // limit reached before any design was found
  kInfeasible,  // target cannot be met
  kFailed,      // solver error; see ParetoPoint::message
};

const char* ToString(PointStatus status);

struct ParetoPoint {
  double epsilon = 0.0;
  double cost = 0.0;  // realized c(d)
  double sf = 0.0;    // fraction of samples with y^k = 0
  DesignVector design;
  std::vector<std::uint8_t> indicators;  // y^k, 1 = infeasible
  double wall_time = 0.0;
  FormulationMode mode = FormulationMode::kMixedInteger;
  PointStatus status = PointStatus::kFailed;
  bool optimal = false;
  std::string message;

  // Diagnostics.
  double relaxation_objective = 0.0;  // continuous mode, stage 1
  double best_bound = 0.0;            // mixed-integer mode
  std::int64_t nodes = 0;
  int repairs = 0;
  int screened_feasible = 0;    // feasible with no expansion
  int screened_unreachable = 0; // infeasible for every admissible design
};

struct DesignOptions {
  double feas_tol = 1e-7;
  double round_tol = 1e-6;
  // Settle scenarios whose indicator is forced before branching or before
  // the relaxation: those feasible with no expansion, and (mixed-integer
  // mode) those no admissible design can make feasible.
  bool screen = true;
  MilpOptions milp;
  SolverOptions lp;
};

struct ContinuousResult {
  ParetoPoint point;
  std::vector<double> relaxed_y;  // stage-1 values, one per sample
};

ParetoPoint SolveDesignMip(const ScenarioProgram& prog,
                           const DesignOptions& opts = {});

ContinuousResult SolveDesignContinuous(const ScenarioProgram& prog,
                                       const DesignOptions& opts = {});

// Either mode. Status kInfeasible when the floor exceeds the attainable
// flexibility.
ParetoPoint SolveDesignMinCost(const ScenarioProgram& prog,
                               const DesignOptions& opts = {});

// One independent max-flexibility solve per cost cap; failures are recorded
// in the point and the sweep continues. Throws on a grid that is not
// strictly increasing.
std::vector<ParetoPoint> ParetoSweep(const Network& net, const CostSpec& cost,
                                     const SampleSet& samples,
                                     const std::vector<double>& grid,
                                     FormulationMode mode,
                                     double big_u = kDefaultBigU,
                                     const DesignOptions& opts = {});

struct ComparisonRow {
  double epsilon = 0.0;
  double mip_cost = 0.0;
  double cont_cost = 0.0;
  double mip_sf = 0.0;
  double cont_sf = 0.0;
  double sf_gap = 0.0;       // mip_sf - cont_sf
  double y_diff_pct = 0.0;   // 100 * Hamming distance / K
  double mip_time = 0.0;
  double cont_time = 0.0;
  bool mip_optimal = false;
  bool violation = false;    // continuous beats a proven MIP optimum
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;
  int violations() const;
};

// Throws ValidationError when the two grids differ.
ComparisonReport CompareFronts(const std::vector<ParetoPoint>& mip,
                               const std::vector<ParetoPoint>& cont);

std::vector<double> MakeGrid(double first, double last, double step);

}  // namespace flexdesign

#endif  // FLEXDESIGN_DESIGN_HPP_
