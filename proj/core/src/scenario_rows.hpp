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

#ifndef FLEXDESIGN_SRC_SCENARIO_ROWS_HPP_
#define FLEXDESIGN_SRC_SCENARIO_ROWS_HPP_

#include <span>
#include <vector>

#include "flexdesign/lp.hpp"
#include "flexdesign/model.hpp"

namespace flexdesign::internal {

// Column layout of one scenario block. Empty design vectors mean the design
// is a constant taken from `fixed_design`; empty theta means the demands are
// constants taken from `theta`.
struct BlockColumns {
  std::vector<int> flow;             // per arc, free
  std::vector<int> supply;           // per supplier, free
  std::vector<int> design_arc;       // per arc
  std::vector<int> design_supplier;  // per supplier
  std::vector<int> theta;            // per theta entry
  int violation = -1;                // column scaled by violation_coef
  double violation_coef = 1.0;
};

// Adds free flow/supply columns for one block and returns their indices in
// the first two fields.
void AddBlockColumns(LinearProgram& lp, const Network& net, BlockColumns* cols);

// Appends the block rows in a fixed order: for each arc the lower then upper
// capacity row, for each supplier the lower then upper row, then one balance
// row per node. Returns the index of the first row.
//   -d_a - a - V v <= a^C      -d_a + a - V v <= a^C
//   -s - V v <= 0              -d_s + s - V v <= s^C
//   sum_in a - sum_out a + sum s - sum theta = 0
int AppendBlockRows(LinearProgram& lp, const Network& net,
                    const Topology& topo, const BlockColumns& cols,
                    const DesignVector* fixed_design,
                    std::span<const double> theta);

int RowsPerBlock(const Network& net);

}  // namespace flexdesign::internal

#endif  // FLEXDESIGN_SRC_SCENARIO_ROWS_HPP_
