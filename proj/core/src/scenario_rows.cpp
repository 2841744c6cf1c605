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

#include "scenario_rows.hpp"

namespace flexdesign::internal {

void AddBlockColumns(LinearProgram& lp, const Network& net,
                     BlockColumns* cols) {
  cols->flow.clear();
  cols->supply.clear();
  for (int l = 0; l < net.num_arcs(); ++l) {
    cols->flow.push_back(lp.AddColumn(0.0, -kInf, kInf));
  }
  for (int b = 0; b < net.num_suppliers(); ++b) {
    cols->supply.push_back(lp.AddColumn(0.0, -kInf, kInf));
  }
}

int RowsPerBlock(const Network& net) {
  return 2 * net.num_arcs() + 2 * net.num_suppliers() + net.num_nodes();
}

int AppendBlockRows(LinearProgram& lp, const Network& net,
                    const Topology& topo, const BlockColumns& cols,
                    const DesignVector* fixed_design,
                    std::span<const double> theta) {
  const int first = lp.num_rows();
  auto violation = [&](int row) {
    if (cols.violation >= 0) {
      lp.AddEntry(row, cols.violation, -cols.violation_coef);
    }
  };
  auto design_arc = [&](int l) {
    if (!cols.design_arc.empty() || fixed_design == nullptr) return 0.0;
    return fixed_design->arc[l];
  };
  auto design_sup = [&](int b) {
    if (!cols.design_supplier.empty() || fixed_design == nullptr) return 0.0;
    return fixed_design->supplier[b];
  };

  for (int l = 0; l < net.num_arcs(); ++l) {
    const double cap = net.arcs[l].capacity + design_arc(l);
    for (double sign : {-1.0, 1.0}) {
      const int r = lp.AddRow(RowSense::kLessEqual, cap);
      if (!cols.design_arc.empty()) lp.AddEntry(r, cols.design_arc[l], -1.0);
      lp.AddEntry(r, cols.flow[l], sign);
      violation(r);
    }
  }
  for (int b = 0; b < net.num_suppliers(); ++b) {
    int r = lp.AddRow(RowSense::kLessEqual, 0.0);
    lp.AddEntry(r, cols.supply[b], -1.0);
    violation(r);
    r = lp.AddRow(RowSense::kLessEqual,
                  net.suppliers[b].capacity + design_sup(b));
    if (!cols.design_supplier.empty()) {
      lp.AddEntry(r, cols.design_supplier[b], -1.0);
    }
    lp.AddEntry(r, cols.supply[b], 1.0);
    violation(r);
  }
  const int balance0 = lp.num_rows();
  std::vector<double> withdraw(net.num_nodes(), 0.0);
  for (std::size_t i = 0; i < topo.demand_node.size(); ++i) {
    if (cols.theta.empty()) {
      withdraw[topo.demand_node[i]] += theta[topo.demand_theta[i]];
    }
  }
  for (int n = 0; n < net.num_nodes(); ++n) {
    lp.AddRow(RowSense::kEqual, withdraw[n]);
  }
  for (int l = 0; l < net.num_arcs(); ++l) {
    lp.AddEntry(balance0 + topo.arc_to[l], cols.flow[l], 1.0);
    lp.AddEntry(balance0 + topo.arc_from[l], cols.flow[l], -1.0);
  }
  for (int b = 0; b < net.num_suppliers(); ++b) {
    lp.AddEntry(balance0 + topo.supplier_node[b], cols.supply[b], 1.0);
  }
  if (!cols.theta.empty()) {
    for (std::size_t i = 0; i < topo.demand_node.size(); ++i) {
      lp.AddEntry(balance0 + topo.demand_node[i],
                  cols.theta[topo.demand_theta[i]], -1.0);
    }
  }
  return first;
}

}  // namespace flexdesign::internal
