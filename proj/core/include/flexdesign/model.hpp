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

// Linear network model: node balances, symmetric arc capacities, supplier
// capacities, and the capacity-expansion design space with its linear cost.

#ifndef FLEXDESIGN_MODEL_HPP_
#define FLEXDESIGN_MODEL_HPP_

#include <string>
#include <vector>

namespace flexdesign {

struct Arc {
  std::string id;
  std::string from;
  std::string to;
  double capacity = 0.0;  // flow may range over [-capacity, capacity]
  std::string units;      // free-form label, may be empty
};

struct Supplier {
  std::string id;
  std::string node;
  double capacity = 0.0;  // supply ranges over [0, capacity]
};

// An uncertain withdrawal at a node. theta_index is 1-based into the
// uncertain parameter vector.
struct Demand {
  std::string id;
  std::string node;
  int theta_index = 0;
};

struct Network {
  std::vector<std::string> nodes;
  std::vector<Arc> arcs;
  std::vector<Supplier> suppliers;
  std::vector<Demand> demands;

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int num_arcs() const { return static_cast<int>(arcs.size()); }
  int num_suppliers() const { return static_cast<int>(suppliers.size()); }
  int num_theta() const { return static_cast<int>(demands.size()); }
  // n_d: one expansion variable per arc and per supplier.
  int num_design() const { return num_arcs() + num_suppliers(); }
};

// Returns one message per broken invariant; empty iff the network is valid.
std::vector<std::string> ValidateNetwork(const Network& net);

// Throws ValidationError when ValidateNetwork reports anything.
void RequireValid(const Network& net);

// Index form of a valid network, computed once by consumers that assemble
// optimization problems.
struct Topology {
  int num_nodes = 0;
  std::vector<int> arc_from;
  std::vector<int> arc_to;
  std::vector<int> supplier_node;
  std::vector<int> demand_node;
  std::vector<int> demand_theta;  // 0-based position in theta

  static Topology Of(const Network& net);
};

struct DesignVector {
  std::vector<double> arc;       // d^a, one per arc
  std::vector<double> supplier;  // d^s, one per supplier

  static DesignVector Zero(const Network& net);
  int size() const { return static_cast<int>(arc.size() + supplier.size()); }
  // Throws ValidationError on negative/non-finite entries or a shape that
  // does not match `net`.
  void Check(const Network& net) const;
};

// Linear design cost. Empty weight vectors mean the default unit cost
// 1/sqrt(n_d) for every expansion variable.
struct CostSpec {
  std::vector<double> arc_weights;
  std::vector<double> supplier_weights;

  bool is_default() const {
    return arc_weights.empty() && supplier_weights.empty();
  }
  // Weights for a design space with the given counts.
  std::vector<double> ArcWeights(int num_arcs, int num_suppliers) const;
  std::vector<double> SupplierWeights(int num_arcs, int num_suppliers) const;
};

double Cost(const DesignVector& design, const CostSpec& spec = {});

struct ExpandedCapacities {
  std::vector<double> arc_bound;       // |flow| <= arc_bound
  std::vector<double> supplier_upper;  // 0 <= supply <= supplier_upper
};

ExpandedCapacities Expand(const Network& net, const DesignVector& design);

}  // namespace flexdesign

#endif  // FLEXDESIGN_MODEL_HPP_
