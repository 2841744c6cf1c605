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

#include "flexdesign/model.hpp"

#include <cmath>
#include <set>
#include <unordered_map>

#include "flexdesign/error.hpp"

namespace flexdesign {
namespace {

std::unordered_map<std::string, int> NodeIndex(const Network& net) {
  std::unordered_map<std::string, int> index;
  for (int i = 0; i < net.num_nodes(); ++i) index.emplace(net.nodes[i], i);
  return index;
}

bool NonNegativeFinite(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

std::vector<std::string> ValidateNetwork(const Network& net) {
  std::vector<std::string> out;
  if (net.nodes.empty()) out.push_back("network has no nodes");
  if (net.demands.empty()) out.push_back("network has no demands");
  std::set<std::string> seen;
  for (const auto& n : net.nodes) {
    if (n.empty()) out.push_back("node with empty id");
    if (!seen.insert(n).second) out.push_back("duplicate node '" + n + "'");
  }
  const auto index = NodeIndex(net);
  auto known = [&](const std::string& id) { return index.count(id) > 0; };

  std::set<std::string> arc_ids;
  for (const Arc& a : net.arcs) {
    if (!arc_ids.insert(a.id).second) {
      out.push_back("duplicate arc '" + a.id + "'");
    }
    if (!known(a.from)) {
      out.push_back("arc '" + a.id + "' references unknown node '" + a.from +
                    "'");
    }
    if (!known(a.to)) {
      out.push_back("arc '" + a.id + "' references unknown node '" + a.to +
                    "'");
    }
    if (!NonNegativeFinite(a.capacity)) {
      out.push_back("arc '" + a.id + "' has negative or non-finite capacity");
    }
  }
  std::set<std::string> sup_ids;
  for (const Supplier& s : net.suppliers) {
    if (!sup_ids.insert(s.id).second) {
      out.push_back("duplicate supplier '" + s.id + "'");
    }
    if (!known(s.node)) {
      out.push_back("supplier '" + s.id + "' references unknown node '" +
                    s.node + "'");
    }
    if (!NonNegativeFinite(s.capacity)) {
      out.push_back("supplier '" + s.id +
                    "' has negative or non-finite capacity");
    }
  }
  std::set<std::string> dem_ids;
  std::vector<int> hits(net.demands.size(), 0);
  bool index_ok = true;
  for (const Demand& d : net.demands) {
    if (!dem_ids.insert(d.id).second) {
      out.push_back("duplicate demand '" + d.id + "'");
    }
    if (!known(d.node)) {
      out.push_back("demand '" + d.id + "' references unknown node '" +
                    d.node + "'");
    }
    if (d.theta_index < 1 ||
        d.theta_index > static_cast<int>(net.demands.size())) {
      index_ok = false;
    } else {
      ++hits[d.theta_index - 1];
    }
  }
  for (int h : hits) {
    if (h != 1) index_ok = false;
  }
  if (!index_ok) {
    out.push_back("theta-index not bijective onto 1.." +
                  std::to_string(net.demands.size()));
  }
  return out;
}

void RequireValid(const Network& net) {
  auto v = ValidateNetwork(net);
  if (!v.empty()) throw ValidationError(std::move(v));
}

Topology Topology::Of(const Network& net) {
  RequireValid(net);
  const auto index = NodeIndex(net);
  Topology t;
  t.num_nodes = net.num_nodes();
  for (const Arc& a : net.arcs) {
    t.arc_from.push_back(index.at(a.from));
    t.arc_to.push_back(index.at(a.to));
  }
  for (const Supplier& s : net.suppliers) {
    t.supplier_node.push_back(index.at(s.node));
  }
  for (const Demand& d : net.demands) {
    t.demand_node.push_back(index.at(d.node));
    t.demand_theta.push_back(d.theta_index - 1);
  }
  return t;
}

DesignVector DesignVector::Zero(const Network& net) {
  DesignVector d;
  d.arc.assign(net.arcs.size(), 0.0);
  d.supplier.assign(net.suppliers.size(), 0.0);
  return d;
}

void DesignVector::Check(const Network& net) const {
  std::vector<std::string> v;
  if (arc.size() != net.arcs.size() ||
      supplier.size() != net.suppliers.size()) {
    v.push_back("design dimension " + std::to_string(size()) +
                " does not match network (" +
                std::to_string(net.num_design()) + ")");
  }
  for (double x : arc) {
    if (!NonNegativeFinite(x)) {
      v.push_back("design entry negative or non-finite");
      break;
    }
  }
  for (double x : supplier) {
    if (!NonNegativeFinite(x)) {
      v.push_back("design entry negative or non-finite");
      break;
    }
  }
  if (!v.empty()) throw ValidationError(std::move(v));
}

std::vector<double> CostSpec::ArcWeights(int num_arcs,
                                         int num_suppliers) const {
  if (is_default()) {
    const int n = num_arcs + num_suppliers;
    return std::vector<double>(num_arcs, n > 0 ? 1.0 / std::sqrt(n) : 0.0);
  }
  if (static_cast<int>(arc_weights.size()) != num_arcs ||
      static_cast<int>(supplier_weights.size()) != num_suppliers) {
    throw ValidationError("cost weight dimension mismatch");
  }
  return arc_weights;
}

std::vector<double> CostSpec::SupplierWeights(int num_arcs,
                                              int num_suppliers) const {
  if (is_default()) {
    const int n = num_arcs + num_suppliers;
    return std::vector<double>(num_suppliers,
                               n > 0 ? 1.0 / std::sqrt(n) : 0.0);
  }
  if (static_cast<int>(arc_weights.size()) != num_arcs ||
      static_cast<int>(supplier_weights.size()) != num_suppliers) {
    throw ValidationError("cost weight dimension mismatch");
  }
  return supplier_weights;
}

double Cost(const DesignVector& design, const CostSpec& spec) {
  const int na = static_cast<int>(design.arc.size());
  const int ns = static_cast<int>(design.supplier.size());
  const auto wa = spec.ArcWeights(na, ns);
  const auto ws = spec.SupplierWeights(na, ns);
  double c = 0.0;
  for (int i = 0; i < na; ++i) c += wa[i] * design.arc[i];
  for (int i = 0; i < ns; ++i) c += ws[i] * design.supplier[i];
  return c;
}

ExpandedCapacities Expand(const Network& net, const DesignVector& design) {
  design.Check(net);
  ExpandedCapacities e;
  for (int i = 0; i < net.num_arcs(); ++i) {
    e.arc_bound.push_back(net.arcs[i].capacity + design.arc[i]);
  }
  for (int i = 0; i < net.num_suppliers(); ++i) {
    e.supplier_upper.push_back(net.suppliers[i].capacity +
                               design.supplier[i]);
  }
  return e;
}

}  // namespace flexdesign
