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

#include "flexdesign/flexibility.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "flexdesign/error.hpp"
#include "scenario_rows.hpp"

namespace flexdesign {
namespace {

using internal::AppendBlockRows;
using internal::BlockColumns;

// min u over one scenario; only the balance right-hand sides depend on theta.
class PsiProgram {
 public:
  PsiProgram(const Network& net, const DesignVector& design)
      : net_(net), topo_(Topology::Of(net)) {
    design.Check(net);
    internal::AddBlockColumns(lp_, net, &cols_);
    cols_.violation = lp_.AddColumn(1.0, -kInf, kInf);
    std::vector<double> zeros(net.num_theta(), 0.0);
    const int first = AppendBlockRows(lp_, net, topo_, cols_, &design, zeros);
    balance0_ = first + 2 * net.num_arcs() + 2 * net.num_suppliers();
  }

  void SetTheta(std::span<const double> theta) {
    if (static_cast<int>(theta.size()) != net_.num_theta()) {
      throw ValidationError("theta has length " +
                            std::to_string(theta.size()) + ", expected " +
                            std::to_string(net_.num_theta()));
    }
    for (int n = 0; n < net_.num_nodes(); ++n) lp_.rhs[balance0_ + n] = 0.0;
    for (std::size_t i = 0; i < topo_.demand_node.size(); ++i) {
      lp_.rhs[balance0_ + topo_.demand_node[i]] += theta[topo_.demand_theta[i]];
    }
  }

  FeasibilityResult Solve(const FeasibilityOptions& opts,
                          std::vector<VarStatus>* basis) {
    LpSolution s = SolveLp(lp_, opts.lp, basis ? *basis : kNoBasis);
    FeasibilityResult r;
    switch (s.status) {
      case LpStatus::kOptimal:
        r.psi = s.objective;
        for (int c : cols_.flow) r.arc_flow.push_back(s.x[c]);
        for (int c : cols_.supply) r.supply.push_back(s.x[c]);
        if (basis) *basis = std::move(s.basis);
        break;
      case LpStatus::kInfeasible:
        r.psi = kInf;
        break;
      case LpStatus::kUnbounded:
        r.psi = -kInf;
        break;
      case LpStatus::kIterationLimit:
        throw SolverError("feasibility LP hit the iteration limit");
    }
    r.feasible = r.psi <= opts.feas_tol;
    return r;
  }

 private:
  static inline const std::vector<VarStatus> kNoBasis{};
  const Network& net_;
  Topology topo_;
  LinearProgram lp_;
  BlockColumns cols_;
  int balance0_ = 0;
};

void CheckSamples(const Network& net, const SampleSet& samples) {
  if (samples.dim() != net.num_theta()) {
    throw ValidationError("sample dimension " + std::to_string(samples.dim()) +
                          " does not match n_theta " +
                          std::to_string(net.num_theta()));
  }
  if (samples.size() < 1) throw ValidationError("sample set is empty");
}

// Shared assembly of the indicator programs: one y per block, cost
// `weight` each.
MixedIntegerProgram BuildIndicator(const Network& net,
                                   const DesignVector& design,
                                   const SampleSet& samples, double big_u,
                                   double weight) {
  if (!(big_u > 0.0) || !std::isfinite(big_u)) {
    throw ValidationError("U must be positive and finite");
  }
  design.Check(net);
  CheckSamples(net, samples);
  const Topology topo = Topology::Of(net);
  MixedIntegerProgram mip;
  for (int k = 0; k < samples.size(); ++k) {
    BlockColumns cols;
    internal::AddBlockColumns(mip.lp, net, &cols);
    cols.violation = mip.lp.AddColumn(weight * big_u, 0.0, 1.0);
    cols.violation_coef = big_u;
    mip.binaries.push_back(cols.violation);
    AppendBlockRows(mip.lp, net, topo, cols, &design, samples.sample(k));
  }
  return mip;
}

}  // namespace

FeasibilityResult Psi(const Network& net, const DesignVector& design,
                      std::span<const double> theta,
                      const FeasibilityOptions& opts) {
  PsiProgram prog(net, design);
  prog.SetTheta(theta);
  return prog.Solve(opts, nullptr);
}

SfEstimate EstimateSf(const Network& net, const DesignVector& design,
                      const SampleSet& samples,
                      const FeasibilityOptions& opts) {
  CheckSamples(net, samples);
  PsiProgram prog(net, design);
  SfEstimate est;
  est.count = samples.size();
  est.design = design;
  est.feasible.resize(samples.size());
  est.psi.resize(samples.size());
  std::vector<VarStatus> basis;
  int hits = 0;
  for (int k = 0; k < samples.size(); ++k) {
    prog.SetTheta(samples.sample(k));
    FeasibilityResult r;
    try {
      r = prog.Solve(opts, &basis);
    } catch (const SolverError& e) {
      throw SolverError("sample " + std::to_string(k) + ": " + e.what());
    }
    est.psi[k] = r.psi;
    est.feasible[k] = r.feasible ? 1 : 0;
    hits += r.feasible ? 1 : 0;
  }
  est.value = static_cast<double>(hits) / samples.size();
  return est;
}

double MeanInfeasibility(const Network& net, const DesignVector& design,
                         const SampleSet& samples,
                         const FeasibilityOptions& opts) {
  const SfEstimate est = EstimateSf(net, design, samples, opts);
  double sum = 0.0;
  for (double p : est.psi) sum += std::max(p, 0.0);
  return sum / samples.size();
}

FeasibleCenter ComputeFeasibleCenter(const Network& net,
                                     const DesignVector& design,
                                     const CenterOptions& opts) {
  design.Check(net);
  const Topology topo = Topology::Of(net);
  const int nt = net.num_theta();
  auto check_len = [&](const std::vector<double>& v, const char* what) {
    if (!v.empty() && static_cast<int>(v.size()) != nt) {
      throw ValidationError(std::string(what) + " has wrong length");
    }
  };
  check_len(opts.theta_lower, "theta lower bound");
  check_len(opts.theta_upper, "theta upper bound");
  if (opts.spec) {
    opts.spec->Check();
    if (opts.spec->dim() != nt) {
      throw ValidationError("Gaussian spec dimension does not match n_theta");
    }
  }

  LinearProgram lp;
  BlockColumns cols;
  internal::AddBlockColumns(lp, net, &cols);
  for (int i = 0; i < nt; ++i) {
    const double lo = opts.theta_lower.empty() ? -kInf : opts.theta_lower[i];
    const double up = opts.theta_upper.empty() ? kInf : opts.theta_upper[i];
    cols.theta.push_back(lp.AddColumn(0.0, lo, up));
  }
  cols.violation = lp.AddColumn(1.0, -kInf, kInf);
  AppendBlockRows(lp, net, topo, cols, &design, {});

  FeasibleCenter fc;
  LpSolution s = SolveLp(lp, opts.lp);
  if (s.status == LpStatus::kUnbounded) {
    fc.unbounded = true;
    if (!opts.spec) {
      fc.psi = -kInf;
      return fc;
    }
    for (int i = 0; i < nt; ++i) {
      const double half = 10.0 * std::sqrt(opts.spec->covariance(i, i));
      const int c = cols.theta[i];
      lp.lower[c] = std::max(lp.lower[c], opts.spec->mean[i] - half);
      lp.upper[c] = std::min(lp.upper[c], opts.spec->mean[i] + half);
    }
    fc.boxed = true;
    s = SolveLp(lp, opts.lp);
  }
  if (s.status == LpStatus::kInfeasible) {
    throw InfeasibleError("feasible-center problem has no solution");
  }
  if (s.status == LpStatus::kUnbounded) {
    fc.psi = -kInf;
    return fc;
  }
  if (s.status != LpStatus::kOptimal) {
    throw SolverError(std::string("feasible-center LP: ") +
                      ToString(s.status));
  }
  fc.psi = s.objective;
  for (int c : cols.theta) fc.theta.push_back(s.x[c]);
  return fc;
}

MixedIntegerProgram BuildIndicatorProgram(const Network& net,
                                          const DesignVector& design,
                                          std::span<const double> theta,
                                          double big_u) {
  SampleSet one;
  one.values = DenseMatrix(1, static_cast<int>(theta.size()));
  std::copy(theta.begin(), theta.end(), one.values.data.begin());
  return BuildIndicator(net, design, one, big_u, 1.0);
}

MixedIntegerProgram BuildAggregatedIndicatorProgram(const Network& net,
                                                    const DesignVector& design,
                                                    const SampleSet& samples,
                                                    double big_u) {
  return BuildIndicator(net, design, samples, big_u,
                        1.0 / std::max(1, samples.size()));
}

LinearProgram BuildMeanInfeasibilityProgram(const Network& net,
                                            const DesignVector& design,
                                            const SampleSet& samples) {
  design.Check(net);
  CheckSamples(net, samples);
  const Topology topo = Topology::Of(net);
  LinearProgram lp;
  for (int k = 0; k < samples.size(); ++k) {
    BlockColumns cols;
    internal::AddBlockColumns(lp, net, &cols);
    cols.violation = lp.AddColumn(1.0 / samples.size(), 0.0, kInf);
    AppendBlockRows(lp, net, topo, cols, &design, samples.sample(k));
  }
  return lp;
}

}  // namespace flexdesign
