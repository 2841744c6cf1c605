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

#include "flexdesign/design.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <optional>

#include "flexdesign/error.hpp"
#include "scenario_rows.hpp"

namespace flexdesign {
namespace {

using Clock = std::chrono::steady_clock;

double Since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

enum class Screen : std::uint8_t { kFree, kContested, kUnreachable };

struct Classification {
  std::vector<Screen> kind;
  std::vector<double> psi0;
  int free_count = 0;
  int unreachable_count = 0;

  std::vector<int> Indices(bool include_unreachable) const {
    std::vector<int> out;
    for (int k = 0; k < static_cast<int>(kind.size()); ++k) {
      if (kind[k] == Screen::kContested ||
          (include_unreachable && kind[k] == Screen::kUnreachable)) {
        out.push_back(k);
      }
    }
    return out;
  }
};

// min u over (d >= 0, recourse) for one scenario, optionally under the cost
// cap. u > 0 means no admissible design makes the scenario feasible.
class ReachProgram {
 public:
  ReachProgram(const ScenarioProgram& prog, bool with_budget)
      : net_(prog.network), topo_(Topology::Of(prog.network)) {
    internal::BlockColumns cols;
    for (int l = 0; l < net_.num_arcs(); ++l) {
      cols.design_arc.push_back(lp_.AddColumn(0.0, 0.0, kInf));
    }
    for (int b = 0; b < net_.num_suppliers(); ++b) {
      cols.design_supplier.push_back(lp_.AddColumn(0.0, 0.0, kInf));
    }
    internal::AddBlockColumns(lp_, net_, &cols);
    cols.violation = lp_.AddColumn(1.0, -kInf, kInf);
    std::vector<double> zeros(net_.num_theta(), 0.0);
    internal::AppendBlockRows(lp_, net_, topo_, cols, nullptr, zeros);
    balance0_ = 2 * net_.num_arcs() + 2 * net_.num_suppliers();
    if (with_budget) {
      const auto wa = prog.cost.ArcWeights(net_.num_arcs(),
                                           net_.num_suppliers());
      const auto ws = prog.cost.SupplierWeights(net_.num_arcs(),
                                                net_.num_suppliers());
      const int r = lp_.AddRow(RowSense::kLessEqual, prog.epsilon);
      for (int l = 0; l < net_.num_arcs(); ++l) {
        lp_.AddEntry(r, cols.design_arc[l], wa[l]);
      }
      for (int b = 0; b < net_.num_suppliers(); ++b) {
        lp_.AddEntry(r, cols.design_supplier[b], ws[b]);
      }
    }
  }

  double Solve(std::span<const double> theta, const SolverOptions& opts) {
    for (int n = 0; n < net_.num_nodes(); ++n) lp_.rhs[balance0_ + n] = 0.0;
    for (std::size_t i = 0; i < topo_.demand_node.size(); ++i) {
      lp_.rhs[balance0_ + topo_.demand_node[i]] += theta[topo_.demand_theta[i]];
    }
    LpSolution s = SolveLp(lp_, opts, basis_);
    switch (s.status) {
      case LpStatus::kOptimal:
        basis_ = std::move(s.basis);
        return s.objective;
      case LpStatus::kInfeasible:
        return kInf;
      case LpStatus::kUnbounded:
        return -kInf;
      case LpStatus::kIterationLimit:
        break;
    }
    throw SolverError("reachability LP hit the iteration limit");
  }

 private:
  const Network& net_;
  Topology topo_;
  LinearProgram lp_;
  int balance0_ = 0;
  std::vector<VarStatus> basis_;
};

// Scenarios feasible with no expansion stay feasible under any expansion.
// With `reach`, scenarios that no admissible design rescues are marked
// unreachable when their block is satisfiable with y = 1 for every design.
Classification Classify(const ScenarioProgram& prog, const DesignOptions& opts,
                        bool reach, bool with_budget) {
  const int k_total = prog.num_samples();
  Classification c;
  c.kind.assign(k_total, Screen::kContested);
  FeasibilityOptions fopts;
  fopts.feas_tol = opts.feas_tol;
  fopts.lp = opts.lp;
  const SfEstimate at_zero = EstimateSf(
      prog.network, DesignVector::Zero(prog.network), prog.samples, fopts);
  c.psi0 = at_zero.psi;
  std::optional<ReachProgram> rp;
  for (int k = 0; k < k_total; ++k) {
    if (at_zero.feasible[k]) {
      c.kind[k] = Screen::kFree;
      ++c.free_count;
      continue;
    }
    if (!reach || !(c.psi0[k] <= prog.big_u)) continue;
    if (!rp) rp.emplace(prog, with_budget);
    const double u = rp->Solve(prog.samples.sample(k), opts.lp);
    if (u > opts.feas_tol) {
      c.kind[k] = Screen::kUnreachable;
      ++c.unreachable_count;
    }
  }
  return c;
}

// Minimum-cost design with the indicators fixed; nullopt when infeasible.
std::optional<DesignVector> FixedIndicatorDesign(
    const ScenarioProgram& prog, const std::vector<std::uint8_t>& y,
    const DesignOptions& opts, const std::vector<VarStatus>& warm = {}) {
  LinearProgram lp = prog.program.lp;
  const Network& net = prog.network;
  lp.sense = ObjectiveSense::kMinimize;
  lp.objective_offset = 0.0;
  std::fill(lp.objective.begin(), lp.objective.end(), 0.0);
  const auto wa = prog.cost.ArcWeights(net.num_arcs(), net.num_suppliers());
  const auto ws =
      prog.cost.SupplierWeights(net.num_arcs(), net.num_suppliers());
  for (int l = 0; l < net.num_arcs(); ++l) lp.objective[prog.design_arc[l]] = wa[l];
  for (int b = 0; b < net.num_suppliers(); ++b) {
    lp.objective[prog.design_supplier[b]] = ws[b];
  }
  for (int k = 0; k < prog.num_samples(); ++k) {
    lp.lower[prog.indicator[k]] = lp.upper[prog.indicator[k]] = y[k];
  }
  auto holds = [&](std::vector<double> x) {
    for (int k = 0; k < prog.num_samples(); ++k) x[prog.indicator[k]] = y[k];
    return ScaledRowViolation(lp, x) <= 10.0 * opts.lp.feas_tol;
  };
  LpSolution s = SolveLp(lp, opts.lp, warm);
  if (s.status == LpStatus::kOptimal && !warm.empty() && !holds(s.x)) {
    s = SolveLp(lp, opts.lp);
  }
  if (s.status == LpStatus::kInfeasible) return std::nullopt;
  if (s.status != LpStatus::kOptimal) {
    throw SolverError(std::string("fixed-indicator LP: ") +
                      ToString(s.status));
  }
  DesignVector d;
  for (int c : prog.design_arc) d.arc.push_back(std::max(0.0, s.x[c]));
  for (int c : prog.design_supplier) {
    d.supplier.push_back(std::max(0.0, s.x[c]));
  }
  return d;
}

DesignVector ExtractDesign(const ScenarioProgram& prog,
                           const std::vector<double>& x) {
  DesignVector d;
  for (int c : prog.design_arc) d.arc.push_back(std::max(0.0, x[c]));
  for (int c : prog.design_supplier) d.supplier.push_back(std::max(0.0, x[c]));
  return d;
}

ScenarioProgram Reduced(const ScenarioProgram& prog,
                        const std::vector<int>& keep, double epsilon) {
  return BuildScenarioProgram(prog.network, prog.cost,
                              prog.samples.Subset(keep), prog.mode,
                              prog.direction, epsilon, prog.big_u);
}

void Finish(const ScenarioProgram& prog, ParetoPoint* p) {
  int zeros = 0;
  for (auto v : p->indicators) zeros += v == 0 ? 1 : 0;
  p->sf = static_cast<double>(zeros) / prog.num_samples();
  if (p->design.size() == 0) p->design = DesignVector::Zero(prog.network);
  p->cost = Cost(p->design, prog.cost);
}

void RequireShape(const ScenarioProgram& prog, FormulationMode mode,
                  Direction dir, const char* who) {
  if (prog.mode != mode || prog.direction != dir) {
    throw std::invalid_argument(std::string(who) + " expects a " +
                                ToString(mode) + " " + ToString(dir) +
                                " program");
  }
}

void ApplyMilpStatus(const MilpSolution& ms, ParetoPoint* p) {
  switch (ms.status) {
    case MilpStatus::kOptimal:
      p->status = PointStatus::kOptimal;
      p->optimal = true;
      break;
    case MilpStatus::kInfeasible:
      p->status = PointStatus::kInfeasible;
      break;
    case MilpStatus::kTimeLimitWithIncumbent:
      p->status = PointStatus::kTimeLimit;
      break;
    case MilpStatus::kTimeLimitNoIncumbent:
      p->status = PointStatus::kNoSolution;
      break;
  }
  p->nodes = ms.nodes;
}

bool HasIncumbent(MilpStatus s) {
  return s == MilpStatus::kOptimal || s == MilpStatus::kTimeLimitWithIncumbent;
}

std::vector<std::uint8_t> Indicators(const ScenarioProgram& prog,
                                     const std::vector<double>& x) {
  std::vector<std::uint8_t> y(prog.num_samples());
  for (int k = 0; k < prog.num_samples(); ++k) {
    y[k] = x[prog.indicator[k]] >= 0.5 ? 1 : 0;
  }
  return y;
}

}  // namespace

const char* ToString(FormulationMode mode) {
  return mode == FormulationMode::kMixedInteger ? "mixed-integer"
                                                : "continuous";
}

const char* ToString(Direction direction) {
  return direction == Direction::kMaxFlexibility ? "max-flexibility"
                                                 : "min-cost";
}

const char* ToString(PointStatus status) {
  switch (status) {
    case PointStatus::kOptimal:
      return "optimal";
    case PointStatus::kTimeLimit:
      return "time-limit";
    case PointStatus::kNoSolution:
      return "no-solution";
    case PointStatus::kInfeasible:
      return "infeasible";
    case PointStatus::kFailed:
      return "failed";
  }
  return "unknown";
}

ScenarioProgram BuildScenarioProgram(const Network& net, const CostSpec& cost,
                                     const SampleSet& samples,
                                     FormulationMode mode, Direction direction,
                                     double epsilon, double big_u) {
  RequireValid(net);
  if (samples.size() < 1) throw ValidationError("sample set is empty");
  if (samples.dim() != net.num_theta()) {
    throw ValidationError("sample dimension does not match n_theta");
  }
  if (!(big_u > 0.0) || !std::isfinite(big_u)) {
    throw ValidationError("U must be positive and finite");
  }
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw ValidationError("epsilon must be finite and non-negative");
  }
  if (direction == Direction::kMinCost && epsilon > 1.0) {
    throw ValidationError("flexibility floor must lie in [0, 1]");
  }
  const int na = net.num_arcs();
  const int ns = net.num_suppliers();
  const auto wa = cost.ArcWeights(na, ns);
  const auto ws = cost.SupplierWeights(na, ns);
  for (double w : wa) {
    if (!(w >= 0.0)) throw ValidationError("cost weights must be >= 0");
  }
  for (double w : ws) {
    if (!(w >= 0.0)) throw ValidationError("cost weights must be >= 0");
  }

  ScenarioProgram prog;
  prog.network = net;
  prog.cost = cost;
  prog.samples = samples;
  prog.mode = mode;
  prog.direction = direction;
  prog.epsilon = epsilon;
  prog.big_u = big_u;
  LinearProgram& lp = prog.program.lp;
  const bool max_sf = direction == Direction::kMaxFlexibility;
  const int k_total = samples.size();
  lp.sense = max_sf ? ObjectiveSense::kMaximize : ObjectiveSense::kMinimize;
  lp.objective_offset = max_sf ? 1.0 : 0.0;

  for (int l = 0; l < na; ++l) {
    prog.design_arc.push_back(lp.AddColumn(max_sf ? 0.0 : wa[l], 0.0, kInf));
  }
  for (int b = 0; b < ns; ++b) {
    prog.design_supplier.push_back(
        lp.AddColumn(max_sf ? 0.0 : ws[b], 0.0, kInf));
  }
  const Topology topo = Topology::Of(net);
  prog.block_rows = internal::RowsPerBlock(net);
  for (int k = 0; k < k_total; ++k) {
    internal::BlockColumns cols;
    cols.design_arc = prog.design_arc;
    cols.design_supplier = prog.design_supplier;
    internal::AddBlockColumns(lp, net, &cols);
    cols.violation = lp.AddColumn(max_sf ? -1.0 / k_total : 0.0, 0.0, 1.0);
    cols.violation_coef = big_u;
    prog.indicator.push_back(cols.violation);
    if (mode == FormulationMode::kMixedInteger) {
      prog.program.binaries.push_back(cols.violation);
    }
    internal::AppendBlockRows(lp, net, topo, cols, nullptr, samples.sample(k));
  }
  if (max_sf) {
    prog.budget_row = lp.AddRow(RowSense::kLessEqual, epsilon);
    for (int l = 0; l < na; ++l) {
      lp.AddEntry(prog.budget_row, prog.design_arc[l], wa[l]);
    }
    for (int b = 0; b < ns; ++b) {
      lp.AddEntry(prog.budget_row, prog.design_supplier[b], ws[b]);
    }
  } else {
    // (1/K) sum (1 - y^k) >= eps  <=>  -(1/K) sum y^k >= eps - 1
    prog.budget_row = lp.AddRow(RowSense::kGreaterEqual, epsilon - 1.0);
    for (int k = 0; k < k_total; ++k) {
      lp.AddEntry(prog.budget_row, prog.indicator[k], -1.0 / k_total);
    }
  }
  return prog;
}

ParetoPoint SolveDesignMip(const ScenarioProgram& prog,
                           const DesignOptions& opts) {
  RequireShape(prog, FormulationMode::kMixedInteger,
               Direction::kMaxFlexibility, "SolveDesignMip");
  const auto t0 = Clock::now();
  const int k_total = prog.num_samples();
  ParetoPoint p;
  p.epsilon = prog.epsilon;
  p.mode = prog.mode;
  p.indicators.assign(k_total, 1);

  std::vector<int> contested(k_total);
  std::iota(contested.begin(), contested.end(), 0);
  if (opts.screen) {
    const Classification c = Classify(prog, opts, true, true);
    for (int k = 0; k < k_total; ++k) {
      if (c.kind[k] == Screen::kFree) p.indicators[k] = 0;
    }
    contested = c.Indices(false);
    p.screened_feasible = c.free_count;
    p.screened_unreachable = c.unreachable_count;
  }

  if (contested.empty()) {
    p.status = PointStatus::kOptimal;
    p.optimal = true;
    p.design = DesignVector::Zero(prog.network);
    Finish(prog, &p);
    p.best_bound = p.sf;
    p.wall_time = Since(t0);
    return p;
  }

  const bool whole = static_cast<int>(contested.size()) == k_total;
  std::optional<ScenarioProgram> reduced_storage;
  if (!whole) reduced_storage = Reduced(prog, contested, prog.epsilon);
  const ScenarioProgram& sub = whole ? prog : *reduced_storage;
  const int kc = sub.num_samples();
  const int settled_feasible = p.screened_feasible;

  MilpOptions mopts = opts.milp;
  const MilpSolution ms = SolveMilp(sub.program, mopts);
  ApplyMilpStatus(ms, &p);
  p.best_bound = (settled_feasible + kc * ms.best_bound) / k_total;
  if (HasIncumbent(ms.status)) {
    const auto y_sub = Indicators(sub, ms.x);
    for (int i = 0; i < kc; ++i) p.indicators[contested[i]] = y_sub[i];
    auto polished = FixedIndicatorDesign(sub, y_sub, opts, ms.basis);
    p.design = polished ? *polished : ExtractDesign(sub, ms.x);
  } else {
    p.design = DesignVector::Zero(prog.network);
    std::fill(p.indicators.begin(), p.indicators.end(), 1);
  }
  Finish(prog, &p);
  p.wall_time = Since(t0);
  return p;
}

ContinuousResult SolveDesignContinuous(const ScenarioProgram& prog,
                                       const DesignOptions& opts) {
  RequireShape(prog, FormulationMode::kContinuous, Direction::kMaxFlexibility,
               "SolveDesignContinuous");
  const auto t0 = Clock::now();
  const int k_total = prog.num_samples();
  ContinuousResult out;
  ParetoPoint& p = out.point;
  p.epsilon = prog.epsilon;
  p.mode = prog.mode;
  p.indicators.assign(k_total, 1);
  out.relaxed_y.assign(k_total, 0.0);

  std::vector<int> keep(k_total);
  std::iota(keep.begin(), keep.end(), 0);
  if (opts.screen) {
    const Classification c = Classify(prog, opts, false, true);
    keep = c.Indices(true);
    p.screened_feasible = c.free_count;
    for (int k = 0; k < k_total; ++k) {
      if (c.kind[k] == Screen::kFree) p.indicators[k] = 0;
    }
  }
  if (keep.empty()) {
    p.status = PointStatus::kOptimal;
    p.optimal = true;
    p.relaxation_objective = 1.0;
    Finish(prog, &p);
    p.wall_time = Since(t0);
    return out;
  }
  const bool whole = static_cast<int>(keep.size()) == k_total;
  std::optional<ScenarioProgram> reduced_storage;
  if (!whole) reduced_storage = Reduced(prog, keep, prog.epsilon);
  const ScenarioProgram& sub = whole ? prog : *reduced_storage;
  const int kc = sub.num_samples();

  // Stage 1: relaxation.
  const LpSolution s1 = SolveLp(sub.program.lp, opts.lp);
  if (s1.status == LpStatus::kInfeasible) {
    p.status = PointStatus::kInfeasible;
    p.message = "relaxation infeasible";
    p.design = DesignVector::Zero(prog.network);
    std::fill(p.indicators.begin(), p.indicators.end(), 1);
    Finish(prog, &p);
    p.wall_time = Since(t0);
    return out;
  }
  if (s1.status != LpStatus::kOptimal) {
    throw SolverError(std::string("relaxation LP: ") + ToString(s1.status));
  }
  p.relaxation_objective =
      (p.screened_feasible + kc * s1.objective) / k_total;

  // Stage 2: rounding.
  std::vector<double> ybar(kc);
  std::vector<std::uint8_t> y(kc);
  for (int i = 0; i < kc; ++i) {
    ybar[i] = std::clamp(s1.x[sub.indicator[i]], 0.0, 1.0);
    out.relaxed_y[keep[i]] = ybar[i];
    y[i] = ybar[i] <= opts.round_tol ? 0 : 1;
  }

  // Stage 3: fix indicators, re-solve for the design; repair on failure.
  std::optional<DesignVector> d;
  for (int attempt = 0; attempt <= kc; ++attempt) {
    d = FixedIndicatorDesign(sub, y, opts, s1.basis);
    if (d) break;
    int flip = -1;
    for (int i = 0; i < kc; ++i) {
      if (y[i] == 0 && (flip < 0 || ybar[i] > ybar[flip])) flip = i;
    }
    if (flip < 0) break;
    y[flip] = 1;
    ++p.repairs;
  }
  if (!d) {
    p.status = PointStatus::kFailed;
    p.message = "fixed-indicator problem infeasible after repairs";
    p.design = DesignVector::Zero(prog.network);
    std::fill(p.indicators.begin(), p.indicators.end(), 1);
    Finish(prog, &p);
    p.wall_time = Since(t0);
    return out;
  }
  for (int i = 0; i < kc; ++i) p.indicators[keep[i]] = y[i];
  p.design = *d;
  p.status = PointStatus::kOptimal;
  Finish(prog, &p);
  p.wall_time = Since(t0);
  return out;
}

ParetoPoint SolveDesignMinCost(const ScenarioProgram& prog,
                               const DesignOptions& opts) {
  if (prog.direction != Direction::kMinCost) {
    throw std::invalid_argument("SolveDesignMinCost expects a min-cost program");
  }
  const auto t0 = Clock::now();
  const int k_total = prog.num_samples();
  ParetoPoint p;
  p.epsilon = prog.epsilon;
  p.mode = prog.mode;
  p.indicators.assign(k_total, 1);
  const int need_total =
      static_cast<int>(std::ceil(prog.epsilon * k_total - 1e-9));

  const Classification c = Classify(prog, opts, true, false);
  p.screened_feasible = c.free_count;
  p.screened_unreachable = c.unreachable_count;
  const std::vector<int> contested = c.Indices(false);
  const int attainable = c.free_count + static_cast<int>(contested.size());
  auto fail_infeasible = [&] {
    p.status = PointStatus::kInfeasible;
    p.message = "flexibility floor exceeds the attainable value " +
                std::to_string(static_cast<double>(attainable) / k_total);
    p.design = DesignVector::Zero(prog.network);
    Finish(prog, &p);
    p.wall_time = Since(t0);
    return p;
  };
  if (need_total > attainable) return fail_infeasible();
  for (int k = 0; k < k_total; ++k) {
    if (c.kind[k] == Screen::kFree) p.indicators[k] = 0;
  }
  const int need = need_total - c.free_count;
  if (need <= 0) {
    p.status = PointStatus::kOptimal;
    p.optimal = true;
    p.design = DesignVector::Zero(prog.network);
    Finish(prog, &p);
    p.wall_time = Since(t0);
    return p;
  }

  if (prog.mode == FormulationMode::kMixedInteger) {
    const int kc = static_cast<int>(contested.size());
    const ScenarioProgram sub =
        Reduced(prog, contested, static_cast<double>(need) / kc);
    const MilpSolution ms = SolveMilp(sub.program, opts.milp);
    ApplyMilpStatus(ms, &p);
    if (ms.status == MilpStatus::kInfeasible) return fail_infeasible();
    if (HasIncumbent(ms.status)) {
      const auto y_sub = Indicators(sub, ms.x);
      for (int i = 0; i < kc; ++i) p.indicators[contested[i]] = y_sub[i];
      auto polished = FixedIndicatorDesign(sub, y_sub, opts, ms.basis);
      p.design = polished ? *polished : ExtractDesign(sub, ms.x);
      p.best_bound = ms.best_bound;
    } else {
      p.design = DesignVector::Zero(prog.network);
    }
    Finish(prog, &p);
    p.wall_time = Since(t0);
    return p;
  }

  // Continuous: relax over every scenario not settled at zero, round, then
  // restore the floor greedily from the rescuable scenarios.
  const std::vector<int> keep = c.Indices(true);
  const int kk = static_cast<int>(keep.size());
  const ScenarioProgram sub =
      Reduced(prog, keep, static_cast<double>(need) / kk);
  const LpSolution s1 = SolveLp(sub.program.lp, opts.lp);
  if (s1.status != LpStatus::kOptimal) {
    if (s1.status == LpStatus::kInfeasible) return fail_infeasible();
    throw SolverError(std::string("relaxation LP: ") + ToString(s1.status));
  }
  p.relaxation_objective = s1.objective;
  std::vector<double> ybar(kk);
  std::vector<std::uint8_t> y(kk);
  std::vector<bool> banned(kk, false);
  for (int i = 0; i < kk; ++i) {
    ybar[i] = std::clamp(s1.x[sub.indicator[i]], 0.0, 1.0);
    banned[i] = c.kind[keep[i]] == Screen::kUnreachable;
    y[i] = (!banned[i] && ybar[i] <= opts.round_tol) ? 0 : 1;
  }
  std::optional<DesignVector> d;
  for (int attempt = 0; attempt <= kk; ++attempt) {
    int zeros = 0;
    for (auto v : y) zeros += v == 0 ? 1 : 0;
    while (zeros < need) {
      int pick = -1;
      for (int i = 0; i < kk; ++i) {
        if (y[i] == 1 && !banned[i] && (pick < 0 || ybar[i] < ybar[pick])) {
          pick = i;
        }
      }
      if (pick < 0) return fail_infeasible();
      y[pick] = 0;
      ++zeros;
    }
    d = FixedIndicatorDesign(sub, y, opts, s1.basis);
    if (d) break;
    int flip = -1;
    for (int i = 0; i < kk; ++i) {
      if (y[i] == 0 && (flip < 0 || ybar[i] > ybar[flip])) flip = i;
    }
    if (flip < 0) break;
    y[flip] = 1;
    banned[flip] = true;
    ++p.repairs;
  }
  if (!d) return fail_infeasible();
  for (int i = 0; i < kk; ++i) p.indicators[keep[i]] = y[i];
  p.design = *d;
  p.status = PointStatus::kOptimal;
  Finish(prog, &p);
  p.wall_time = Since(t0);
  return p;
}

std::vector<ParetoPoint> ParetoSweep(const Network& net, const CostSpec& cost,
                                     const SampleSet& samples,
                                     const std::vector<double>& grid,
                                     FormulationMode mode, double big_u,
                                     const DesignOptions& opts) {
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw ValidationError("epsilon grid must be strictly increasing");
    }
  }
  std::vector<ParetoPoint> out;
  out.reserve(grid.size());
  for (double eps : grid) {
    const auto t0 = Clock::now();
    try {
      const ScenarioProgram prog = BuildScenarioProgram(
          net, cost, samples, mode, Direction::kMaxFlexibility, eps, big_u);
      ParetoPoint p = mode == FormulationMode::kMixedInteger
                          ? SolveDesignMip(prog, opts)
                          : SolveDesignContinuous(prog, opts).point;
      p.wall_time = Since(t0);
      out.push_back(std::move(p));
    } catch (const std::exception& e) {
      ParetoPoint p;
      p.epsilon = eps;
      p.mode = mode;
      p.status = PointStatus::kFailed;
      p.message = e.what();
      p.wall_time = Since(t0);
      out.push_back(std::move(p));
    }
  }
  return out;
}

int ComparisonReport::violations() const {
  int n = 0;
  for (const auto& r : rows) n += r.violation ? 1 : 0;
  return n;
}

ComparisonReport CompareFronts(const std::vector<ParetoPoint>& mip,
                               const std::vector<ParetoPoint>& cont) {
  if (mip.size() != cont.size()) {
    throw ValidationError("fronts have different grid sizes");
  }
  ComparisonReport rep;
  for (std::size_t i = 0; i < mip.size(); ++i) {
    const ParetoPoint& a = mip[i];
    const ParetoPoint& b = cont[i];
    if (std::abs(a.epsilon - b.epsilon) >
        1e-9 * std::max(1.0, std::abs(a.epsilon))) {
      throw ValidationError("fronts use different epsilon grids at row " +
                            std::to_string(i + 1));
    }
    if (a.indicators.size() != b.indicators.size()) {
      throw ValidationError("fronts use different sample counts");
    }
    ComparisonRow r;
    r.epsilon = a.epsilon;
    r.mip_cost = a.cost;
    r.cont_cost = b.cost;
    r.mip_sf = a.sf;
    r.cont_sf = b.sf;
    r.sf_gap = a.sf - b.sf;
    int diff = 0;
    for (std::size_t k = 0; k < a.indicators.size(); ++k) {
      diff += a.indicators[k] != b.indicators[k] ? 1 : 0;
    }
    r.y_diff_pct = a.indicators.empty()
                       ? 0.0
                       : 100.0 * diff / static_cast<double>(a.indicators.size());
    r.mip_time = a.wall_time;
    r.cont_time = b.wall_time;
    r.mip_optimal = a.optimal;
    r.violation = a.optimal && b.sf > a.sf + 1e-12;
    rep.rows.push_back(r);
  }
  return rep;
}

std::vector<double> MakeGrid(double first, double last, double step) {
  if (!(step > 0.0) || !(last >= first)) {
    throw ValidationError("grid needs step > 0 and last >= first");
  }
  const long n = std::lround((last - first) / step);
  std::vector<double> g;
  for (long i = 0; i <= n; ++i) g.push_back(first + i * step);
  return g;
}

}  // namespace flexdesign
