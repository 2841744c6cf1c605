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

#include "flexdesign/milp.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <memory>
#include <queue>
#include <stdexcept>

#include "flexdesign/error.hpp"

namespace flexdesign {
namespace {

using Clock = std::chrono::steady_clock;

// Bases are only retained while the open list is small.
constexpr std::size_t kMaxStoredBases = 256;

struct Node {
  std::int64_t id = 0;
  int depth = 0;
  double bound = 0.0;  // minimization sense, lattice-rounded
  std::vector<std::int8_t> fix;  // per binary: -1 free, 0, 1
  std::shared_ptr<const std::vector<VarStatus>> basis;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.id < b.id;
  }
};

// Objective values of integer points lie on offset + step * Z when every
// cost sits on a binary column with a common magnitude.
struct Lattice {
  bool active = false;
  double offset = 0.0;
  double step = 0.0;

  double RoundUp(double v) const {
    if (!active) return v;
    const double m = std::ceil((v - offset) / step - 1e-9);
    return offset + m * step;
  }
};

Lattice DetectLattice(const MixedIntegerProgram& mip, double sign) {
  Lattice l;
  std::vector<bool> is_bin(mip.lp.num_cols(), false);
  for (int j : mip.binaries) is_bin[j] = true;
  double step = 0.0;
  for (int j = 0; j < mip.lp.num_cols(); ++j) {
    const double c = std::abs(mip.lp.objective[j]);
    if (c == 0.0) continue;
    if (!is_bin[j]) return l;
    if (step == 0.0) {
      step = c;
    } else if (std::abs(c - step) > 1e-12 * step) {
      return l;
    }
  }
  if (step == 0.0) return l;
  l.active = true;
  l.step = step;
  l.offset = sign * mip.lp.objective_offset;
  return l;
}

class BranchAndBound {
 public:
  BranchAndBound(const MixedIntegerProgram& mip, const MilpOptions& opts)
      : mip_(mip),
        opts_(opts),
        sign_(mip.lp.sense == ObjectiveSense::kMaximize ? -1.0 : 1.0),
        lattice_(DetectLattice(mip, sign_)),
        start_(Clock::now()) {}

  MilpSolution Run();

 private:
  double Elapsed() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }
  void NodeBounds(const std::vector<std::int8_t>& fix,
                  std::vector<double>* lo, std::vector<double>* up) const;
  LpSolution Solve(const std::vector<double>& lo, const std::vector<double>& up,
                   const std::vector<VarStatus>& warm);
  // Fixes binaries to `pattern` and keeps the result if it improves.
  // Returns the objective of the fixed problem (minimization sense), or
  // +inf when it is infeasible.
  double TryIncumbent(const std::vector<std::int8_t>& pattern,
                    const std::vector<VarStatus>& warm);
  bool Prunable(double bound) const {
    return has_incumbent_ && bound >= incumbent_ - opts_.mip_gap_tol;
  }
  // Sets the binaries in x to `pattern` and checks the rows still hold.
  bool Holds(const std::vector<std::int8_t>& pattern,
             std::vector<double>* x) const;
  // Free binary farthest from integrality with a score above min_score,
  // or -1.
  int MostFractional(const std::vector<double>& x,
                     const std::vector<std::int8_t>& fix,
                     double min_score) const;
  void DumpNode(std::int64_t id, const std::vector<double>& lo,
                const std::vector<double>& up) const;

  const MixedIntegerProgram& mip_;
  const MilpOptions& opts_;
  const double sign_;
  const Lattice lattice_;
  const Clock::time_point start_;

  bool has_incumbent_ = false;
  double incumbent_ = 0.0;  // minimization sense
  std::vector<double> incumbent_x_;
  std::vector<VarStatus> incumbent_basis_;
  std::int64_t lp_iterations_ = 0;
};

void BranchAndBound::NodeBounds(const std::vector<std::int8_t>& fix,
                                std::vector<double>* lo,
                                std::vector<double>* up) const {
  *lo = mip_.lp.lower;
  *up = mip_.lp.upper;
  for (std::size_t b = 0; b < mip_.binaries.size(); ++b) {
    if (fix[b] < 0) continue;
    const int j = mip_.binaries[b];
    (*lo)[j] = (*up)[j] = static_cast<double>(fix[b]);
  }
}

LpSolution BranchAndBound::Solve(const std::vector<double>& lo,
                                 const std::vector<double>& up,
                                 const std::vector<VarStatus>& warm) {
  LpSolution s = SolveLp(mip_.lp, lo, up, opts_.lp, warm);
  lp_iterations_ += s.iterations;
  if (s.status == LpStatus::kIterationLimit) {
    throw SolverError("LP iteration limit inside branch and bound");
  }
  return s;
}

double BranchAndBound::TryIncumbent(const std::vector<std::int8_t>& pattern,
                                    const std::vector<VarStatus>& warm) {
  std::vector<double> lo;
  std::vector<double> up;
  NodeBounds(pattern, &lo, &up);
  LpSolution s = Solve(lo, up, warm);
  // A warm-started basis may keep a fixed binary basic a hair off its
  // value, which the big coefficients turn into a real violation.
  if (s.status == LpStatus::kOptimal && !Holds(pattern, &s.x) &&
      !warm.empty()) {
    s = Solve(lo, up, {});
  }
  if (s.status != LpStatus::kOptimal || !Holds(pattern, &s.x)) return kInf;
  const double v = sign_ * s.objective;
  if (!has_incumbent_ || v < incumbent_) {
    has_incumbent_ = true;
    incumbent_ = v;
    incumbent_x_ = std::move(s.x);
    incumbent_basis_ = std::move(s.basis);
  }
  return v;
}

bool BranchAndBound::Holds(const std::vector<std::int8_t>& pattern,
                           std::vector<double>* x) const {
  for (std::size_t b = 0; b < mip_.binaries.size(); ++b) {
    (*x)[mip_.binaries[b]] = pattern[b];
  }
  return ScaledRowViolation(mip_.lp, *x) <= 10.0 * opts_.lp.feas_tol;
}

void BranchAndBound::DumpNode(std::int64_t id, const std::vector<double>& lo,
                              const std::vector<double>& up) const {
  LinearProgram lp = mip_.lp;
  lp.lower = lo;
  lp.upper = up;
  const std::string path =
      opts_.node_mps_prefix + std::to_string(id) + ".mps";
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  WriteMps(lp, {}, out, "NODE" + std::to_string(id));
}

int BranchAndBound::MostFractional(const std::vector<double>& x,
                                   const std::vector<std::int8_t>& fix,
                                   double min_score) const {
  int best = -1;
  double best_score = min_score;
  for (std::size_t b = 0; b < mip_.binaries.size(); ++b) {
    if (fix[b] >= 0) continue;
    const double v = x[mip_.binaries[b]];
    const double score = std::min(v - std::floor(v), std::ceil(v) - v);
    if (score > best_score) {
      best_score = score;
      best = static_cast<int>(b);
    }
  }
  return best;
}

MilpSolution BranchAndBound::Run() {
  MilpSolution out;
  const std::size_t nb = mip_.binaries.size();

  std::vector<double> lo;
  std::vector<double> up;
  std::vector<std::int8_t> free_fix(nb, -1);
  NodeBounds(free_fix, &lo, &up);
  LpSolution root = Solve(lo, up, {});
  if (root.status == LpStatus::kInfeasible) {
    out.status = MilpStatus::kInfeasible;
    out.lp_iterations = lp_iterations_;
    out.wall_time = Elapsed();
    return out;
  }
  if (root.status == LpStatus::kUnbounded) {
    throw SolverError("MILP relaxation is unbounded");
  }
  out.root_bound = root.objective;
  const auto root_basis =
      std::make_shared<const std::vector<VarStatus>>(root.basis);

  if (opts_.root_rounding && nb > 0) {
    std::vector<std::int8_t> up_pattern(nb);
    std::vector<std::int8_t> down_pattern(nb);
    for (std::size_t b = 0; b < nb; ++b) {
      const double v = root.x[mip_.binaries[b]];
      up_pattern[b] = v <= opts_.int_tol ? 0 : 1;
      down_pattern[b] = v >= 1.0 - opts_.int_tol ? 1 : 0;
    }
    TryIncumbent(up_pattern, root.basis);
    if (down_pattern != up_pattern) TryIncumbent(down_pattern, root.basis);
  }

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  std::int64_t next_id = 0;
  {
    Node n;
    n.id = next_id++;
    n.bound = lattice_.RoundUp(sign_ * root.objective);
    n.fix = free_fix;
    n.basis = root_basis;
    open.push(std::move(n));
  }
  bool limit_hit = false;
  bool first = true;
  LpSolution cached_root = std::move(root);

  while (!open.empty()) {
    if (Prunable(open.top().bound)) break;  // best-bound: the rest is worse
    if (Elapsed() > opts_.time_limit ||
        (opts_.node_limit >= 0 && out.nodes >= opts_.node_limit)) {
      limit_hit = true;
      break;
    }
    Node node = open.top();
    open.pop();
    ++out.nodes;

    if (!opts_.node_mps_prefix.empty()) {
      NodeBounds(node.fix, &lo, &up);
      DumpNode(node.id, lo, up);
    }
    LpSolution s;
    if (first) {
      s = std::move(cached_root);
      first = false;
    } else {
      NodeBounds(node.fix, &lo, &up);
      s = Solve(lo, up, node.basis ? *node.basis : *root_basis);
    }
    if (s.status == LpStatus::kInfeasible) continue;
    if (s.status == LpStatus::kUnbounded) {
      throw SolverError("MILP node relaxation is unbounded");
    }
    const double bound =
        std::max(node.bound, lattice_.RoundUp(sign_ * s.objective));
    if (opts_.on_node) {
      MilpNodeEvent ev;
      ev.node = node.id;
      ev.depth = node.depth;
      ev.node_bound = s.objective;
      double open_best = bound;
      if (!open.empty()) open_best = std::min(open_best, open.top().bound);
      if (has_incumbent_) open_best = std::min(open_best, incumbent_);
      ev.best_bound = sign_ * open_best;
      ev.has_incumbent = has_incumbent_;
      ev.incumbent = sign_ * incumbent_;
      opts_.on_node(ev);
    }
    if (Prunable(bound)) continue;

    int branch = MostFractional(s.x, node.fix, opts_.int_tol);
    if (branch < 0) {
      std::vector<std::int8_t> pattern(nb);
      for (std::size_t b = 0; b < nb; ++b) {
        pattern[b] = node.fix[b] >= 0 ? node.fix[b]
                                      : (s.x[mip_.binaries[b]] >= 0.5 ? 1 : 0);
      }
      const double snapped = TryIncumbent(pattern, s.basis);
      if (snapped <= bound + opts_.mip_gap_tol) continue;
      // Snapping lost value, so the node is not settled yet.
      branch = MostFractional(s.x, node.fix, 0.0);
      if (branch < 0) continue;
    }
    auto basis = open.size() < kMaxStoredBases
                     ? std::make_shared<const std::vector<VarStatus>>(
                           std::move(s.basis))
                     : nullptr;
    const double v = s.x[mip_.binaries[branch]];
    const std::int8_t near = v >= 0.5 ? 1 : 0;
    for (std::int8_t dir : {static_cast<std::int8_t>(1 - near), near}) {
      Node child;
      child.id = next_id++;
      child.depth = node.depth + 1;
      child.bound = bound;
      child.fix = node.fix;
      child.fix[branch] = dir;
      child.basis = basis;
      open.push(std::move(child));
    }
  }

  out.lp_iterations = lp_iterations_;
  out.wall_time = Elapsed();
  double best = open.empty() ? (has_incumbent_ ? incumbent_ : kInf)
                             : open.top().bound;
  if (has_incumbent_) best = std::min(best, incumbent_);
  if (has_incumbent_) {
    out.x = incumbent_x_;
    out.basis = incumbent_basis_;
    out.objective = sign_ * incumbent_;
    out.best_bound = sign_ * best;
    out.gap = std::max(0.0, incumbent_ - best);
    out.status = limit_hit ? MilpStatus::kTimeLimitWithIncumbent
                           : MilpStatus::kOptimal;
  } else {
    out.best_bound = sign_ * best;
    out.status = limit_hit ? MilpStatus::kTimeLimitNoIncumbent
                           : MilpStatus::kInfeasible;
  }
  return out;
}

}  // namespace

void MixedIntegerProgram::Validate() const {
  lp.Validate();
  for (int j : binaries) {
    if (j < 0 || j >= lp.num_cols()) {
      throw std::invalid_argument("binary column index out of range");
    }
    if (lp.lower[j] < 0.0 || lp.upper[j] > 1.0) {
      throw std::invalid_argument("binary column " + std::to_string(j) +
                                  " has bounds outside [0, 1]");
    }
  }
}

const char* ToString(MilpStatus status) {
  switch (status) {
    case MilpStatus::kOptimal:
      return "optimal";
    case MilpStatus::kInfeasible:
      return "infeasible";
    case MilpStatus::kTimeLimitWithIncumbent:
      return "time-limit-with-incumbent";
    case MilpStatus::kTimeLimitNoIncumbent:
      return "time-limit-no-incumbent";
  }
  return "unknown";
}

MilpSolution SolveMilp(const MixedIntegerProgram& mip,
                       const MilpOptions& opts) {
  mip.Validate();
  BranchAndBound bb(mip, opts);
  return bb.Run();
}

LpSolution LpBound(const MixedIntegerProgram& mip, const SolverOptions& opts) {
  mip.Validate();
  return SolveLp(mip.lp, opts);
}

}  // namespace flexdesign
