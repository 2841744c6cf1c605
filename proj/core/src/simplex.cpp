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

// Two-phase bounded-variable primal simplex.
//
// Every row i gets a logical column e_i so that A x + s = b, with the logical
// bounds encoding the row sense (<=: s >= 0, >=: s <= 0, =: s = 0). The
// initial basis is all logicals. Phase 1 minimizes the sum of bound
// violations of the basic variables; phase 2 the (minimization form of the)
// objective. Pricing is column-scaled Dantzig; the ratio test is a two-pass
// Harris test. After `degeneracy_threshold` consecutive degenerate pivots the
// method falls back to Bland's rule until the next nondegenerate step.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "basis_factor.hpp"
#include "flexdesign/lp.hpp"

namespace flexdesign {
namespace {

using internal::BasisFactor;
using internal::ColumnView;

constexpr double kPivotTol = 1e-9;
constexpr double kDegenerateStep = 1e-12;

class BoundedSimplex {
 public:
  BoundedSimplex(const LinearProgram& lp, const SolverOptions& opts);

  LpSolution Run(const std::vector<VarStatus>& warm_start);
  void OverrideBounds(const std::vector<double>& lower,
                      const std::vector<double>& upper) {
    for (int j = 0; j < n_; ++j) {
      lo_[j] = lower[j];
      up_[j] = upper[j];
    }
  }

 private:
  enum class Outcome { kContinue, kStall, kOptimal, kInfeasible, kUnbounded };

  void BuildColumns(const LinearProgram& lp);
  void SetSlackBasis();
  bool LoadWarmStart(const std::vector<VarStatus>& warm);
  void PlaceNonbasic(int j);
  bool Factorize();
  void ComputeBasicValues();
  double BasicInfeasibility() const;
  Outcome Iterate(bool phase1);
  int Price(bool phase1, const std::vector<double>& y, double* dq) const;
  double ReducedCost(int j, const std::vector<double>& y) const;
  ColumnView Column(int j) const;

  const SolverOptions& opts_;
  int n_ = 0;  // structural columns
  int m_ = 0;  // rows
  int total_ = 0;
  bool maximize_ = false;
  double cost_scale_ = 1.0;  // internal costs are the objective times this

  std::vector<int> col_start_;
  std::vector<int> row_index_;
  std::vector<double> value_;
  std::vector<double> col_scale_;
  std::vector<double> cost_;
  std::vector<double> lo_;
  std::vector<double> up_;
  std::vector<double> b_;

  std::vector<double> x_;
  std::vector<VarStatus> status_;
  std::vector<int> head_;
  std::vector<int> pos_;
  BasisFactor factor_;

  std::vector<double> y_;
  std::vector<double> alpha_;
  std::vector<double> work_;

  std::int64_t iterations_ = 0;
  int degenerate_run_ = 0;
  bool bland_ = false;
  bool fresh_ = false;  // no eta updates since the last recompute of x_B
};

BoundedSimplex::BoundedSimplex(const LinearProgram& lp,
                               const SolverOptions& opts)
    : opts_(opts) {
  n_ = lp.num_cols();
  m_ = lp.num_rows();
  total_ = n_ + m_;
  maximize_ = lp.sense == ObjectiveSense::kMaximize;
  BuildColumns(lp);
  cost_.assign(total_, 0.0);
  lo_.assign(total_, 0.0);
  up_.assign(total_, 0.0);
  double max_cost = 0.0;
  for (int j = 0; j < n_; ++j) {
    max_cost = std::max(max_cost, std::abs(lp.objective[j]));
  }
  if (max_cost > 0.0) cost_scale_ = 1.0 / max_cost;
  for (int j = 0; j < n_; ++j) {
    cost_[j] = (maximize_ ? -lp.objective[j] : lp.objective[j]) * cost_scale_;
    lo_[j] = lp.lower[j];
    up_[j] = lp.upper[j];
  }
  for (int i = 0; i < m_; ++i) {
    const int j = n_ + i;
    switch (lp.row_sense[i]) {
      case RowSense::kLessEqual:
        lo_[j] = 0.0;
        up_[j] = kInf;
        break;
      case RowSense::kGreaterEqual:
        lo_[j] = -kInf;
        up_[j] = 0.0;
        break;
      case RowSense::kEqual:
        lo_[j] = 0.0;
        up_[j] = 0.0;
        break;
    }
  }
  b_ = lp.rhs;
  x_.assign(total_, 0.0);
  status_.assign(total_, VarStatus::kAtLower);
  head_.assign(m_, -1);
  pos_.assign(total_, -1);
  y_.assign(m_, 0.0);
  alpha_.assign(m_, 0.0);
  work_.assign(m_, 0.0);
}

void BoundedSimplex::BuildColumns(const LinearProgram& lp) {
  // Sum duplicates through a per-column sort.
  std::vector<int> count(n_ + 1, 0);
  for (const Triplet& t : lp.entries) ++count[t.col + 1];
  for (int j = 0; j < n_; ++j) count[j + 1] += count[j];
  std::vector<std::pair<int, double>> sorted(lp.entries.size());
  std::vector<int> fill(count.begin(), count.end() - 1);
  for (const Triplet& t : lp.entries) {
    sorted[fill[t.col]++] = {t.row, t.value};
  }
  col_start_.assign(1, 0);
  col_start_.reserve(total_ + 1);
  for (int j = 0; j < n_; ++j) {
    auto first = sorted.begin() + count[j];
    auto last = sorted.begin() + count[j + 1];
    std::sort(first, last,
              [](const auto& a, const auto& b) { return a.first < b.first; });
    int prev = -1;
    for (auto it = first; it != last; ++it) {
      if (it->first == prev) {
        value_.back() += it->second;
      } else {
        row_index_.push_back(it->first);
        value_.push_back(it->second);
        prev = it->first;
      }
    }
    col_start_.push_back(static_cast<int>(row_index_.size()));
  }
  for (int i = 0; i < m_; ++i) {
    row_index_.push_back(i);
    value_.push_back(1.0);
    col_start_.push_back(static_cast<int>(row_index_.size()));
  }
  col_scale_.assign(total_, 1.0);
  for (int j = 0; j < total_; ++j) {
    double sq = 1.0;
    for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) {
      sq += value_[k] * value_[k];
    }
    col_scale_[j] = 1.0 / sq;
  }
}

ColumnView BoundedSimplex::Column(int j) const {
  const int begin = col_start_[j];
  const int len = col_start_[j + 1] - begin;
  return ColumnView{std::span<const int>(row_index_.data() + begin, len),
                    std::span<const double>(value_.data() + begin, len)};
}

void BoundedSimplex::PlaceNonbasic(int j) {
  pos_[j] = -1;
  if (std::isfinite(lo_[j])) {
    status_[j] = VarStatus::kAtLower;
    x_[j] = lo_[j];
  } else if (std::isfinite(up_[j])) {
    status_[j] = VarStatus::kAtUpper;
    x_[j] = up_[j];
  } else {
    status_[j] = VarStatus::kFree;
    x_[j] = 0.0;
  }
}

void BoundedSimplex::SetSlackBasis() {
  for (int j = 0; j < n_; ++j) PlaceNonbasic(j);
  for (int i = 0; i < m_; ++i) {
    const int j = n_ + i;
    status_[j] = VarStatus::kBasic;
    head_[i] = j;
    pos_[j] = i;
  }
}

bool BoundedSimplex::LoadWarmStart(const std::vector<VarStatus>& warm) {
  if (static_cast<int>(warm.size()) != total_) return false;
  int basics = 0;
  for (VarStatus s : warm) basics += s == VarStatus::kBasic ? 1 : 0;
  if (basics != m_) return false;
  int next = 0;
  for (int j = 0; j < total_; ++j) {
    switch (warm[j]) {
      case VarStatus::kBasic:
        status_[j] = VarStatus::kBasic;
        head_[next] = j;
        pos_[j] = next++;
        break;
      case VarStatus::kAtLower:
        if (std::isfinite(lo_[j])) {
          status_[j] = VarStatus::kAtLower;
          x_[j] = lo_[j];
          pos_[j] = -1;
        } else {
          PlaceNonbasic(j);
        }
        break;
      case VarStatus::kAtUpper:
        if (std::isfinite(up_[j])) {
          status_[j] = VarStatus::kAtUpper;
          x_[j] = up_[j];
          pos_[j] = -1;
        } else {
          PlaceNonbasic(j);
        }
        break;
      case VarStatus::kFree:
        PlaceNonbasic(j);
        break;
    }
  }
  return true;
}

bool BoundedSimplex::Factorize() {
  if (m_ == 0) return true;
  std::vector<ColumnView> cols(m_);
  for (int i = 0; i < m_; ++i) cols[i] = Column(head_[i]);
  return factor_.Refactorize(m_, cols);
}

void BoundedSimplex::ComputeBasicValues() {
  if (m_ == 0) {
    fresh_ = true;
    return;
  }
  std::vector<double>& rhs = work_;
  rhs = b_;
  for (int j = 0; j < total_; ++j) {
    if (status_[j] == VarStatus::kBasic || x_[j] == 0.0) continue;
    for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) {
      rhs[row_index_[k]] -= value_[k] * x_[j];
    }
  }
  factor_.Ftran(rhs);
  for (int i = 0; i < m_; ++i) x_[head_[i]] = rhs[i];
  fresh_ = true;
}

double BoundedSimplex::BasicInfeasibility() const {
  double sum = 0.0;
  for (int i = 0; i < m_; ++i) {
    const int v = head_[i];
    if (x_[v] < lo_[v] - opts_.feas_tol) sum += lo_[v] - x_[v];
    if (x_[v] > up_[v] + opts_.feas_tol) sum += x_[v] - up_[v];
  }
  return sum;
}

double BoundedSimplex::ReducedCost(int j, const std::vector<double>& y) const {
  double d = 0.0;
  for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) {
    d -= value_[k] * y[row_index_[k]];
  }
  return d;
}

int BoundedSimplex::Price(bool phase1, const std::vector<double>& y,
                          double* dq) const {
  int best = -1;
  double best_score = 0.0;
  const double tol = opts_.opt_tol;
  for (int j = 0; j < total_; ++j) {
    const VarStatus s = status_[j];
    if (s == VarStatus::kBasic) continue;
    if (lo_[j] == up_[j]) continue;
    const double d = (phase1 ? 0.0 : cost_[j]) + ReducedCost(j, y);
    bool eligible = false;
    switch (s) {
      case VarStatus::kAtLower:
        eligible = d < -tol;
        break;
      case VarStatus::kAtUpper:
        eligible = d > tol;
        break;
      case VarStatus::kFree:
        eligible = std::abs(d) > tol;
        break;
      case VarStatus::kBasic:
        break;
    }
    if (!eligible) continue;
    if (bland_) {
      *dq = d;
      return j;
    }
    const double score = d * d * col_scale_[j];
    if (score > best_score) {
      best_score = score;
      best = j;
      *dq = d;
    }
  }
  return best;
}

BoundedSimplex::Outcome BoundedSimplex::Iterate(bool phase1) {
  // Basic costs -> simplex multipliers.
  for (int i = 0; i < m_; ++i) {
    const int v = head_[i];
    if (phase1) {
      double c = 0.0;
      if (x_[v] < lo_[v] - opts_.feas_tol) c = -1.0;
      if (x_[v] > up_[v] + opts_.feas_tol) c = 1.0;
      y_[i] = c;
    } else {
      y_[i] = cost_[v];
    }
  }
  if (m_ > 0) factor_.Btran(y_);

  double dq = 0.0;
  const int q = Price(phase1, y_, &dq);
  if (q < 0) return phase1 ? Outcome::kInfeasible : Outcome::kOptimal;

  // Entering column in basis coordinates.
  std::fill(alpha_.begin(), alpha_.end(), 0.0);
  for (int k = col_start_[q]; k < col_start_[q + 1]; ++k) {
    alpha_[row_index_[k]] = value_[k];
  }
  if (m_ > 0) factor_.Ftran(alpha_);

  const double dir = dq < 0.0 ? 1.0 : -1.0;
  const double tol = opts_.feas_tol;

  // Pass 1: Harris bound on the step.
  double harris = kInf;
  for (int i = 0; i < m_; ++i) {
    const double a = alpha_[i];
    if (std::abs(a) < kPivotTol) continue;
    const int v = head_[i];
    const double delta = -dir * a;
    const double xv = x_[v];
    if (phase1 && xv < lo_[v] - tol) {
      if (delta > 0.0) harris = std::min(harris, (lo_[v] - xv) / delta);
      continue;
    }
    if (phase1 && xv > up_[v] + tol) {
      if (delta < 0.0) harris = std::min(harris, (xv - up_[v]) / -delta);
      continue;
    }
    if (bland_) {
      if (delta < 0.0 && std::isfinite(lo_[v])) {
        harris = std::min(harris, std::max(0.0, (xv - lo_[v]) / -delta));
      } else if (delta > 0.0 && std::isfinite(up_[v])) {
        harris = std::min(harris, std::max(0.0, (up_[v] - xv) / delta));
      }
    } else {
      if (delta < 0.0 && std::isfinite(lo_[v])) {
        harris = std::min(harris, (xv - lo_[v] + tol) / -delta);
      } else if (delta > 0.0 && std::isfinite(up_[v])) {
        harris = std::min(harris, (up_[v] - xv + tol) / delta);
      }
    }
  }

  // Pass 2: among ratios within the Harris bound pick the largest pivot
  // (Bland: the lowest variable index among exact ties).
  int leave = -1;
  double step = 0.0;
  bool leave_at_upper = false;
  if (std::isfinite(harris)) {
    double best_pivot = 0.0;
    int best_var = -1;
    for (int i = 0; i < m_; ++i) {
      const double a = alpha_[i];
      if (std::abs(a) < kPivotTol) continue;
      const int v = head_[i];
      const double delta = -dir * a;
      const double xv = x_[v];
      double ratio = kInf;
      bool to_upper = false;
      if (phase1 && xv < lo_[v] - tol) {
        if (delta <= 0.0) continue;
        ratio = (lo_[v] - xv) / delta;
      } else if (phase1 && xv > up_[v] + tol) {
        if (delta >= 0.0) continue;
        ratio = (xv - up_[v]) / -delta;
        to_upper = true;
      } else if (delta < 0.0 && std::isfinite(lo_[v])) {
        ratio = std::max(0.0, (xv - lo_[v]) / -delta);
      } else if (delta > 0.0 && std::isfinite(up_[v])) {
        ratio = std::max(0.0, (up_[v] - xv) / delta);
        to_upper = true;
      } else {
        continue;
      }
      if (ratio > harris * (1.0 + 1e-12) + 1e-15) continue;
      bool take = false;
      if (bland_) {
        take = leave < 0 || ratio < step - 1e-12 ||
               (ratio <= step + 1e-12 && v < best_var);
      } else {
        take = std::abs(a) > best_pivot;
      }
      if (take) {
        leave = i;
        best_pivot = std::abs(a);
        best_var = v;
        step = ratio;
        leave_at_upper = to_upper;
      }
    }
  }

  const double range = up_[q] - lo_[q];  // inf for free or half-bounded
  const bool flip = std::isfinite(range) && (leave < 0 || range <= step);
  if (leave < 0 && !flip) {
    if (phase1) {
      // A phase-1 ray is impossible in exact arithmetic; refresh and retry.
      return Outcome::kStall;
    }
    return Outcome::kUnbounded;
  }
  if (flip) step = range;

  if (step < kDegenerateStep) {
    if (++degenerate_run_ >= opts_.degeneracy_threshold) bland_ = true;
  } else {
    degenerate_run_ = 0;
    bland_ = false;
  }

  // Move.
  if (step != 0.0) {
    x_[q] += dir * step;
    for (int i = 0; i < m_; ++i) {
      if (alpha_[i] != 0.0) x_[head_[i]] -= dir * step * alpha_[i];
    }
  }
  fresh_ = false;
  if (flip) {
    if (status_[q] == VarStatus::kAtLower) {
      status_[q] = VarStatus::kAtUpper;
      x_[q] = up_[q];
    } else {
      status_[q] = VarStatus::kAtLower;
      x_[q] = lo_[q];
    }
    return Outcome::kContinue;
  }

  const int out = head_[leave];
  if (leave_at_upper) {
    status_[out] = VarStatus::kAtUpper;
    x_[out] = up_[out];
  } else {
    status_[out] = VarStatus::kAtLower;
    x_[out] = lo_[out];
  }
  pos_[out] = -1;
  head_[leave] = q;
  pos_[q] = leave;
  status_[q] = VarStatus::kBasic;
  factor_.Update(leave, alpha_);
  if (factor_.num_updates() >= opts_.refactor_interval) {
    if (!Factorize()) {
      SetSlackBasis();
      Factorize();
    }
    ComputeBasicValues();
  }
  return Outcome::kContinue;
}

LpSolution BoundedSimplex::Run(const std::vector<VarStatus>& warm_start) {
  const auto start = std::chrono::steady_clock::now();
  LpSolution sol;

  bool ok = !warm_start.empty() && LoadWarmStart(warm_start) && Factorize();
  if (!ok) {
    SetSlackBasis();
    Factorize();
  }
  ComputeBasicValues();

  LpStatus status = LpStatus::kIterationLimit;
  int stalls = 0;
  std::int64_t passes = 0;
  while (passes++ < opts_.max_iterations) {
    const bool phase1 = BasicInfeasibility() > 0.0;
    const Outcome outcome = Iterate(phase1);
    if (outcome == Outcome::kContinue) {
      ++iterations_;
      continue;
    }
    if (outcome == Outcome::kStall && fresh_ && ++stalls > 3) break;
    // Terminal verdicts are only accepted on a fresh factorization.
    if (!fresh_) {
      if (!Factorize()) {
        SetSlackBasis();
        Factorize();
      }
      ComputeBasicValues();
      continue;
    }
    if (outcome == Outcome::kStall) continue;
    if (outcome == Outcome::kOptimal) {
      status = LpStatus::kOptimal;
    } else if (outcome == Outcome::kInfeasible) {
      status = LpStatus::kInfeasible;
    } else {
      status = LpStatus::kUnbounded;
    }
    break;
  }

  sol.status = status;
  sol.iterations = iterations_;
  sol.x.assign(x_.begin(), x_.begin() + n_);
  sol.basis = status_;

  // Duals from phase-2 costs on the final basis.
  for (int i = 0; i < m_; ++i) y_[i] = cost_[head_[i]];
  if (m_ > 0) factor_.Btran(y_);
  const double sign = (maximize_ ? -1.0 : 1.0) / cost_scale_;
  sol.duals.resize(m_);
  for (int i = 0; i < m_; ++i) sol.duals[i] = sign * y_[i];
  sol.reduced_costs.resize(n_);
  for (int j = 0; j < n_; ++j) {
    sol.reduced_costs[j] = sign * (cost_[j] + ReducedCost(j, y_));
  }
  double obj = 0.0;
  for (int j = 0; j < n_; ++j) obj += cost_[j] * x_[j];
  sol.objective = sign * obj;
  sol.wall_time = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  return sol;
}

}  // namespace

LpSolution SolveLp(const LinearProgram& lp, const SolverOptions& opts,
                   const std::vector<VarStatus>& warm_start) {
  lp.Validate();
  BoundedSimplex simplex(lp, opts);
  LpSolution sol = simplex.Run(warm_start);
  sol.objective += lp.objective_offset;
  return sol;
}

LpSolution SolveLp(const LinearProgram& lp, const std::vector<double>& lower,
                   const std::vector<double>& upper, const SolverOptions& opts,
                   const std::vector<VarStatus>& warm_start) {
  lp.Validate();
  if (static_cast<int>(lower.size()) != lp.num_cols() ||
      static_cast<int>(upper.size()) != lp.num_cols()) {
    throw std::invalid_argument("bound override has wrong length");
  }
  for (int j = 0; j < lp.num_cols(); ++j) {
    if (std::isnan(lower[j]) || std::isnan(upper[j])) {
      throw std::invalid_argument("NaN in bound override");
    }
    if (lower[j] > upper[j]) {
      LpSolution sol;
      sol.status = LpStatus::kInfeasible;
      return sol;
    }
  }
  BoundedSimplex simplex(lp, opts);
  simplex.OverrideBounds(lower, upper);
  LpSolution sol = simplex.Run(warm_start);
  sol.objective += lp.objective_offset;
  return sol;
}

}  // namespace flexdesign
