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

#ifndef FLEXDESIGN_LP_HPP_
#define FLEXDESIGN_LP_HPP_

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace flexdesign {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class ObjectiveSense { kMinimize, kMaximize };
enum class RowSense { kLessEqual, kEqual, kGreaterEqual };

struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

// A linear program in row form:
//   min/max  c'x + offset
//   s.t.     A x (<=|=|>=) b,   lower <= x <= upper
// A is kept as an unordered triplet list; duplicate (row, col) entries are
// summed when the solver compiles the matrix.
struct LinearProgram {
  ObjectiveSense sense = ObjectiveSense::kMinimize;
  double objective_offset = 0.0;
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<Triplet> entries;
  std::vector<RowSense> row_sense;
  std::vector<double> rhs;

  int num_cols() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rhs.size()); }

  int AddColumn(double cost, double lo, double up);
  int AddRow(RowSense sense, double b);
  void AddEntry(int row, int col, double value);

  // Throws std::invalid_argument describing the first broken invariant
  // (inconsistent dimensions, NaN data, lower > upper, out-of-range entry).
  void Validate() const;

  // Objective value of x including the offset.
  double Evaluate(const std::vector<double>& x) const;
  // Row activities A x.
  std::vector<double> RowActivity(const std::vector<double>& x) const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* ToString(LpStatus status);

// Basis status of one variable (structural columns first, then one logical
// per row). Opaque to callers except for warm starting.
enum class VarStatus : std::uint8_t {
  kBasic,
  kAtLower,
  kAtUpper,
  kFree,  // nonbasic free variable held at zero
};

struct SolverOptions {
  double feas_tol = 1e-7;
  double opt_tol = 1e-7;
  std::int64_t max_iterations = 5'000'000;
  // Consecutive degenerate pivots tolerated before switching to Bland's rule.
  int degeneracy_threshold = 50;
  // Eta updates between basis refactorizations.
  int refactor_interval = 100;
};

struct LpSolution {
  LpStatus status = LpStatus::kIterationLimit;
  std::vector<double> x;
  double objective = 0.0;
  // Row duals in the objective sense of the program: d(objective)/d(rhs).
  std::vector<double> duals;
  // Reduced costs c_j - a_j' y for every structural column.
  std::vector<double> reduced_costs;
  std::int64_t iterations = 0;
  double wall_time = 0.0;
  // Final basis (size num_cols + num_rows), usable as a warm start.
  std::vector<VarStatus> basis;
};

// Two-phase bounded-variable primal simplex. `warm_start`, when non-empty,
// must have num_cols + num_rows entries; an inconsistent or singular warm
// basis is silently replaced by the slack basis.
LpSolution SolveLp(const LinearProgram& lp, const SolverOptions& opts = {},
                   const std::vector<VarStatus>& warm_start = {});

// Same as above with the column bounds replaced by `lower`/`upper`. The
// program's own bounds are ignored; crossing bounds yield kInfeasible.
LpSolution SolveLp(const LinearProgram& lp, const std::vector<double>& lower,
                   const std::vector<double>& upper,
                   const SolverOptions& opts = {},
                   const std::vector<VarStatus>& warm_start = {});

struct ResidualReport {
  bool checked = false;  // false when the status carries no primal point
  std::string note;
  double max_row_residual = 0.0;
  double max_bound_violation = 0.0;
  double max_dual_infeasibility = 0.0;
  double duality_gap = 0.0;
  bool pass = false;
};

// Largest row violation of x, each relative to 1 + |rhs| + sum |a_ij x_j|.
double ScaledRowViolation(const LinearProgram& lp,
                          const std::vector<double>& x);

ResidualReport VerifySolution(const LinearProgram& lp, const LpSolution& sol,
                              const SolverOptions& opts = {});

// Fixed-field MPS. Rows are named R0000001.., columns C0000001.. in model
// order; maximization problems are written with negated costs (noted in a
// comment line) so any MPS reader sees a minimization.
void WriteMps(const LinearProgram& lp, const std::vector<int>& integer_cols,
              std::ostream& out, const std::string& name = "FLEXDSGN");

struct MpsModel {
  LinearProgram lp;
  std::vector<int> integer_cols;
};

// Reads the subset of fixed/free MPS emitted by WriteMps (ROWS, COLUMNS with
// integer markers, RHS, BOUNDS with LO/UP/FX/FR/MI/PL/BV).
MpsModel ReadMps(std::istream& in);

}  // namespace flexdesign

#endif  // FLEXDESIGN_LP_HPP_
