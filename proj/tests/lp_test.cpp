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

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include <gtest/gtest.h>

#include "flexdesign/lp.hpp"
#include "instances.hpp"

namespace flexdesign {
namespace {

LinearProgram TwoVarSimplexCorner() {
  LinearProgram lp;
  lp.AddColumn(-1.0, 0.0, 1.0);
  lp.AddColumn(-1.0, 0.0, 1.0);
  const int r = lp.AddRow(RowSense::kLessEqual, 1.0);
  lp.AddEntry(r, 0, 1.0);
  lp.AddEntry(r, 1, 1.0);
  return lp;
}

TEST(SolveLpTest, SingleLowerBound) {
  LinearProgram lp;
  lp.AddColumn(1.0, -kInf, kInf);
  const int r = lp.AddRow(RowSense::kGreaterEqual, 3.0);
  lp.AddEntry(r, 0, 1.0);
  const LpSolution sol = SolveLp(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.x[0], 3.0, 1e-12);
  EXPECT_NEAR(sol.objective, 3.0, 1e-12);
  EXPECT_NEAR(sol.duals[0], 1.0, 1e-12);
}

TEST(SolveLpTest, CornerOfSimplex) {
  const LinearProgram lp = TwoVarSimplexCorner();
  const LpSolution sol = SolveLp(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.objective, -1.0, 1e-12);
  EXPECT_NEAR(sol.x[0] + sol.x[1], 1.0, 1e-12);
  const testing::VertexOracle oracle = testing::EnumerateVertices(lp);
  ASSERT_TRUE(oracle.feasible);
  EXPECT_NEAR(oracle.objective, -1.0, 1e-12);
}

TEST(SolveLpTest, UnboundedRay) {
  LinearProgram lp;
  lp.sense = ObjectiveSense::kMaximize;
  lp.AddColumn(1.0, 0.0, kInf);
  const int r = lp.AddRow(RowSense::kGreaterEqual, 0.0);
  lp.AddEntry(r, 0, 1.0);
  EXPECT_EQ(SolveLp(lp).status, LpStatus::kUnbounded);
}

TEST(SolveLpTest, InfeasibleRows) {
  LinearProgram lp;
  lp.AddColumn(0.0, 0.0, 1.0);
  const int r = lp.AddRow(RowSense::kGreaterEqual, 2.0);
  lp.AddEntry(r, 0, 1.0);
  EXPECT_EQ(SolveLp(lp).status, LpStatus::kInfeasible);
}

TEST(SolveLpTest, NoRowsUsesBounds) {
  LinearProgram lp;
  lp.sense = ObjectiveSense::kMaximize;
  lp.AddColumn(2.0, -1.0, 4.0);
  lp.AddColumn(-1.0, -3.0, 5.0);
  const LpSolution sol = SolveLp(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.objective, 11.0, 1e-12);
}

TEST(SolveLpTest, DuplicateEntriesAreSummed) {
  LinearProgram lp;
  lp.sense = ObjectiveSense::kMaximize;
  lp.AddColumn(1.0, 0.0, kInf);
  const int r = lp.AddRow(RowSense::kLessEqual, 6.0);
  lp.AddEntry(r, 0, 1.0);
  lp.AddEntry(r, 0, 2.0);
  const LpSolution sol = SolveLp(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.x[0], 2.0, 1e-12);
}

TEST(SolveLpTest, CyclingExampleTerminates) {
  // The classic degenerate example on which textbook Dantzig pricing cycles.
  LinearProgram lp;
  for (double c : {-0.75, 150.0, -0.02, 6.0}) lp.AddColumn(c, 0.0, kInf);
  const int r1 = lp.AddRow(RowSense::kLessEqual, 0.0);
  const int r2 = lp.AddRow(RowSense::kLessEqual, 0.0);
  const int r3 = lp.AddRow(RowSense::kLessEqual, 1.0);
  const double a1[] = {0.25, -60.0, -0.04, 9.0};
  const double a2[] = {0.5, -90.0, -0.02, 3.0};
  for (int j = 0; j < 4; ++j) {
    lp.AddEntry(r1, j, a1[j]);
    lp.AddEntry(r2, j, a2[j]);
  }
  lp.AddEntry(r3, 2, 1.0);
  SolverOptions opts;
  opts.degeneracy_threshold = 1;
  const LpSolution sol = SolveLp(lp, opts);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.objective, -0.05, 1e-12);
}

TEST(SolveLpTest, InvalidProgramThrows) {
  LinearProgram lp;
  lp.AddColumn(1.0, 2.0, 1.0);
  EXPECT_THROW(SolveLp(lp), std::invalid_argument);
  LinearProgram nan;
  nan.AddColumn(std::nan(""), 0.0, 1.0);
  EXPECT_THROW(SolveLp(nan), std::invalid_argument);
}

TEST(SolveLpTest, BoundOverrideLeavesProgramAlone) {
  const LinearProgram lp = TwoVarSimplexCorner();
  const LpSolution sol = SolveLp(lp, {0.0, 0.0}, {0.25, 0.5});
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.objective, -0.75, 1e-12);
  EXPECT_EQ(SolveLp(lp, {0.5, 0.0}, {0.25, 1.0}).status,
            LpStatus::kInfeasible);
  EXPECT_NEAR(SolveLp(lp).objective, -1.0, 1e-12);
}

TEST(SolveLpTest, WarmStartFromOptimalBasisTakesNoPivots) {
  std::mt19937_64 rng(3);
  int checked = 0;
  for (int t = 0; t < 100; ++t) {
    const LinearProgram lp = testing::RandomBoxLp(rng, 6, 8);
    const LpSolution cold = SolveLp(lp);
    if (cold.status != LpStatus::kOptimal) continue;
    const LpSolution warm = SolveLp(lp, {}, cold.basis);
    ASSERT_EQ(warm.status, LpStatus::kOptimal);
    EXPECT_NEAR(warm.objective, cold.objective, 1e-9);
    EXPECT_EQ(warm.iterations, 0);
    ++checked;
  }
  EXPECT_GT(checked, 20);
}

TEST(SolveLpTest, GarbageWarmStartFallsBack) {
  const LinearProgram lp = TwoVarSimplexCorner();
  const std::vector<VarStatus> bad(3, VarStatus::kBasic);
  const LpSolution sol = SolveLp(lp, {}, bad);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.objective, -1.0, 1e-12);
}

TEST(SolveLpTest, MatchesVertexEnumeration) {
  std::mt19937_64 rng(20260101);
  int optimal = 0;
  for (int t = 0; t < 300; ++t) {
    const LinearProgram lp = testing::RandomBoxLp(rng, 5, 6);
    const testing::VertexOracle oracle = testing::EnumerateVertices(lp);
    const LpSolution sol = SolveLp(lp);
    if (!oracle.feasible) {
      EXPECT_EQ(sol.status, LpStatus::kInfeasible) << "trial " << t;
      continue;
    }
    ASSERT_EQ(sol.status, LpStatus::kOptimal) << "trial " << t;
    EXPECT_NEAR(sol.objective, oracle.objective, 1e-6) << "trial " << t;
    EXPECT_TRUE(VerifySolution(lp, sol).pass) << "trial " << t;
    ++optimal;
  }
  EXPECT_GT(optimal, 100);
}

TEST(SolveLpTest, ObjectiveScalingKeepsOptimalFace) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    LinearProgram lp = testing::RandomBoxLp(rng, 6, 8);
    const LpSolution base = SolveLp(lp);
    if (base.status != LpStatus::kOptimal) continue;
    for (double lambda : {1e-6, 3.0, 1e5}) {
      LinearProgram scaled = lp;
      for (double& c : scaled.objective) c *= lambda;
      const LpSolution sol = SolveLp(scaled);
      ASSERT_EQ(sol.status, LpStatus::kOptimal);
      EXPECT_NEAR(sol.objective, lambda * base.objective,
                  1e-9 * (1.0 + std::abs(lambda * base.objective)));
      EXPECT_NEAR(lp.Evaluate(sol.x), base.objective, 1e-7);
      EXPECT_TRUE(VerifySolution(scaled, sol).pass);
    }
  }
}

TEST(SolveLpTest, TinyCostsWithLargeCoefficients) {
  // max sum_k (1 - y_k) / K with x_k <= q_k + U y_k and x_k >= demand_k:
  // the optimum sets y_k = max(demand_k - q_k, 0) / U.
  const int k = 40;
  const double big_u = 1e4;
  std::mt19937_64 rng(5);
  LinearProgram lp;
  lp.sense = ObjectiveSense::kMaximize;
  lp.objective_offset = 1.0;
  double expected = 1.0;
  for (int i = 0; i < k; ++i) {
    const double cap = testing::Uniform(rng, 0.0, 10.0);
    const double demand = testing::Uniform(rng, 0.0, 20.0);
    const int x = lp.AddColumn(0.0, -kInf, kInf);
    const int y = lp.AddColumn(-1.0 / k, 0.0, 1.0);
    const int up = lp.AddRow(RowSense::kLessEqual, cap);
    lp.AddEntry(up, x, 1.0);
    lp.AddEntry(up, y, -big_u);
    const int dn = lp.AddRow(RowSense::kGreaterEqual, demand);
    lp.AddEntry(dn, x, 1.0);
    expected -= std::max(demand - cap, 0.0) / big_u / k;
  }
  const LpSolution sol = SolveLp(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.objective, expected, 1e-12);
  EXPECT_TRUE(VerifySolution(lp, sol).pass);
}

TEST(DualityTest, GapVanishesOnRandomPrograms) {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 200; ++t) {
    const LinearProgram lp = testing::RandomBoxLp(rng, 6, 8);
    const LpSolution sol = SolveLp(lp);
    if (sol.status != LpStatus::kOptimal) continue;
    const ResidualReport rep = VerifySolution(lp, sol);
    EXPECT_TRUE(rep.checked);
    EXPECT_LE(rep.duality_gap, 1e-6) << "trial " << t;
    EXPECT_LE(rep.max_dual_infeasibility, 1e-6) << "trial " << t;
  }
}

TEST(VerifySolutionTest, OptimalSolutionPasses) {
  const LinearProgram lp = TwoVarSimplexCorner();
  const ResidualReport rep = VerifySolution(lp, SolveLp(lp));
  EXPECT_TRUE(rep.checked);
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.note, "pass");
}

TEST(VerifySolutionTest, PerturbationOnActiveRowFails) {
  LinearProgram lp = TwoVarSimplexCorner();
  lp.upper = {kInf, kInf};
  LpSolution sol = SolveLp(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  sol.x[0] += 1e-3;
  const ResidualReport rep = VerifySolution(lp, sol);
  EXPECT_FALSE(rep.pass);
  EXPECT_NEAR(rep.max_row_residual, 1e-3, 1e-9);
}

TEST(VerifySolutionTest, SuboptimalVertexFails) {
  const LinearProgram lp = TwoVarSimplexCorner();
  LpSolution sol = SolveLp(lp);
  sol.x = {0.0, 0.0};
  sol.objective = 0.0;
  std::fill(sol.duals.begin(), sol.duals.end(), 0.0);
  EXPECT_FALSE(VerifySolution(lp, sol).pass);
}

TEST(VerifySolutionTest, InfeasibleStatusIsNotChecked) {
  LinearProgram lp;
  lp.AddColumn(0.0, 0.0, 1.0);
  const int r = lp.AddRow(RowSense::kGreaterEqual, 2.0);
  lp.AddEntry(r, 0, 1.0);
  const ResidualReport rep = VerifySolution(lp, SolveLp(lp));
  EXPECT_FALSE(rep.checked);
  EXPECT_NE(rep.note.find("no primal certificate checked"),
            std::string::npos);
}

TEST(MpsTest, RoundTripPreservesOptimum) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 40; ++t) {
    LinearProgram lp = testing::RandomBoxLp(rng, 6, 8);
    lp.objective_offset = 0.0;
    std::stringstream text;
    WriteMps(lp, {0}, text);
    const MpsModel back = ReadMps(text);
    EXPECT_EQ(back.integer_cols, std::vector<int>{0});
    ASSERT_EQ(back.lp.num_cols(), lp.num_cols());
    ASSERT_EQ(back.lp.num_rows(), lp.num_rows());
    const LpSolution a = SolveLp(lp);
    const LpSolution b = SolveLp(back.lp);
    ASSERT_EQ(a.status, b.status);
    if (a.status != LpStatus::kOptimal) continue;
    // Maximization is written negated.
    const double sign = lp.sense == back.lp.sense ? 1.0 : -1.0;
    EXPECT_NEAR(b.objective, sign * a.objective, 1e-9);
  }
}

TEST(MpsTest, FreeAndFixedBounds) {
  LinearProgram lp;
  lp.AddColumn(1.0, -kInf, kInf);
  lp.AddColumn(1.0, 2.0, 2.0);
  lp.AddColumn(1.0, -kInf, 3.0);
  const int r = lp.AddRow(RowSense::kEqual, 1.0);
  lp.AddEntry(r, 0, 1.0);
  lp.AddEntry(r, 2, 1.0);
  std::stringstream text;
  WriteMps(lp, {}, text);
  const MpsModel back = ReadMps(text);
  EXPECT_EQ(back.lp.lower[0], -kInf);
  EXPECT_EQ(back.lp.upper[0], kInf);
  EXPECT_EQ(back.lp.lower[1], 2.0);
  EXPECT_EQ(back.lp.upper[1], 2.0);
  EXPECT_EQ(back.lp.lower[2], -kInf);
  EXPECT_EQ(back.lp.upper[2], 3.0);
}

}  // namespace
}  // namespace flexdesign
