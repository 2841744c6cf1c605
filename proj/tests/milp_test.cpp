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
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "flexdesign/milp.hpp"
#include "instances.hpp"

namespace flexdesign {
namespace {

// Best objective over every binary pattern, each solved as an LP.
struct Enumerated {
  bool feasible = false;
  double objective = 0.0;
};

Enumerated Enumerate(const MixedIntegerProgram& mip) {
  const int nb = static_cast<int>(mip.binaries.size());
  const double sign =
      mip.lp.sense == ObjectiveSense::kMaximize ? 1.0 : -1.0;
  Enumerated best;
  for (std::uint32_t mask = 0; mask < (1u << nb); ++mask) {
    std::vector<double> lo = mip.lp.lower;
    std::vector<double> up = mip.lp.upper;
    for (int b = 0; b < nb; ++b) {
      const double v = (mask >> b) & 1u ? 1.0 : 0.0;
      lo[mip.binaries[b]] = std::max(lo[mip.binaries[b]], v);
      up[mip.binaries[b]] = std::min(up[mip.binaries[b]], v);
    }
    const LpSolution sol = SolveLp(mip.lp, lo, up);
    if (sol.status != LpStatus::kOptimal) continue;
    if (!best.feasible || sign * sol.objective > sign * best.objective) {
      best.feasible = true;
      best.objective = sol.objective;
    }
  }
  return best;
}

MixedIntegerProgram RandomMip(std::mt19937_64& rng, int max_binaries) {
  MixedIntegerProgram mip;
  mip.lp = testing::RandomBoxLp(rng, 6, 6);
  const int n = mip.lp.num_cols();
  const int nb = testing::UniformInt(rng, 1, std::min(n, max_binaries));
  for (int j = 0; j < nb; ++j) {
    mip.lp.lower[j] = 0.0;
    mip.lp.upper[j] = 1.0;
    mip.binaries.push_back(j);
  }
  return mip;
}

TEST(SolveMilpTest, FixedBinariesReduceToLp) {
  MixedIntegerProgram mip;
  mip.lp.sense = ObjectiveSense::kMaximize;
  const int x = mip.lp.AddColumn(1.0, 0.0, 5.0);
  const int y = mip.lp.AddColumn(2.0, 1.0, 1.0);
  const int r = mip.lp.AddRow(RowSense::kLessEqual, 3.5);
  mip.lp.AddEntry(r, x, 1.0);
  mip.lp.AddEntry(r, y, 1.0);
  mip.binaries = {y};
  const MilpSolution sol = SolveMilp(mip);
  ASSERT_EQ(sol.status, MilpStatus::kOptimal);
  EXPECT_NEAR(sol.objective, SolveLp(mip.lp).objective, 1e-12);
  EXPECT_NEAR(sol.objective, 4.5, 1e-12);
}

TEST(SolveMilpTest, BigUForcesIndicator) {
  // max (1 - y) s.t. 0.5 <= y U with U = 10: y = 0 is infeasible.
  MixedIntegerProgram mip;
  mip.lp.sense = ObjectiveSense::kMaximize;
  mip.lp.objective_offset = 1.0;
  const int y = mip.lp.AddColumn(-1.0, 0.0, 1.0);
  const int r = mip.lp.AddRow(RowSense::kGreaterEqual, 0.5);
  mip.lp.AddEntry(r, y, 10.0);
  mip.binaries = {y};
  const MilpSolution sol = SolveMilp(mip);
  ASSERT_EQ(sol.status, MilpStatus::kOptimal);
  EXPECT_EQ(sol.x[y], 1.0);
  EXPECT_NEAR(sol.objective, 0.0, 1e-12);
  EXPECT_NEAR(sol.root_bound, 0.95, 1e-12);
}

TEST(SolveMilpTest, TinyViolationStillForcesIndicator) {
  // Relaxed y = 1e-7 sits inside int_tol; snapping it to 0 is infeasible.
  MixedIntegerProgram mip;
  mip.lp.sense = ObjectiveSense::kMaximize;
  mip.lp.objective_offset = 1.0;
  const int x = mip.lp.AddColumn(0.0, 1e-3, kInf);
  const int y = mip.lp.AddColumn(-1.0, 0.0, 1.0);
  const int r = mip.lp.AddRow(RowSense::kLessEqual, 0.0);
  mip.lp.AddEntry(r, x, 1.0);
  mip.lp.AddEntry(r, y, -1e4);
  mip.binaries = {y};
  const MilpSolution sol = SolveMilp(mip);
  ASSERT_EQ(sol.status, MilpStatus::kOptimal);
  EXPECT_EQ(sol.x[y], 1.0);
  EXPECT_NEAR(sol.objective, 0.0, 1e-12);
}

TEST(SolveMilpTest, TwoItemKnapsack) {
  MixedIntegerProgram mip;
  mip.lp.sense = ObjectiveSense::kMaximize;
  const int a = mip.lp.AddColumn(1.0, 0.0, 1.0);
  const int b = mip.lp.AddColumn(1.0, 0.0, 1.0);
  const int r = mip.lp.AddRow(RowSense::kLessEqual, 1.0);
  mip.lp.AddEntry(r, a, 1.0);
  mip.lp.AddEntry(r, b, 1.0);
  mip.binaries = {a, b};
  const MilpSolution sol = SolveMilp(mip);
  ASSERT_EQ(sol.status, MilpStatus::kOptimal);
  EXPECT_NEAR(sol.objective, 1.0, 1e-12);
  EXPECT_NEAR(sol.x[a] + sol.x[b], 1.0, 1e-12);
}

TEST(SolveMilpTest, FractionalRootNeedsBranching) {
  // max 5a + 4b + 3c s.t. 2a + 3b + c <= 5, 4a + b + 2c <= 11, 3a + 4b + 2c
  // <= 8, binaries: the LP optimum is fractional, the integer one is 9.
  MixedIntegerProgram mip;
  mip.lp.sense = ObjectiveSense::kMaximize;
  for (double c : {5.0, 4.0, 3.0}) mip.lp.AddColumn(c, 0.0, 1.0);
  const double rows[3][4] = {{2, 3, 1, 5}, {4, 1, 2, 11}, {3, 4, 2, 8}};
  for (const auto& row : rows) {
    const int r = mip.lp.AddRow(RowSense::kLessEqual, row[3]);
    for (int j = 0; j < 3; ++j) mip.lp.AddEntry(r, j, row[j]);
  }
  mip.binaries = {0, 1, 2};
  const MilpSolution sol = SolveMilp(mip);
  ASSERT_EQ(sol.status, MilpStatus::kOptimal);
  EXPECT_NEAR(sol.objective, Enumerate(mip).objective, 1e-9);
  EXPECT_NEAR(sol.objective, 9.0, 1e-9);
}

TEST(SolveMilpTest, InfeasibleBase) {
  MixedIntegerProgram mip;
  const int y = mip.lp.AddColumn(1.0, 0.0, 1.0);
  const int r = mip.lp.AddRow(RowSense::kGreaterEqual, 2.0);
  mip.lp.AddEntry(r, y, 1.0);
  mip.binaries = {y};
  EXPECT_EQ(SolveMilp(mip).status, MilpStatus::kInfeasible);
  EXPECT_EQ(LpBound(mip).status, LpStatus::kInfeasible);
}

TEST(SolveMilpTest, IntegerGapInfeasible) {
  // 0.3 <= y <= 0.7 has LP points but no binary point.
  MixedIntegerProgram mip;
  const int y = mip.lp.AddColumn(1.0, 0.0, 1.0);
  const int lo = mip.lp.AddRow(RowSense::kGreaterEqual, 0.3);
  const int hi = mip.lp.AddRow(RowSense::kLessEqual, 0.7);
  mip.lp.AddEntry(lo, y, 1.0);
  mip.lp.AddEntry(hi, y, 1.0);
  mip.binaries = {y};
  EXPECT_EQ(LpBound(mip).status, LpStatus::kOptimal);
  EXPECT_EQ(SolveMilp(mip).status, MilpStatus::kInfeasible);
}

TEST(SolveMilpTest, NonBinaryBoundsRejected) {
  MixedIntegerProgram mip;
  mip.lp.AddColumn(1.0, 0.0, 2.0);
  mip.binaries = {0};
  EXPECT_THROW(mip.Validate(), std::invalid_argument);
  EXPECT_THROW(SolveMilp(mip), std::invalid_argument);
}

TEST(SolveMilpTest, MatchesEnumerationOnRandomPrograms) {
  std::mt19937_64 rng(4242);
  int solved = 0;
  for (int t = 0; t < 150; ++t) {
    const MixedIntegerProgram mip = RandomMip(rng, 6);
    const Enumerated oracle = Enumerate(mip);
    const MilpSolution sol = SolveMilp(mip);
    if (!oracle.feasible) {
      EXPECT_EQ(sol.status, MilpStatus::kInfeasible) << "trial " << t;
      continue;
    }
    ASSERT_EQ(sol.status, MilpStatus::kOptimal) << "trial " << t;
    EXPECT_NEAR(sol.objective, oracle.objective, 1e-6) << "trial " << t;
    for (int j : mip.binaries) {
      EXPECT_TRUE(sol.x[j] == 0.0 || sol.x[j] == 1.0);
    }
    ++solved;
  }
  EXPECT_GT(solved, 50);
}

TEST(SolveMilpTest, TwelveBinaryIndicatorProgram) {
  // max sum (1 - y_k) / 12 s.t. x >= t_k - U y_k, x <= 6 for a shared x.
  std::mt19937_64 rng(12);
  MixedIntegerProgram mip;
  mip.lp.sense = ObjectiveSense::kMaximize;
  mip.lp.objective_offset = 1.0;
  const int x = mip.lp.AddColumn(0.0, 0.0, 6.0);
  const int z = mip.lp.AddColumn(0.0, 0.0, 10.0);
  const int couple = mip.lp.AddRow(RowSense::kLessEqual, 9.0);
  mip.lp.AddEntry(couple, x, 1.0);
  mip.lp.AddEntry(couple, z, 1.0);
  for (int k = 0; k < 12; ++k) {
    const int y = mip.lp.AddColumn(-1.0 / 12, 0.0, 1.0);
    mip.binaries.push_back(y);
    const int r = mip.lp.AddRow(RowSense::kGreaterEqual,
                                testing::Uniform(rng, 0.0, 10.0));
    mip.lp.AddEntry(r, k % 2 == 0 ? x : z, 1.0);
    mip.lp.AddEntry(r, y, 1e4);
  }
  const MilpSolution sol = SolveMilp(mip);
  ASSERT_EQ(sol.status, MilpStatus::kOptimal);
  EXPECT_NEAR(sol.objective, Enumerate(mip).objective, 1e-6);
}

TEST(SolveMilpTest, BoundSandwichAtEveryNode) {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 40; ++t) {
    const MixedIntegerProgram mip = RandomMip(rng, 6);
    const bool maximize = mip.lp.sense == ObjectiveSense::kMaximize;
    MilpOptions opts;
    int events = 0;
    opts.on_node = [&](const MilpNodeEvent& e) {
      ++events;
      if (!e.has_incumbent) return;
      if (maximize) {
        EXPECT_GE(e.best_bound, e.incumbent - 1e-9);
      } else {
        EXPECT_LE(e.best_bound, e.incumbent + 1e-9);
      }
    };
    const MilpSolution sol = SolveMilp(mip, opts);
    if (sol.status == MilpStatus::kOptimal) {
      const double bound = LpBound(mip).objective;
      if (maximize) {
        EXPECT_GE(bound, sol.objective - 1e-9);
      } else {
        EXPECT_LE(bound, sol.objective + 1e-9);
      }
      EXPECT_EQ(events, sol.nodes);
    }
  }
}

TEST(SolveMilpTest, DeterministicNodeCounts) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 30; ++t) {
    const MixedIntegerProgram mip = RandomMip(rng, 6);
    const MilpSolution a = SolveMilp(mip);
    const MilpSolution b = SolveMilp(mip);
    EXPECT_EQ(a.status, b.status);
    EXPECT_EQ(a.nodes, b.nodes);
    EXPECT_EQ(a.x, b.x);
  }
}

TEST(SolveMilpTest, NodeLimitReportsIncumbentStatus) {
  MixedIntegerProgram mip;
  mip.lp.sense = ObjectiveSense::kMaximize;
  for (double c : {5.0, 4.0, 3.0}) mip.lp.AddColumn(c, 0.0, 1.0);
  const int r = mip.lp.AddRow(RowSense::kLessEqual, 2.5);
  for (int j = 0; j < 3; ++j) mip.lp.AddEntry(r, j, 1.0);
  mip.binaries = {0, 1, 2};
  MilpOptions opts;
  opts.node_limit = 0;
  opts.root_rounding = false;
  const MilpSolution sol = SolveMilp(mip, opts);
  EXPECT_EQ(sol.status, MilpStatus::kTimeLimitNoIncumbent);
  EXPECT_EQ(SolveMilp(mip).status, MilpStatus::kOptimal);
}

TEST(SolveMilpTest, NodeRelaxationsCanBeDumped) {
  const auto dir = std::filesystem::temp_directory_path() / "flexdesign_nodes";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  MixedIntegerProgram mip;
  mip.lp.sense = ObjectiveSense::kMaximize;
  for (double c : {5.0, 4.0, 3.0}) mip.lp.AddColumn(c, 0.0, 1.0);
  const int r = mip.lp.AddRow(RowSense::kLessEqual, 2.5);
  for (int j = 0; j < 3; ++j) mip.lp.AddEntry(r, j, 1.0);
  mip.binaries = {0, 1, 2};
  MilpOptions opts;
  opts.node_mps_prefix = (dir / "node").string();
  const MilpSolution sol = SolveMilp(mip, opts);
  ASSERT_EQ(sol.status, MilpStatus::kOptimal);
  ASSERT_GT(sol.nodes, 1);
  const auto files = std::distance(std::filesystem::directory_iterator(dir),
                                   std::filesystem::directory_iterator());
  EXPECT_EQ(files, sol.nodes);
  std::ifstream root(dir / "node0.mps");
  ASSERT_TRUE(root.good());
  const MpsModel back = ReadMps(root);
  EXPECT_EQ(back.lp.num_cols(), 3);
  EXPECT_TRUE(back.integer_cols.empty());
  EXPECT_EQ(back.lp.upper, (std::vector<double>{1.0, 1.0, 1.0}));
  // Children carry the branching fix in their bounds.
  std::ifstream child(dir / "node1.mps");
  ASSERT_TRUE(child.good());
  const MpsModel c = ReadMps(child);
  int fixed = 0;
  for (int j = 0; j < 3; ++j) fixed += c.lp.lower[j] == c.lp.upper[j];
  EXPECT_EQ(fixed, 1);
  std::filesystem::remove_all(dir);
}

TEST(LpBoundTest, IntegralRelaxationEqualsOptimum) {
  MixedIntegerProgram mip;
  mip.lp.sense = ObjectiveSense::kMaximize;
  const int a = mip.lp.AddColumn(3.0, 0.0, 1.0);
  const int b = mip.lp.AddColumn(2.0, 0.0, 1.0);
  const int r = mip.lp.AddRow(RowSense::kLessEqual, 1.0);
  mip.lp.AddEntry(r, a, 1.0);
  mip.lp.AddEntry(r, b, 1.0);
  mip.binaries = {a, b};
  EXPECT_NEAR(LpBound(mip).objective, SolveMilp(mip).objective, 1e-12);
}

}  // namespace
}  // namespace flexdesign
