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
#include <filesystem>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "flexdesign/error.hpp"
#include "flexdesign/io.hpp"

namespace flexdesign {
namespace {

const std::filesystem::path kData = FLEXDESIGN_TEST_DATA_DIR;

constexpr const char* kUnitText = R"(flexnet 1
name unit_net
node n1
supplier s1 n1 1
demand r1 n1 1
mean 0.5
covariance 0.25
)";

TEST(NetworkFileTest, BundledUnitNet) {
  const NetworkFile f = LoadNetworkFile(kData / "unit_net.flexnet");
  EXPECT_EQ(f.network.num_nodes(), 1);
  EXPECT_EQ(f.network.num_suppliers(), 1);
  EXPECT_EQ(f.network.num_theta(), 1);
  EXPECT_EQ(f.network.num_arcs(), 0);
  EXPECT_EQ(f.big_u, 10000.0);
}

TEST(NetworkFileTest, BundledFilesMatchBuiltIns) {
  EXPECT_EQ(NormalizeNetworkFile(ReadTextFile(kData / "unit_net.flexnet")),
            SerializeNetworkFile(UnitNetCase()));
  EXPECT_EQ(NormalizeNetworkFile(ReadTextFile(kData / "three_node.flexnet")),
            SerializeNetworkFile(ThreeNodeCase()));
}

TEST(NetworkFileTest, MissingCovarianceNamesTheField) {
  std::string text = kUnitText;
  text.erase(text.find("covariance"));
  try {
    ParseNetworkFile(text);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("covariance"), std::string::npos);
  }
}

TEST(NetworkFileTest, ErrorsCarryLineAndColumn) {
  std::string text = kUnitText;
  text.replace(text.find("supplier s1 n1 1"), 16, "supplier s1 n1 abc");
  try {
    ParseNetworkFile(text);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4);
    EXPECT_EQ(e.column(), 16);
  }
}

TEST(NetworkFileTest, HeaderIsRequired) {
  EXPECT_THROW(ParseNetworkFile("node n1\n"), ParseError);
  EXPECT_THROW(ParseNetworkFile("flexnet 2\n"), ParseError);
}

TEST(NetworkFileTest, UnknownKeyIsRejected) {
  EXPECT_THROW(ParseNetworkFile(std::string(kUnitText) + "colour red\n"),
               ParseError);
}

TEST(NetworkFileTest, ModelViolationsAreValidationErrors) {
  std::string text = kUnitText;
  text.replace(text.find("supplier s1 n1"), 14, "supplier s1 n9");
  EXPECT_THROW(ParseNetworkFile(text), ValidationError);
}

TEST(NetworkFileTest, CommentsAndBlankLinesIgnored) {
  const std::string text =
      "# leading comment\n\n" + std::string(kUnitText) + "   # trailing\n";
  EXPECT_EQ(ParseNetworkFile(text).network.num_nodes(), 1);
}

TEST(NetworkFileTest, SerializeParseRoundTrip) {
  for (const NetworkFile& f : {UnitNetCase(), ThreeNodeCase()}) {
    const std::string once = SerializeNetworkFile(f);
    EXPECT_EQ(SerializeNetworkFile(ParseNetworkFile(once)), once);
    EXPECT_EQ(NormalizeNetworkFile(once), once);
  }
}

TEST(NetworkFileTest, CostWeightsAndBigURoundTrip) {
  NetworkFile f = ThreeNodeCase();
  f.cost.arc_weights = {0.25, 1.0 / 3.0};
  f.cost.supplier_weights = {2.0};
  f.big_u = 20000.0;
  const NetworkFile g = ParseNetworkFile(SerializeNetworkFile(f));
  EXPECT_EQ(g.cost.arc_weights, f.cost.arc_weights);
  EXPECT_EQ(g.cost.supplier_weights, f.cost.supplier_weights);
  EXPECT_EQ(g.big_u, 20000.0);
}

TEST(DesignFileTest, RoundTripAndDefaults) {
  const Network net = ThreeNodeCase().network;
  const DesignVector d = ParseDesignFile("design 1\narc a13 2.5\n", net);
  EXPECT_EQ(d.arc, (std::vector<double>{0.0, 2.5}));
  EXPECT_EQ(d.supplier, std::vector<double>{0.0});
  const DesignVector e = ParseDesignFile(SerializeDesign(d, net), net);
  EXPECT_EQ(e.arc, d.arc);
  EXPECT_EQ(e.supplier, d.supplier);
}

TEST(DesignFileTest, BadEntriesAreRejected) {
  const Network net = ThreeNodeCase().network;
  EXPECT_THROW(ParseDesignFile("design 1\narc zz 1\n", net), ParseError);
  EXPECT_THROW(ParseDesignFile("design 1\narc a12 -1\n", net), ParseError);
  EXPECT_THROW(ParseDesignFile("arc a12 1\n", net), ParseError);
}

TEST(MatpowerTest, Ieee14HasElevenDemands) {
  const MatpowerCase mpc =
      ParseMatpowerCase(ReadTextFile(kData / "cases" / "case14.m"));
  const Network net = MatpowerToNetwork(mpc);
  EXPECT_EQ(net.num_nodes(), 14);
  EXPECT_EQ(net.num_theta(), 11);
  EXPECT_EQ(net.num_arcs(), 20);
  EXPECT_EQ(net.num_suppliers(), 5);
}

TEST(MatpowerTest, Case141HasEightyFourDemands) {
  const MatpowerCase mpc =
      ParseMatpowerCase(ReadTextFile(kData / "cases" / "case141.m"));
  const Network net = MatpowerToNetwork(mpc);
  EXPECT_EQ(net.num_nodes(), 141);
  EXPECT_EQ(net.num_theta(), 84);
}

TEST(MatpowerTest, BundledNetworkFilesMatchCases) {
  const MatpowerCase mpc14 =
      ParseMatpowerCase(ReadTextFile(kData / "cases" / "case14.m"));
  EXPECT_EQ(NormalizeNetworkFile(ReadTextFile(kData / "ieee14.flexnet")),
            SerializeNetworkFile(Ieee14Case(mpc14)));
  const NetworkFile f141 = LoadNetworkFile(kData / "case141.flexnet");
  EXPECT_EQ(f141.network.num_nodes(), 141);
  EXPECT_EQ(f141.network.num_theta(), 84);
}

constexpr const char* kTinyCase = R"(function mpc = tiny
mpc.baseMVA = 100;
mpc.bus = [
  1 3 0 0 0 0 1 1 0 135 1 1.06 0.94;
  2 1 21.7 12.7 0 0 1 1 0 135 1 1.06 0.94;
  3 1 0 0 0 0 1 1 0 135 1 1.06 0.94;
];
mpc.gen = [
  1 0 0 10 -10 1 100 1 50 0;
];
mpc.branch = [
  1 2 0.01 0.05 0 0 0 0 0 0 1 -360 360;
  2 3 0.01 0.05 0 0 0 0 0 0 0 -360 360;
];
)";

TEST(MatpowerTest, TinyCaseMapping) {
  const MatpowerCase mpc = ParseMatpowerCase(kTinyCase);
  ASSERT_EQ(mpc.buses.size(), 3u);
  EXPECT_EQ(mpc.buses[1].demand, 21.7);
  ASSERT_EQ(mpc.generators.size(), 1u);
  EXPECT_EQ(mpc.generators[0].capacity, 50.0);
  ASSERT_EQ(mpc.branches.size(), 2u);
  EXPECT_FALSE(mpc.branches[1].in_service);
  const Network net = MatpowerToNetwork(mpc, 40.0);
  EXPECT_EQ(net.num_arcs(), 1);
  EXPECT_EQ(net.arcs[0].capacity, 40.0);
  EXPECT_EQ(net.num_theta(), 1);
  EXPECT_EQ(net.demands[0].node, "2");
}

TEST(MatpowerTest, BranchToUnknownBusIsAnError) {
  std::string text = kTinyCase;
  text.replace(text.find("  2 3 0.01"), 10, "  2 9 0.01");
  const MatpowerCase mpc = ParseMatpowerCase(text);
  EXPECT_THROW(MatpowerToNetwork(mpc), ValidationError);
}

TEST(MatpowerTest, MissingTableIsAParseError) {
  std::string text = kTinyCase;
  text.erase(text.find("mpc.gen"));
  EXPECT_THROW(ParseMatpowerCase(text), ParseError);
}

TEST(FormatDoubleTest, ShortestRoundTrip) {
  EXPECT_EQ(FormatDouble(0.25), "0.25");
  EXPECT_EQ(FormatDouble(10.0), "10");
  EXPECT_EQ(FormatDouble(0.1), "0.1");
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng);
    EXPECT_EQ(std::stod(FormatDouble(v)), v);
  }
}

ParetoPoint Point(double eps, double sf, FormulationMode mode) {
  ParetoPoint p;
  p.epsilon = eps;
  p.cost = eps / 2;
  p.sf = sf;
  p.indicators = {0, 1};
  p.mode = mode;
  p.status = PointStatus::kOptimal;
  p.optimal = true;
  p.wall_time = 1.5;
  return p;
}

TEST(ResultTableTest, BothFrontsWithoutTimings) {
  std::ostringstream out;
  WriteResultTable({Point(0.25, 0.5, FormulationMode::kMixedInteger)},
                   {Point(0.25, 0.5, FormulationMode::kContinuous)}, false,
                   out);
  EXPECT_EQ(out.str(),
            "eps_c\tdesign_cost\tsf_k_pct\tsf_bar_k_pct\tmip_time_s\t"
            "cont_time_s\ty_diff_pct\tmip_optimal\n"
            "0.25\t0.125000\t50.00\t50.00\tNA\tNA\t0.00\tyes\n");
}

TEST(ResultTableTest, SingleFrontWithTimings) {
  std::ostringstream out;
  WriteResultTable({}, {Point(1.0, 1.0, FormulationMode::kContinuous)}, true,
                   out);
  EXPECT_NE(out.str().find("1\t0.500000\tNA\t100.00\tNA\t1.5000\tNA\tNA\n"),
            std::string::npos);
}

}  // namespace
}  // namespace flexdesign
