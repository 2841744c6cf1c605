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

// Command-line surface of flexdesign.
//
//   validate <net>
//   sample <net> --k N --seed S --out FILE
//   sf <net> [--design FILE] (--samples FILE | --k N --seed S)
//   center <net> [--design FILE]
//   sweep <net> (--samples FILE | --k N --seed S) --mode mip|cont|both
//         --grid SPEC [--direction max-sf|min-cost] [--time-limit T]
//         [--big-u U] [--no-screen] [--timings] --out DIR
//   compare <front.json> <front.json> [--timings] [--out FILE]
//   export-mps <net> --eps E --mode mip|cont (--samples FILE | --k --seed)
//         --out FILE
//   import-matpower <case.m> [--profile center|ieee14] --out FILE
//   bundled <unit-net|three-node|ieee14|case141> --out FILE
//   rerun <manifest.json> --out DIR
//
// <net> is a network file path or a bundled case name.

#ifndef FLEXDESIGN_TOOLS_CLI_HPP_
#define FLEXDESIGN_TOOLS_CLI_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "flexdesign/design.hpp"

namespace flexdesign::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitParse = 2,
  kExitSolver = 3,
  kExitInfeasible = 4,
};

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

// "a,b,c" or "first:last:step".
std::vector<double> ParseGrid(std::string_view spec);

struct Front {
  FormulationMode mode = FormulationMode::kMixedInteger;
  Direction direction = Direction::kMaxFlexibility;
  int samples = 0;
  std::vector<ParetoPoint> points;
};

std::string SerializeFront(const Front& front);
Front ParseFront(std::string_view text);

// Bundled case names resolve against this directory (data/ in the source
// tree unless FLEXDESIGN_DATA_DIR is set in the environment).
std::filesystem::path DataDir();

}  // namespace flexdesign::cli

#endif  // FLEXDESIGN_TOOLS_CLI_HPP_
