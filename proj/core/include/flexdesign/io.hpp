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

// Text formats: network files, MATPOWER case ingestion, bundled cases and
// result tables.
//
// Network file grammar (one record per line, '#' starts a comment):
//
//   flexnet 1                              header, must come first
//   name <word>                            optional
//   node <id> [<id> ...]
//   arc <id> <from> <to> <capacity> [<units>]
//   supplier <id> <node> <capacity>
//   demand <id> <node> <theta-index>       1-based
//   mean <v1> ... <vn>
//   covariance <v1> ... <vn>               one line per row, n lines
//   cost arc|supplier <id> <weight>        optional; unlisted weights keep
//                                          the default 1/sqrt(n_d)
//   big_u <value>                          optional, default 10000

#ifndef FLEXDESIGN_IO_HPP_
#define FLEXDESIGN_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "flexdesign/design.hpp"
#include "flexdesign/flexibility.hpp"
#include "flexdesign/model.hpp"
#include "flexdesign/sampling.hpp"

namespace flexdesign {

struct NetworkFile {
  std::string name;
  Network network;
  GaussianSpec gaussian;
  CostSpec cost;
  double big_u = kDefaultBigU;
};

// Throws ParseError (with line/column) on syntax problems and
// ValidationError on model invariant violations.
NetworkFile ParseNetworkFile(std::string_view text);
std::string SerializeNetworkFile(const NetworkFile& file);
// serialize(parse(text)).
std::string NormalizeNetworkFile(std::string_view text);

// Design file: header "design 1", then "arc <id> <value>" and
// "supplier <id> <value>" lines. Unlisted entries are zero.
DesignVector ParseDesignFile(std::string_view text, const Network& net);
std::string SerializeDesign(const DesignVector& design, const Network& net);

std::string ReadTextFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, std::string_view text);
NetworkFile LoadNetworkFile(const std::filesystem::path& path);

struct MatpowerCase {
  struct Bus {
    int id = 0;
    double demand = 0.0;  // Pd
  };
  struct Generator {
    int bus = 0;
    double capacity = 0.0;  // Pmax
    bool in_service = true;
  };
  struct Branch {
    int from = 0;
    int to = 0;
    bool in_service = true;
  };
  std::vector<Bus> buses;
  std::vector<Generator> generators;
  std::vector<Branch> branches;
};

// Reads mpc.bus, mpc.gen and mpc.branch; every other field is ignored.
MatpowerCase ParseMatpowerCase(std::string_view text);

// Buses become nodes, in-service generators suppliers, in-service branches
// arcs with the given capacity, and buses with nonzero demand become
// demands in bus order.
Network MatpowerToNetwork(const MatpowerCase& mpc, double arc_capacity = 100.0);

// Bundled cases.
NetworkFile UnitNetCase();
NetworkFile ThreeNodeCase();
NetworkFile Ieee14Case(const MatpowerCase& mpc);
// Mean placed at the feasible center of the undesigned network.
NetworkFile Case141(const MatpowerCase& mpc);

// Delimited result table with one row per epsilon. Either front may be
// empty; its columns are then NA. Timing columns are NA when
// `with_timings` is false so repeated runs compare byte for byte.
void WriteResultTable(const std::vector<ParetoPoint>& mip,
                      const std::vector<ParetoPoint>& cont,
                      bool with_timings, std::ostream& out);

// Shortest decimal text that reads back to the same double.
std::string FormatDouble(double v);

}  // namespace flexdesign

#endif  // FLEXDESIGN_IO_HPP_
