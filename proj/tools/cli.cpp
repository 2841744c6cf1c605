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

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "flexdesign/error.hpp"
#include "flexdesign/flexibility.hpp"
#include "flexdesign/io.hpp"
#include "flexdesign/lp.hpp"
#include "flexdesign/sampling.hpp"
#include "json.hpp"

#ifndef FLEXDESIGN_VERSION
#define FLEXDESIGN_VERSION "unknown"
#endif
#ifndef FLEXDESIGN_DEFAULT_DATA_DIR
#define FLEXDESIGN_DEFAULT_DATA_DIR "data"
#endif

namespace flexdesign::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string Fingerprint(std::string_view text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream s;
  s << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

// Network -------------------------------------------------------------------

struct NetworkSource {
  std::string label;  // path or bundled name
  std::string text;   // canonical network file text
  std::string provenance;
  NetworkFile file;
};

std::string CaseRevision(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find("converted") != std::string::npos ||
        line.find("MATPOWER") != std::string::npos) {
      const auto first = line.find_first_not_of("% \t");
      return first == std::string::npos ? line : line.substr(first);
    }
  }
  return "unversioned";
}

std::optional<NetworkSource> Bundled(const std::string& name) {
  NetworkSource src;
  src.label = name;
  if (name == "unit-net") {
    src.file = UnitNetCase();
    src.provenance = "built-in unit network";
  } else if (name == "three-node") {
    src.file = ThreeNodeCase();
    src.provenance =
        "built-in three-node network; capacities chosen for this repository";
  } else if (name == "ieee14" || name == "case141") {
    const fs::path path =
        DataDir() / "cases" / (name == "ieee14" ? "case14.m" : "case141.m");
    const std::string text = ReadTextFile(path);
    const MatpowerCase mpc = ParseMatpowerCase(text);
    src.file = name == "ieee14" ? Ieee14Case(mpc) : Case141(mpc);
    src.provenance = path.filename().string() + " (" + CaseRevision(text) +
                     ", " + Fingerprint(text) + ")";
  } else {
    return std::nullopt;
  }
  src.text = SerializeNetworkFile(src.file);
  return src;
}

NetworkSource LoadNetwork(const std::string& arg) {
  if (fs::exists(arg)) {
    NetworkSource src;
    src.label = arg;
    const std::string raw = ReadTextFile(arg);
    src.file = ParseNetworkFile(raw);
    src.text = SerializeNetworkFile(src.file);
    src.provenance = "file " + arg + " (" + Fingerprint(raw) + ")";
    return src;
  }
  if (auto b = Bundled(arg)) return *std::move(b);
  throw UsageError("no such network file or bundled case: '" + arg + "'");
}

NetworkSource NetworkFromText(const std::string& label,
                              const std::string& text,
                              const std::string& provenance) {
  NetworkSource src;
  src.label = label;
  src.file = ParseNetworkFile(text);
  src.text = SerializeNetworkFile(src.file);
  src.provenance = provenance;
  return src;
}

// Samples -------------------------------------------------------------------

struct SampleSource {
  std::string path;  // empty: generated
  std::string text;  // file contents when read from a file
  int k = 1000;
  std::uint64_t seed = 42;
};

SampleSet ResolveSamples(const NetworkSource& net, SampleSource* src) {
  SampleSet s;
  if (!src->path.empty() || !src->text.empty()) {
    if (src->text.empty()) src->text = ReadTextFile(src->path);
    std::istringstream in(src->text);
    s = ReadSamples(in);
    src->k = s.size();
    src->seed = s.seed;
  } else {
    if (src->k < 1) throw UsageError("--k must be at least 1");
    s = DrawSamples(net.file.gaussian, src->k, src->seed);
  }
  if (s.dim() != net.file.network.num_theta()) {
    throw ValidationError("sample dimension " + std::to_string(s.dim()) +
                          " does not match the network's " +
                          std::to_string(net.file.network.num_theta()) +
                          " demands");
  }
  return s;
}

json SamplesJson(const SampleSource& src) {
  json j;
  if (src.text.empty()) {
    j["source"] = "generated";
    j["k"] = src.k;
    j["seed"] = src.seed;
    j["generator"] = kGeneratorTag;
  } else {
    j["source"] = src.path.empty() ? "embedded" : src.path;
    j["k"] = src.k;
    j["seed"] = src.seed;
    j["fingerprint"] = Fingerprint(src.text);
    j["text"] = src.text;
  }
  return j;
}

SampleSource SamplesFromJson(const json& j) {
  SampleSource src;
  if (j.at("source").get<std::string>() == "generated") {
    if (j.value("generator", std::string(kGeneratorTag)) != kGeneratorTag) {
      throw ValidationError("manifest uses an unknown sample generator");
    }
    src.k = j.at("k").get<int>();
    src.seed = j.at("seed").get<std::uint64_t>();
  } else {
    src.text = j.at("text").get<std::string>();
  }
  return src;
}

// Fronts --------------------------------------------------------------------

std::optional<PointStatus> PointStatusFrom(const std::string& s) {
  for (PointStatus p :
       {PointStatus::kOptimal, PointStatus::kTimeLimit, PointStatus::kNoSolution,
        PointStatus::kInfeasible, PointStatus::kFailed}) {
    if (s == ToString(p)) return p;
  }
  return std::nullopt;
}

std::string ModeName(FormulationMode m) {
  return m == FormulationMode::kMixedInteger ? "mip" : "cont";
}

std::string DirectionName(Direction d) {
  return d == Direction::kMaxFlexibility ? "max-sf" : "min-cost";
}

// Manifest and plot script --------------------------------------------------

json BaseManifest(const std::string& command,
                  const std::vector<std::string>& args) {
  json m;
  m["tool"] = "flexdesign";
  m["version"] = FLEXDESIGN_VERSION;
  m["command"] = command;
  m["argv"] = args;
  m["build"] = {{"compiler", __VERSION__},
                {"cxx_standard", static_cast<long>(__cplusplus)}};
  return m;
}

json NetworkJson(const NetworkSource& net) {
  return {{"label", net.label},
          {"provenance", net.provenance},
          {"fingerprint", Fingerprint(net.text)},
          {"text", net.text}};
}

json TolerancesJson(const DesignOptions& o) {
  return {{"feas_tol", o.feas_tol},
          {"round_tol", o.round_tol},
          {"int_tol", o.milp.int_tol},
          {"mip_gap_tol", o.milp.mip_gap_tol},
          {"lp_feas_tol", o.lp.feas_tol},
          {"lp_opt_tol", o.lp.opt_tol}};
}

void WriteJson(const fs::path& path, const json& j) {
  WriteTextFile(path, j.dump(2) + "\n");
}

constexpr const char* kPlotScript = R"PY(#!/usr/bin/env python3
"""Plot the Pareto front in results.tsv (matplotlib)."""
import csv
import sys
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = Path(__file__).resolve().parent
table = Path(sys.argv[1]) if len(sys.argv) > 1 else here / "results.tsv"
rows = list(csv.DictReader(table.open(), delimiter="\t"))
eps = [float(r["eps_c"]) for r in rows]

fig, ax = plt.subplots(figsize=(6, 4))
for column, label, marker in (("sf_k_pct", "mixed-integer", "o"),
                              ("sf_bar_k_pct", "continuous", "x")):
    pts = [(e, float(r[column])) for e, r in zip(eps, rows) if r[column] != "NA"]
    if pts:
        ax.plot(*zip(*pts), marker=marker, linestyle="-", label=label)
ax.set_xlabel("cost cap")
ax.set_ylabel("SF (%)")
ax.grid(True, alpha=0.3)
ax.legend()
fig.tight_layout()
out = table.with_suffix(".png")
fig.savefig(out, dpi=150)
print(out)
)PY";

// Sweep ---------------------------------------------------------------------

struct SweepConfig {
  NetworkSource network;
  SampleSource samples;
  std::vector<double> grid;
  std::string mode = "both";
  Direction direction = Direction::kMaxFlexibility;
  std::optional<double> big_u;
  double time_limit = kInf;
  bool screen = true;
  bool timings = false;
  fs::path out_dir = ".";
};

json SweepConfigJson(const SweepConfig& c) {
  json j;
  j["network"] = NetworkJson(c.network);
  j["samples"] = SamplesJson(c.samples);
  j["grid"] = c.grid;
  j["mode"] = c.mode;
  j["direction"] = DirectionName(c.direction);
  j["big_u"] = c.big_u.value_or(c.network.file.big_u);
  j["time_limit"] = std::isfinite(c.time_limit) ? json(c.time_limit) : json();
  j["screen"] = c.screen;
  j["timings"] = c.timings;
  return j;
}

SweepConfig SweepConfigFromJson(const json& j) {
  SweepConfig c;
  const json& n = j.at("network");
  c.network = NetworkFromText(n.at("label").get<std::string>(),
                              n.at("text").get<std::string>(),
                              n.value("provenance", std::string()));
  c.samples = SamplesFromJson(j.at("samples"));
  c.grid = j.at("grid").get<std::vector<double>>();
  c.mode = j.at("mode").get<std::string>();
  const std::string dir = j.at("direction").get<std::string>();
  if (dir != "max-sf" && dir != "min-cost") {
    throw ValidationError("unknown direction '" + dir + "' in manifest");
  }
  c.direction =
      dir == "max-sf" ? Direction::kMaxFlexibility : Direction::kMinCost;
  c.big_u = j.at("big_u").get<double>();
  if (!j.at("time_limit").is_null()) {
    c.time_limit = j.at("time_limit").get<double>();
  }
  c.screen = j.at("screen").get<bool>();
  c.timings = j.at("timings").get<bool>();
  return c;
}

std::vector<ParetoPoint> MinCostSweep(const NetworkFile& nf,
                                      const SampleSet& samples,
                                      const std::vector<double>& grid,
                                      FormulationMode mode, double big_u,
                                      const DesignOptions& opts) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 0.0 || grid[i] > 1.0) {
      throw UsageError("flexibility floors must lie in [0, 1]");
    }
    if (i > 0 && grid[i] <= grid[i - 1]) {
      throw UsageError("grid must be strictly increasing");
    }
  }
  std::vector<ParetoPoint> out;
  for (double eps : grid) {
    try {
      const ScenarioProgram prog =
          BuildScenarioProgram(nf.network, nf.cost, samples, mode,
                               Direction::kMinCost, eps, big_u);
      out.push_back(SolveDesignMinCost(prog, opts));
    } catch (const std::exception& e) {
      ParetoPoint p;
      p.epsilon = eps;
      p.mode = mode;
      p.status = PointStatus::kFailed;
      p.message = e.what();
      out.push_back(std::move(p));
    }
  }
  return out;
}

int RunSweep(SweepConfig c, const std::vector<std::string>& args,
             std::ostream& out, std::ostream& err) {
  if (c.mode != "mip" && c.mode != "cont" && c.mode != "both") {
    throw UsageError("--mode must be mip, cont or both");
  }
  if (c.grid.empty()) throw UsageError("--grid is empty");
  const SampleSet samples = ResolveSamples(c.network, &c.samples);
  const double big_u = c.big_u.value_or(c.network.file.big_u);
  DesignOptions opts;
  opts.screen = c.screen;
  opts.milp.time_limit = c.time_limit;

  fs::create_directories(c.out_dir);
  json manifest = BaseManifest("sweep", args);
  manifest["config"] = SweepConfigJson(c);
  manifest["tolerances"] = TolerancesJson(opts);

  Front fronts[2];
  const bool want[2] = {c.mode != "cont", c.mode != "mip"};
  const FormulationMode modes[2] = {FormulationMode::kMixedInteger,
                                    FormulationMode::kContinuous};
  json outputs = json::array();
  int failures = 0;
  for (int i = 0; i < 2; ++i) {
    if (!want[i]) continue;
    fronts[i].mode = modes[i];
    fronts[i].direction = c.direction;
    fronts[i].samples = samples.size();
    fronts[i].points =
        c.direction == Direction::kMaxFlexibility
            ? ParetoSweep(c.network.file.network, c.network.file.cost, samples,
                          c.grid, modes[i], big_u, opts)
            : MinCostSweep(c.network.file, samples, c.grid, modes[i], big_u,
                           opts);
    for (const ParetoPoint& p : fronts[i].points) {
      if (p.status == PointStatus::kFailed) {
        ++failures;
        err << "warning: " << ModeName(modes[i]) << " point eps="
            << FormatDouble(p.epsilon) << " failed: " << p.message << '\n';
      }
    }
    const std::string name = "front_" + ModeName(modes[i]) + ".json";
    WriteTextFile(c.out_dir / name, SerializeFront(fronts[i]));
    outputs.push_back(name);
  }

  std::ostringstream table;
  WriteResultTable(fronts[0].points, fronts[1].points, c.timings, table);
  WriteTextFile(c.out_dir / "results.tsv", table.str());
  WriteTextFile(c.out_dir / "plot_front.py", kPlotScript);
  outputs.push_back("results.tsv");
  outputs.push_back("plot_front.py");
  manifest["outputs"] = outputs;
  WriteJson(c.out_dir / "manifest.json", manifest);

  out << table.str();
  if (want[0] && want[1]) {
    const ComparisonReport rep =
        CompareFronts(fronts[0].points, fronts[1].points);
    if (rep.violations() > 0) {
      err << "warning: continuous flexibility exceeds a proven optimum at "
          << rep.violations() << " point(s)\n";
    }
  }
  return failures > 0 ? kExitSolver : kExitOk;
}

// Subcommands ---------------------------------------------------------------

DesignVector LoadDesign(const std::string& path, const Network& net) {
  if (path.empty()) return DesignVector::Zero(net);
  return ParseDesignFile(ReadTextFile(path), net);
}

std::string Percent(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << 100.0 * v;
  return s.str();
}

void AddSampleOptions(CLI::App* sub, SampleSource* src) {
  sub->add_option("--samples", src->path, "Sample file");
  sub->add_option("--k", src->k, "Number of samples to draw")
      ->check(CLI::PositiveNumber);
  sub->add_option("--seed", src->seed, "Sampling seed");
}

}  // namespace

std::filesystem::path DataDir() {
  if (const char* env = std::getenv("FLEXDESIGN_DATA_DIR")) return env;
  return FLEXDESIGN_DEFAULT_DATA_DIR;
}

std::vector<double> ParseGrid(std::string_view spec) {
  auto number = [&](std::string_view t) {
    while (!t.empty() && t.front() == ' ') t.remove_prefix(1);
    while (!t.empty() && t.back() == ' ') t.remove_suffix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() ||
        !std::isfinite(v)) {
      throw UsageError("bad grid value '" + std::string(t) + "'");
    }
    return v;
  };
  std::vector<double> grid;
  if (spec.find(':') != std::string_view::npos) {
    const auto a = spec.find(':');
    const auto b = spec.find(':', a + 1);
    if (b == std::string_view::npos ||
        spec.find(':', b + 1) != std::string_view::npos) {
      throw UsageError("range grid must be first:last:step");
    }
    const double first = number(spec.substr(0, a));
    const double last = number(spec.substr(a + 1, b - a - 1));
    const double step = number(spec.substr(b + 1));
    if (step <= 0.0 || last < first) {
      throw UsageError("range grid needs step > 0 and last >= first");
    }
    return MakeGrid(first, last, step);
  }
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    auto comma = spec.find(',', pos);
    if (comma == std::string_view::npos) comma = spec.size();
    grid.push_back(number(spec.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return grid;
}

std::string SerializeFront(const Front& front) {
  json j;
  j["format"] = "flexdesign-front";
  j["version"] = 1;
  j["mode"] = ModeName(front.mode);
  j["direction"] = DirectionName(front.direction);
  j["samples"] = front.samples;
  json pts = json::array();
  for (const ParetoPoint& p : front.points) {
    std::string y(p.indicators.size(), '0');
    for (std::size_t k = 0; k < p.indicators.size(); ++k) {
      if (p.indicators[k]) y[k] = '1';
    }
    pts.push_back({{"epsilon", p.epsilon},
                   {"cost", p.cost},
                   {"sf", p.sf},
                   {"status", ToString(p.status)},
                   {"optimal", p.optimal},
                   {"wall_time", p.wall_time},
                   {"nodes", p.nodes},
                   {"repairs", p.repairs},
                   {"message", p.message},
                   {"design", {{"arc", p.design.arc},
                               {"supplier", p.design.supplier}}},
                   {"indicators", y}});
  }
  j["points"] = std::move(pts);
  return j.dump(1) + "\n";
}

Front ParseFront(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), 1, static_cast<int>(e.byte));
  }
  try {
    if (j.at("format").get<std::string>() != "flexdesign-front" ||
        j.at("version").get<int>() != 1) {
      throw ValidationError("not a flexdesign front file (version 1)");
    }
    Front f;
    const std::string mode = j.at("mode").get<std::string>();
    if (mode != "mip" && mode != "cont") {
      throw ValidationError("unknown mode '" + mode + "'");
    }
    f.mode = mode == "mip" ? FormulationMode::kMixedInteger
                           : FormulationMode::kContinuous;
    f.direction = j.at("direction").get<std::string>() == "max-sf"
                      ? Direction::kMaxFlexibility
                      : Direction::kMinCost;
    f.samples = j.at("samples").get<int>();
    for (const json& p : j.at("points")) {
      ParetoPoint pt;
      pt.mode = f.mode;
      pt.epsilon = p.at("epsilon").get<double>();
      pt.cost = p.at("cost").get<double>();
      pt.sf = p.at("sf").get<double>();
      const auto status = PointStatusFrom(p.at("status").get<std::string>());
      if (!status) throw ValidationError("unknown point status");
      pt.status = *status;
      pt.optimal = p.at("optimal").get<bool>();
      pt.wall_time = p.at("wall_time").get<double>();
      pt.nodes = p.value("nodes", std::int64_t{0});
      pt.repairs = p.value("repairs", 0);
      pt.message = p.value("message", std::string());
      pt.design.arc = p.at("design").at("arc").get<std::vector<double>>();
      pt.design.supplier =
          p.at("design").at("supplier").get<std::vector<double>>();
      const std::string y = p.at("indicators").get<std::string>();
      if (!y.empty() && static_cast<int>(y.size()) != f.samples) {
        throw ValidationError("indicator string length differs from K");
      }
      for (char ch : y) {
        if (ch != '0' && ch != '1') {
          throw ValidationError("indicator string must be 0/1");
        }
        pt.indicators.push_back(ch == '1');
      }
      f.points.push_back(std::move(pt));
    }
    return f;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed front file: ") + e.what());
  }
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Capacity design for stochastic flexibility of networks",
               "flexdesign"};
  app.require_subcommand(1);
  app.set_version_flag("--version", FLEXDESIGN_VERSION);

  std::string net_arg;
  std::string design_path;
  std::string out_path;
  SampleSource samples;

  auto* validate = app.add_subcommand("validate", "Check a network file");
  validate->add_option("net", net_arg)->required();

  auto* sample = app.add_subcommand("sample", "Draw a sample file");
  sample->add_option("net", net_arg)->required();
  sample->add_option("--k", samples.k)->check(CLI::PositiveNumber);
  sample->add_option("--seed", samples.seed);
  sample->add_option("--out", out_path)->required();

  auto* sf = app.add_subcommand("sf", "Estimate flexibility of a design");
  sf->add_option("net", net_arg)->required();
  sf->add_option("--design", design_path, "Design file (default: zero)");
  AddSampleOptions(sf, &samples);

  auto* center = app.add_subcommand("center", "Feasible center of a design");
  center->add_option("net", net_arg)->required();
  center->add_option("--design", design_path);

  SweepConfig sweep_cfg;
  std::string grid_spec;
  std::string direction = "max-sf";
  double big_u = 0.0;
  bool no_screen = false;
  auto* sweep = app.add_subcommand("sweep", "Sweep the Pareto front");
  sweep->add_option("net", net_arg)->required();
  AddSampleOptions(sweep, &samples);
  sweep->add_option("--mode", sweep_cfg.mode)
      ->check(CLI::IsMember({"mip", "cont", "both"}));
  sweep->add_option("--grid", grid_spec, "a,b,c or first:last:step")
      ->required();
  sweep->add_option("--direction", direction)
      ->check(CLI::IsMember({"max-sf", "min-cost"}));
  sweep->add_option("--time-limit", sweep_cfg.time_limit, "Seconds per point")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--big-u", big_u)->check(CLI::PositiveNumber);
  sweep->add_flag("--no-screen", no_screen);
  sweep->add_flag("--timings", sweep_cfg.timings,
                  "Write solve times into results.tsv");
  sweep->add_option("--out", out_path, "Output directory")->required();

  std::vector<std::string> front_paths;
  bool cmp_timings = false;
  auto* compare = app.add_subcommand("compare", "Compare two front files");
  compare->add_option("fronts", front_paths)->required()->expected(2);
  compare->add_flag("--timings", cmp_timings);
  compare->add_option("--out", out_path);

  double eps = 0.0;
  std::string mps_mode = "mip";
  auto* mps = app.add_subcommand("export-mps", "Write a design program as MPS");
  mps->add_option("net", net_arg)->required();
  mps->add_option("--eps", eps)->required();
  mps->add_option("--mode", mps_mode)->check(CLI::IsMember({"mip", "cont"}));
  mps->add_option("--direction", direction)
      ->check(CLI::IsMember({"max-sf", "min-cost"}));
  AddSampleOptions(mps, &samples);
  mps->add_option("--out", out_path)->required();

  std::string case_path;
  std::string profile = "center";
  double arc_capacity = 100.0;
  auto* imp = app.add_subcommand("import-matpower",
                                 "Convert a MATPOWER case to a network file");
  imp->add_option("case", case_path)->required();
  imp->add_option("--profile", profile, "center or ieee14")
      ->check(CLI::IsMember({"center", "ieee14"}));
  imp->add_option("--arc-capacity", arc_capacity)
      ->check(CLI::NonNegativeNumber);
  imp->add_option("--out", out_path)->required();

  std::string bundled_name;
  auto* bundled = app.add_subcommand("bundled", "Write a bundled case");
  bundled->add_option("name", bundled_name)
      ->required()
      ->check(CLI::IsMember({"unit-net", "three-node", "ieee14", "case141"}));
  bundled->add_option("--out", out_path)->required();

  std::string manifest_path;
  auto* rerun = app.add_subcommand("rerun", "Repeat a sweep from its manifest");
  rerun->add_option("manifest", manifest_path)->required();
  rerun->add_option("--out", out_path, "Output directory")->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) {
      const NetworkSource net = LoadNetwork(net_arg);
      const Network& n = net.file.network;
      out << "valid: " << n.num_nodes() << " nodes, " << n.num_arcs()
          << " arcs, " << n.num_suppliers() << " suppliers, "
          << n.num_theta() << " demands\n";
      return kExitOk;
    }
    if (*sample) {
      const NetworkSource net = LoadNetwork(net_arg);
      const SampleSet s = DrawSamples(net.file.gaussian, samples.k,
                                      samples.seed);
      std::ofstream f(out_path);
      if (!f) throw Error("cannot write '" + out_path + "'");
      WriteSamples(s, f);
      f.close();
      json m = BaseManifest("sample", args);
      m["network"] = NetworkJson(net);
      m["samples"] = SamplesJson(samples);
      m["outputs"] = {out_path};
      WriteJson(out_path + ".manifest.json", m);
      out << "wrote " << s.size() << " samples to " << out_path << '\n';
      return kExitOk;
    }
    if (*sf) {
      const NetworkSource net = LoadNetwork(net_arg);
      const SampleSet s = ResolveSamples(net, &samples);
      const DesignVector d = LoadDesign(design_path, net.file.network);
      const SfEstimate est = EstimateSf(net.file.network, d, s);
      const double mi = MeanInfeasibility(net.file.network, d, s);
      out << "sf_k_pct\t" << Percent(est.value) << '\n'
          << "feasible\t"
          << std::count(est.feasible.begin(), est.feasible.end(), 1) << '/'
          << s.size() << '\n'
          << "mean_infeasibility\t" << FormatDouble(mi) << '\n'
          << "design_cost\t" << FormatDouble(Cost(d, net.file.cost)) << '\n';
      return kExitOk;
    }
    if (*center) {
      const NetworkSource net = LoadNetwork(net_arg);
      const DesignVector d = LoadDesign(design_path, net.file.network);
      CenterOptions co;
      co.spec = net.file.gaussian;
      const FeasibleCenter fc = ComputeFeasibleCenter(net.file.network, d, co);
      out << "psi\t" << FormatDouble(fc.psi) << '\n';
      out << "unbounded\t" << (fc.unbounded ? "yes" : "no") << '\n';
      out << "boxed\t" << (fc.boxed ? "yes" : "no") << '\n';
      const auto& dem = net.file.network.demands;
      for (const Demand& r : dem) {
        out << "theta\t" << r.id << '\t'
            << FormatDouble(fc.theta[r.theta_index - 1]) << '\n';
      }
      return fc.psi > 1e-7 ? kExitInfeasible : kExitOk;
    }
    if (*sweep) {
      sweep_cfg.network = LoadNetwork(net_arg);
      sweep_cfg.samples = samples;
      sweep_cfg.grid = ParseGrid(grid_spec);
      sweep_cfg.direction = direction == "max-sf" ? Direction::kMaxFlexibility
                                                  : Direction::kMinCost;
      if (big_u > 0.0) sweep_cfg.big_u = big_u;
      sweep_cfg.screen = !no_screen;
      sweep_cfg.out_dir = out_path;
      return RunSweep(std::move(sweep_cfg), args, out, err);
    }
    if (*compare) {
      Front a = ParseFront(ReadTextFile(front_paths[0]));
      Front b = ParseFront(ReadTextFile(front_paths[1]));
      if (a.mode == b.mode) {
        throw ValidationError("compare needs one mip and one cont front");
      }
      if (a.mode != FormulationMode::kMixedInteger) std::swap(a, b);
      const ComparisonReport rep = CompareFronts(a.points, b.points);
      std::ostringstream table;
      WriteResultTable(a.points, b.points, cmp_timings, table);
      if (out_path.empty()) {
        out << table.str();
      } else {
        WriteTextFile(out_path, table.str());
      }
      if (rep.violations() > 0) {
        err << "warning: continuous flexibility exceeds a proven optimum at "
            << rep.violations() << " point(s)\n";
      }
      return kExitOk;
    }
    if (*mps) {
      const NetworkSource net = LoadNetwork(net_arg);
      const SampleSet s = ResolveSamples(net, &samples);
      const ScenarioProgram prog = BuildScenarioProgram(
          net.file.network, net.file.cost, s,
          mps_mode == "mip" ? FormulationMode::kMixedInteger
                            : FormulationMode::kContinuous,
          direction == "max-sf" ? Direction::kMaxFlexibility
                                : Direction::kMinCost,
          eps, net.file.big_u);
      std::ofstream f(out_path);
      if (!f) throw Error("cannot write '" + out_path + "'");
      WriteMps(prog.program.lp, prog.program.binaries, f);
      f.close();
      json m = BaseManifest("export-mps", args);
      m["network"] = NetworkJson(net);
      m["samples"] = SamplesJson(samples);
      m["outputs"] = {out_path};
      WriteJson(out_path + ".manifest.json", m);
      out << "wrote " << prog.program.lp.num_cols() << " columns, "
          << prog.program.lp.num_rows() << " rows to " << out_path << '\n';
      return kExitOk;
    }
    if (*imp) {
      const std::string text = ReadTextFile(case_path);
      const MatpowerCase mpc = ParseMatpowerCase(text);
      NetworkFile nf;
      if (profile == "ieee14") {
        nf = Ieee14Case(mpc);
        nf.network = MatpowerToNetwork(mpc, arc_capacity);
      } else {
        nf.network = MatpowerToNetwork(mpc, arc_capacity);
        const FeasibleCenter fc = ComputeFeasibleCenter(
            nf.network, DesignVector::Zero(nf.network));
        nf.gaussian.mean = fc.theta;
        nf.gaussian.covariance =
            DenseMatrix::Identity(nf.network.num_theta(), 100.0);
      }
      nf.name = fs::path(case_path).stem().string();
      WriteTextFile(out_path,
                    "# Converted from " + fs::path(case_path).filename().string() +
                        " (" + CaseRevision(text) + ")\n" +
                        SerializeNetworkFile(nf));
      out << "wrote " << out_path << '\n';
      return kExitOk;
    }
    if (*bundled) {
      const auto src = Bundled(bundled_name);
      std::string header = "# " + src->provenance + "\n";
      WriteTextFile(out_path, header + src->text);
      out << "wrote " << out_path << '\n';
      return kExitOk;
    }
    if (*rerun) {
      json m;
      try {
        m = json::parse(ReadTextFile(manifest_path));
      } catch (const json::parse_error& e) {
        throw ParseError(e.what(), 1, static_cast<int>(e.byte));
      }
      if (m.value("command", std::string()) != "sweep") {
        throw ValidationError("only sweep manifests can be rerun");
      }
      SweepConfig c;
      try {
        c = SweepConfigFromJson(m.at("config"));
      } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed manifest: ") + e.what());
      }
      c.out_dir = out_path;
      return RunSweep(std::move(c), args, out, err);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitParse;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitParse;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolver;
  }
  return kExitUsage;
}

}  // namespace flexdesign::cli
