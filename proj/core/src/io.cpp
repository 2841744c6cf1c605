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

#include "flexdesign/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "flexdesign/error.hpp"

namespace flexdesign {
namespace {

struct Token {
  std::string_view text;
  int column = 0;  // 1-based
};

std::vector<Token> Tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
    if (i >= line.size() || line[i] == '#') break;
    const std::size_t start = i;
    while (i < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#') {
      ++i;
    }
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

double ParseNumber(const Token& t, int line) {
  double v = 0.0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw ParseError("expected a finite number, got '" + std::string(t.text) +
                         "'",
                     line, t.column);
  }
  return v;
}

int ParseInt(const Token& t, int line) {
  int v = 0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("expected an integer, got '" + std::string(t.text) + "'",
                     line, t.column);
  }
  return v;
}

void Arity(const std::vector<Token>& tok, std::size_t lo, std::size_t hi,
           int line, std::string_view line_text) {
  if (tok.size() < lo) {
    throw ParseError("'" + std::string(tok[0].text) + "' expects " +
                         std::to_string(lo - 1) + " value(s)",
                     line, static_cast<int>(line_text.size()) + 1);
  }
  if (tok.size() > hi) {
    throw ParseError("unexpected extra value '" + std::string(tok[hi].text) +
                         "'",
                     line, tok[hi].column);
  }
}

struct PendingCost {
  bool is_arc = false;
  std::string id;
  double weight = 0.0;
  int line = 0;
  int column = 0;
};

}  // namespace

std::string FormatDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

NetworkFile ParseNetworkFile(std::string_view text) {
  NetworkFile f;
  bool header = false;
  bool have_mean = false;
  std::vector<std::vector<double>> cov_rows;
  std::vector<PendingCost> costs;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = end + 1;
    ++line_no;
    const auto tok = Tokenize(line);
    if (tok.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const std::string_view key = tok[0].text;
    if (!header) {
      if (key != "flexnet") {
        throw ParseError("expected header 'flexnet 1'", line_no, tok[0].column);
      }
      Arity(tok, 2, 2, line_no, line);
      if (tok[1].text != "1") {
        throw ParseError("unsupported format version '" +
                             std::string(tok[1].text) + "'",
                         line_no, tok[1].column);
      }
      header = true;
    } else if (key == "name") {
      Arity(tok, 2, 2, line_no, line);
      f.name = tok[1].text;
    } else if (key == "node") {
      Arity(tok, 2, tok.size(), line_no, line);
      for (std::size_t i = 1; i < tok.size(); ++i) {
        f.network.nodes.emplace_back(tok[i].text);
      }
    } else if (key == "arc") {
      Arity(tok, 5, 6, line_no, line);
      Arc a;
      a.id = tok[1].text;
      a.from = tok[2].text;
      a.to = tok[3].text;
      a.capacity = ParseNumber(tok[4], line_no);
      if (tok.size() == 6) a.units = tok[5].text;
      f.network.arcs.push_back(std::move(a));
    } else if (key == "supplier") {
      Arity(tok, 4, 4, line_no, line);
      Supplier s;
      s.id = tok[1].text;
      s.node = tok[2].text;
      s.capacity = ParseNumber(tok[3], line_no);
      f.network.suppliers.push_back(std::move(s));
    } else if (key == "demand") {
      Arity(tok, 4, 4, line_no, line);
      Demand d;
      d.id = tok[1].text;
      d.node = tok[2].text;
      d.theta_index = ParseInt(tok[3], line_no);
      f.network.demands.push_back(std::move(d));
    } else if (key == "mean") {
      if (have_mean) {
        throw ParseError("duplicate 'mean'", line_no, tok[0].column);
      }
      have_mean = true;
      for (std::size_t i = 1; i < tok.size(); ++i) {
        f.gaussian.mean.push_back(ParseNumber(tok[i], line_no));
      }
    } else if (key == "covariance") {
      std::vector<double> row;
      for (std::size_t i = 1; i < tok.size(); ++i) {
        row.push_back(ParseNumber(tok[i], line_no));
      }
      cov_rows.push_back(std::move(row));
    } else if (key == "cost") {
      Arity(tok, 4, 4, line_no, line);
      PendingCost c;
      if (tok[1].text == "arc") {
        c.is_arc = true;
      } else if (tok[1].text != "supplier") {
        throw ParseError("cost kind must be 'arc' or 'supplier'", line_no,
                         tok[1].column);
      }
      c.id = tok[2].text;
      c.weight = ParseNumber(tok[3], line_no);
      if (c.weight < 0.0) {
        throw ParseError("cost weight must be >= 0", line_no, tok[3].column);
      }
      c.line = line_no;
      c.column = tok[2].column;
      costs.push_back(std::move(c));
    } else if (key == "big_u") {
      Arity(tok, 2, 2, line_no, line);
      f.big_u = ParseNumber(tok[1], line_no);
      if (!(f.big_u > 0.0)) {
        throw ParseError("big_u must be positive", line_no, tok[1].column);
      }
    } else {
      throw ParseError("unknown key '" + std::string(key) + "'", line_no,
                       tok[0].column);
    }
    if (end == text.size()) break;
  }
  if (!header) throw ParseError("missing header 'flexnet 1'", 1, 1);
  if (!have_mean) throw ParseError("missing required field 'mean'");
  if (cov_rows.empty()) throw ParseError("missing required field 'covariance'");

  RequireValid(f.network);
  const int n = f.network.num_theta();
  if (n == 0) throw ValidationError("network has no demands");
  if (static_cast<int>(f.gaussian.mean.size()) != n) {
    throw ValidationError("mean has " + std::to_string(f.gaussian.mean.size()) +
                          " entries, expected " + std::to_string(n));
  }
  if (static_cast<int>(cov_rows.size()) != n) {
    throw ValidationError("covariance has " + std::to_string(cov_rows.size()) +
                          " rows, expected " + std::to_string(n));
  }
  f.gaussian.covariance = DenseMatrix(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(cov_rows[i].size()) != n) {
      throw ValidationError("covariance row " + std::to_string(i + 1) +
                            " has " + std::to_string(cov_rows[i].size()) +
                            " entries, expected " + std::to_string(n));
    }
    for (int j = 0; j < n; ++j) f.gaussian.covariance(i, j) = cov_rows[i][j];
  }
  f.gaussian.Check();

  if (!costs.empty()) {
    const int na = f.network.num_arcs();
    const int ns = f.network.num_suppliers();
    CostSpec defaults;
    f.cost.arc_weights = defaults.ArcWeights(na, ns);
    f.cost.supplier_weights = defaults.SupplierWeights(na, ns);
    std::unordered_map<std::string, int> arc_index;
    std::unordered_map<std::string, int> sup_index;
    for (int i = 0; i < na; ++i) arc_index[f.network.arcs[i].id] = i;
    for (int i = 0; i < ns; ++i) sup_index[f.network.suppliers[i].id] = i;
    for (const PendingCost& c : costs) {
      const auto& index = c.is_arc ? arc_index : sup_index;
      auto it = index.find(c.id);
      if (it == index.end()) {
        throw ParseError(std::string("cost refers to unknown ") +
                             (c.is_arc ? "arc" : "supplier") + " '" + c.id +
                             "'",
                         c.line, c.column);
      }
      (c.is_arc ? f.cost.arc_weights : f.cost.supplier_weights)[it->second] =
          c.weight;
    }
  }
  return f;
}

std::string SerializeNetworkFile(const NetworkFile& f) {
  std::ostringstream out;
  out << "flexnet 1\n";
  if (!f.name.empty()) out << "name " << f.name << '\n';
  for (const auto& n : f.network.nodes) out << "node " << n << '\n';
  for (const Arc& a : f.network.arcs) {
    out << "arc " << a.id << ' ' << a.from << ' ' << a.to << ' '
        << FormatDouble(a.capacity);
    if (!a.units.empty()) out << ' ' << a.units;
    out << '\n';
  }
  for (const Supplier& s : f.network.suppliers) {
    out << "supplier " << s.id << ' ' << s.node << ' '
        << FormatDouble(s.capacity) << '\n';
  }
  for (const Demand& d : f.network.demands) {
    out << "demand " << d.id << ' ' << d.node << ' ' << d.theta_index << '\n';
  }
  out << "mean";
  for (double v : f.gaussian.mean) out << ' ' << FormatDouble(v);
  out << '\n';
  for (int i = 0; i < f.gaussian.covariance.rows; ++i) {
    out << "covariance";
    for (int j = 0; j < f.gaussian.covariance.cols; ++j) {
      out << ' ' << FormatDouble(f.gaussian.covariance(i, j));
    }
    out << '\n';
  }
  if (!f.cost.is_default()) {
    for (std::size_t i = 0; i < f.cost.arc_weights.size(); ++i) {
      out << "cost arc " << f.network.arcs[i].id << ' '
          << FormatDouble(f.cost.arc_weights[i]) << '\n';
    }
    for (std::size_t i = 0; i < f.cost.supplier_weights.size(); ++i) {
      out << "cost supplier " << f.network.suppliers[i].id << ' '
          << FormatDouble(f.cost.supplier_weights[i]) << '\n';
    }
  }
  out << "big_u " << FormatDouble(f.big_u) << '\n';
  return out.str();
}

std::string NormalizeNetworkFile(std::string_view text) {
  return SerializeNetworkFile(ParseNetworkFile(text));
}

DesignVector ParseDesignFile(std::string_view text, const Network& net) {
  DesignVector d = DesignVector::Zero(net);
  std::unordered_map<std::string, int> arcs;
  std::unordered_map<std::string, int> sups;
  for (int i = 0; i < net.num_arcs(); ++i) arcs.emplace(net.arcs[i].id, i);
  for (int i = 0; i < net.num_suppliers(); ++i) {
    sups.emplace(net.suppliers[i].id, i);
  }
  bool header = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const auto tok = Tokenize(line);
    if (tok.empty()) continue;
    if (!header) {
      if (tok[0].text != "design" || tok.size() != 2 || tok[1].text != "1") {
        throw ParseError("expected header 'design 1'", line_no, tok[0].column);
      }
      header = true;
      continue;
    }
    const bool is_arc = tok[0].text == "arc";
    if (!is_arc && tok[0].text != "supplier") {
      throw ParseError("unknown key '" + std::string(tok[0].text) + "'",
                       line_no, tok[0].column);
    }
    Arity(tok, 3, 3, line_no, line);
    const auto& index = is_arc ? arcs : sups;
    auto it = index.find(std::string(tok[1].text));
    if (it == index.end()) {
      throw ParseError("unknown " + std::string(tok[0].text) + " '" +
                           std::string(tok[1].text) + "'",
                       line_no, tok[1].column);
    }
    const double v = ParseNumber(tok[2], line_no);
    if (v < 0.0) {
      throw ParseError("design entries must be nonnegative", line_no,
                       tok[2].column);
    }
    (is_arc ? d.arc : d.supplier)[it->second] = v;
  }
  if (!header) throw ParseError("expected header 'design 1'", 1, 1);
  return d;
}

std::string SerializeDesign(const DesignVector& design, const Network& net) {
  design.Check(net);
  std::ostringstream out;
  out << "design 1\n";
  for (int i = 0; i < net.num_arcs(); ++i) {
    out << "arc " << net.arcs[i].id << ' ' << FormatDouble(design.arc[i])
        << '\n';
  }
  for (int i = 0; i < net.num_suppliers(); ++i) {
    out << "supplier " << net.suppliers[i].id << ' '
        << FormatDouble(design.supplier[i]) << '\n';
  }
  return out.str();
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteTextFile(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

NetworkFile LoadNetworkFile(const std::filesystem::path& path) {
  return ParseNetworkFile(ReadTextFile(path));
}

// MATPOWER -----------------------------------------------------------------

namespace {

// Rows of a numeric matrix literal `mpc.<name> = [ ... ];`.
std::vector<std::vector<double>> MatpowerTable(std::string_view text,
                                               const std::string& name) {
  const std::string key = "mpc." + name;
  std::size_t at = 0;
  for (;;) {
    at = text.find(key, at);
    if (at == std::string_view::npos) {
      throw ParseError("missing table '" + key + "'");
    }
    std::size_t p = at + key.size();
    while (p < text.size() && (text[p] == ' ' || text[p] == '\t')) ++p;
    if (p < text.size() && text[p] == '=') {
      at = p;
      break;
    }
    at = p;
  }
  const std::size_t open = text.find('[', at);
  if (open == std::string_view::npos) {
    throw ParseError("table '" + key + "' has no '['");
  }
  std::vector<std::vector<double>> rows;
  std::vector<double> row;
  std::string num;
  auto flush_num = [&] {
    if (num.empty()) return;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), v);
    if (ec != std::errc() || ptr != num.data() + num.size()) {
      if (num == "Inf" || num == "inf") {
        v = kInf;
      } else if (num == "-Inf" || num == "-inf") {
        v = -kInf;
      } else {
        throw ParseError("table '" + key + "' row " +
                         std::to_string(rows.size() + 1) +
                         ": bad number '" + num + "'");
      }
    }
    row.push_back(v);
    num.clear();
  };
  auto flush_row = [&] {
    flush_num();
    if (!row.empty()) rows.push_back(std::move(row));
    row.clear();
  };
  bool comment = false;
  for (std::size_t i = open + 1; i < text.size(); ++i) {
    const char c = text[i];
    if (comment) {
      if (c == '\n') {
        comment = false;
        flush_row();
      }
      continue;
    }
    if (c == '%') {
      flush_num();
      comment = true;
    } else if (c == ']') {
      flush_row();
      return rows;
    } else if (c == ';' || c == '\n') {
      flush_row();
    } else if (c == ' ' || c == '\t' || c == ',' || c == '\r') {
      flush_num();
    } else {
      num.push_back(c);
    }
  }
  throw ParseError("table '" + key + "' is not closed");
}

void RequireColumns(const std::vector<std::vector<double>>& rows,
                    const std::string& name, std::size_t cols) {
  if (rows.empty()) throw ParseError("table 'mpc." + name + "' is empty");
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() < cols) {
      throw ParseError("table 'mpc." + name + "' row " + std::to_string(r + 1) +
                       ": expected at least " + std::to_string(cols) +
                       " columns, got " + std::to_string(rows[r].size()));
    }
  }
}

int AsBusId(double v, const std::string& where) {
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw ParseError(where + ": bus number '" + FormatDouble(v) +
                     "' is not an integer");
  }
  return static_cast<int>(v);
}

}  // namespace

MatpowerCase ParseMatpowerCase(std::string_view text) {
  MatpowerCase mpc;
  const auto bus = MatpowerTable(text, "bus");
  const auto gen = MatpowerTable(text, "gen");
  const auto branch = MatpowerTable(text, "branch");
  RequireColumns(bus, "bus", 3);
  RequireColumns(gen, "gen", 9);
  RequireColumns(branch, "branch", 11);
  for (std::size_t r = 0; r < bus.size(); ++r) {
    const std::string where = "mpc.bus row " + std::to_string(r + 1);
    mpc.buses.push_back({AsBusId(bus[r][0], where), bus[r][2]});
  }
  for (std::size_t r = 0; r < gen.size(); ++r) {
    const std::string where = "mpc.gen row " + std::to_string(r + 1);
    mpc.generators.push_back(
        {AsBusId(gen[r][0], where), gen[r][8], gen[r][7] > 0.0});
  }
  for (std::size_t r = 0; r < branch.size(); ++r) {
    const std::string where = "mpc.branch row " + std::to_string(r + 1);
    mpc.branches.push_back({AsBusId(branch[r][0], where),
                            AsBusId(branch[r][1], where),
                            branch[r][10] > 0.0});
  }
  return mpc;
}

Network MatpowerToNetwork(const MatpowerCase& mpc, double arc_capacity) {
  Network net;
  std::set<int> ids;
  for (const auto& b : mpc.buses) {
    net.nodes.push_back(std::to_string(b.id));
    ids.insert(b.id);
  }
  std::vector<std::string> bad;
  for (std::size_t i = 0; i < mpc.branches.size(); ++i) {
    const auto& br = mpc.branches[i];
    if (!ids.count(br.from) || !ids.count(br.to)) {
      bad.push_back("branch " + std::to_string(i + 1) + " (" +
                    std::to_string(br.from) + "-" + std::to_string(br.to) +
                    ") references an unknown bus");
      continue;
    }
    if (!br.in_service) continue;
    net.arcs.push_back({"l" + std::to_string(i + 1), std::to_string(br.from),
                        std::to_string(br.to), arc_capacity, ""});
  }
  for (std::size_t i = 0; i < mpc.generators.size(); ++i) {
    const auto& g = mpc.generators[i];
    if (!ids.count(g.bus)) {
      bad.push_back("generator " + std::to_string(i + 1) +
                    " references unknown bus " + std::to_string(g.bus));
      continue;
    }
    if (!g.in_service) continue;
    net.suppliers.push_back({"g" + std::to_string(i + 1),
                             std::to_string(g.bus), g.capacity});
  }
  if (!bad.empty()) throw ValidationError(std::move(bad));
  int theta = 0;
  for (const auto& b : mpc.buses) {
    if (b.demand == 0.0) continue;
    net.demands.push_back(
        {"r" + std::to_string(b.id), std::to_string(b.id), ++theta});
  }
  RequireValid(net);
  return net;
}

// Bundled cases -------------------------------------------------------------

NetworkFile UnitNetCase() {
  NetworkFile f;
  f.name = "unit_net";
  f.network.nodes = {"n1"};
  f.network.suppliers = {{"s1", "n1", 1.0}};
  f.network.demands = {{"r1", "n1", 1}};
  f.gaussian.mean = {0.5};
  f.gaussian.covariance = DenseMatrix(1, 1, 0.25);
  return f;
}

NetworkFile ThreeNodeCase() {
  NetworkFile f;
  f.name = "three_node";
  f.network.nodes = {"1", "2", "3"};
  f.network.arcs = {{"a12", "1", "2", 100.0, ""}, {"a13", "1", "3", 70.0, ""}};
  f.network.suppliers = {{"s1", "1", 102.0}};
  f.network.demands = {{"r1", "1", 1}, {"r2", "2", 2}, {"r3", "3", 3}};
  f.gaussian.mean = {0.0, 60.0, 10.0};
  f.gaussian.covariance = DenseMatrix(3, 3);
  f.gaussian.covariance(0, 0) = 80.0;
  f.gaussian.covariance(1, 1) = 80.0;
  f.gaussian.covariance(2, 2) = 120.0;
  return f;
}

NetworkFile Ieee14Case(const MatpowerCase& mpc) {
  NetworkFile f;
  f.name = "ieee14";
  f.network = MatpowerToNetwork(mpc, 100.0);
  const int n = f.network.num_theta();
  const std::vector<double> mean = {87.3, 50.0, 25.0, 28.8, 50.0, 25.0,
                                    0.0,  0.0,  0.0,  0.0,  0.0};
  if (n != static_cast<int>(mean.size())) {
    throw ValidationError("IEEE-14 case must have 11 demand buses, found " +
                          std::to_string(n));
  }
  f.gaussian.mean = mean;
  f.gaussian.covariance = DenseMatrix(n, n, 240.0);
  for (int i = 0; i < n; ++i) f.gaussian.covariance(i, i) = 1200.0;
  return f;
}

NetworkFile Case141(const MatpowerCase& mpc) {
  NetworkFile f;
  f.name = "case141";
  f.network = MatpowerToNetwork(mpc, 100.0);
  const FeasibleCenter fc =
      ComputeFeasibleCenter(f.network, DesignVector::Zero(f.network));
  if (fc.theta.empty()) {
    throw SolverError("feasible center of the 141-node case is unbounded");
  }
  f.gaussian.mean = fc.theta;
  f.gaussian.covariance = DenseMatrix::Identity(f.network.num_theta(), 100.0);
  return f;
}

// Tables --------------------------------------------------------------------

void WriteResultTable(const std::vector<ParetoPoint>& mip,
                      const std::vector<ParetoPoint>& cont, bool with_timings,
                      std::ostream& out) {
  const bool have_mip = !mip.empty();
  const bool have_cont = !cont.empty();
  if (have_mip && have_cont && mip.size() != cont.size()) {
    throw ValidationError("fronts have different grid sizes");
  }
  std::vector<ComparisonRow> cmp;
  if (have_mip && have_cont) cmp = CompareFronts(mip, cont).rows;
  const std::size_t rows = have_mip ? mip.size() : cont.size();
  auto fixed = [](double v, int digits) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(digits);
    s << v;
    return s.str();
  };
  out << "eps_c\tdesign_cost\tsf_k_pct\tsf_bar_k_pct\tmip_time_s\t"
         "cont_time_s\ty_diff_pct\tmip_optimal\n";
  for (std::size_t i = 0; i < rows; ++i) {
    const ParetoPoint* a = have_mip ? &mip[i] : nullptr;
    const ParetoPoint* b = have_cont ? &cont[i] : nullptr;
    const double eps = a ? a->epsilon : b->epsilon;
    const double cost = a ? a->cost : b->cost;
    out << FormatDouble(eps) << '\t' << fixed(cost, 6) << '\t';
    out << (a ? fixed(100.0 * a->sf, 2) : "NA") << '\t';
    out << (b ? fixed(100.0 * b->sf, 2) : "NA") << '\t';
    out << (a && with_timings ? fixed(a->wall_time, 4) : "NA") << '\t';
    out << (b && with_timings ? fixed(b->wall_time, 4) : "NA") << '\t';
    out << (cmp.empty() ? "NA" : fixed(cmp[i].y_diff_pct, 2)) << '\t';
    out << (a ? (a->optimal ? "yes" : "no") : "NA") << '\n';
  }
}

}  // namespace flexdesign
