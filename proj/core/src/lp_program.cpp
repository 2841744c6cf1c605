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

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "flexdesign/lp.hpp"

namespace flexdesign {

int LinearProgram::AddColumn(double cost, double lo, double up) {
  objective.push_back(cost);
  lower.push_back(lo);
  upper.push_back(up);
  return num_cols() - 1;
}

int LinearProgram::AddRow(RowSense s, double b) {
  row_sense.push_back(s);
  rhs.push_back(b);
  return num_rows() - 1;
}

void LinearProgram::AddEntry(int row, int col, double value) {
  entries.push_back({row, col, value});
}

void LinearProgram::Validate() const {
  const auto n = objective.size();
  if (lower.size() != n || upper.size() != n) {
    throw std::invalid_argument("bound vectors do not match column count");
  }
  if (row_sense.size() != rhs.size()) {
    throw std::invalid_argument("row sense and rhs sizes differ");
  }
  if (std::isnan(objective_offset)) {
    throw std::invalid_argument("objective offset is NaN");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(objective[j])) {
      throw std::invalid_argument("non-finite cost on column " +
                                  std::to_string(j));
    }
    if (std::isnan(lower[j]) || std::isnan(upper[j]) || lower[j] > upper[j] ||
        lower[j] == kInf || upper[j] == -kInf) {
      throw std::invalid_argument("invalid bounds on column " +
                                  std::to_string(j));
    }
  }
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    if (!std::isfinite(rhs[i])) {
      throw std::invalid_argument("non-finite rhs on row " +
                                  std::to_string(i));
    }
  }
  for (const Triplet& t : entries) {
    if (t.row < 0 || t.row >= num_rows() || t.col < 0 || t.col >= num_cols()) {
      throw std::invalid_argument("matrix entry out of range");
    }
    if (!std::isfinite(t.value)) {
      throw std::invalid_argument("non-finite matrix entry at row " +
                                  std::to_string(t.row));
    }
  }
}

double LinearProgram::Evaluate(const std::vector<double>& x) const {
  double v = objective_offset;
  for (int j = 0; j < num_cols(); ++j) v += objective[j] * x[j];
  return v;
}

std::vector<double> LinearProgram::RowActivity(
    const std::vector<double>& x) const {
  std::vector<double> act(rhs.size(), 0.0);
  for (const Triplet& t : entries) act[t.row] += t.value * x[t.col];
  return act;
}

const char* ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kIterationLimit:
      return "iteration-limit";
  }
  return "unknown";
}

double ScaledRowViolation(const LinearProgram& lp,
                          const std::vector<double>& x) {
  const int m = lp.num_rows();
  std::vector<double> act(m, 0.0);
  std::vector<double> mag(m, 0.0);
  for (const Triplet& t : lp.entries) {
    act[t.row] += t.value * x[t.col];
    mag[t.row] += std::abs(t.value * x[t.col]);
  }
  double worst = 0.0;
  for (int i = 0; i < m; ++i) {
    double r = 0.0;
    switch (lp.row_sense[i]) {
      case RowSense::kLessEqual:
        r = std::max(0.0, act[i] - lp.rhs[i]);
        break;
      case RowSense::kGreaterEqual:
        r = std::max(0.0, lp.rhs[i] - act[i]);
        break;
      case RowSense::kEqual:
        r = std::abs(act[i] - lp.rhs[i]);
        break;
    }
    worst = std::max(worst, r / (1.0 + std::abs(lp.rhs[i]) + mag[i]));
  }
  return worst;
}

ResidualReport VerifySolution(const LinearProgram& lp, const LpSolution& sol,
                              const SolverOptions& opts) {
  ResidualReport rep;
  if (sol.status != LpStatus::kOptimal) {
    rep.note = "no primal certificate checked (status " +
               std::string(ToString(sol.status)) + ")";
    return rep;
  }
  if (static_cast<int>(sol.x.size()) != lp.num_cols()) {
    rep.note = "primal vector has wrong length";
    return rep;
  }
  rep.checked = true;
  const int n = lp.num_cols();
  const int m = lp.num_rows();

  // Primal side. Scaled checks use the magnitude of each row's terms.
  std::vector<double> act(m, 0.0);
  std::vector<double> mag(m, 0.0);
  for (const Triplet& t : lp.entries) {
    act[t.row] += t.value * sol.x[t.col];
    mag[t.row] += std::abs(t.value * sol.x[t.col]);
  }
  bool primal_ok = true;
  for (int i = 0; i < m; ++i) {
    double r = 0.0;
    switch (lp.row_sense[i]) {
      case RowSense::kLessEqual:
        r = std::max(0.0, act[i] - lp.rhs[i]);
        break;
      case RowSense::kGreaterEqual:
        r = std::max(0.0, lp.rhs[i] - act[i]);
        break;
      case RowSense::kEqual:
        r = std::abs(act[i] - lp.rhs[i]);
        break;
    }
    rep.max_row_residual = std::max(rep.max_row_residual, r);
    if (r > 10.0 * opts.feas_tol * (1.0 + std::abs(lp.rhs[i]) + mag[i])) {
      primal_ok = false;
    }
  }
  for (int j = 0; j < n; ++j) {
    const double v = std::max({0.0, lp.lower[j] - sol.x[j],
                               sol.x[j] - lp.upper[j]});
    rep.max_bound_violation = std::max(rep.max_bound_violation, v);
    if (v > 10.0 * opts.feas_tol * (1.0 + std::abs(sol.x[j]))) {
      primal_ok = false;
    }
  }

  // Dual side in minimization form.
  const double sign = lp.sense == ObjectiveSense::kMaximize ? -1.0 : 1.0;
  std::vector<double> y(m);
  for (int i = 0; i < m; ++i) y[i] = sign * sol.duals.at(i);
  std::vector<double> d(n);
  for (int j = 0; j < n; ++j) d[j] = sign * lp.objective[j];
  for (const Triplet& t : lp.entries) d[t.col] -= t.value * y[t.row];

  double dual_obj = 0.0;
  for (int i = 0; i < m; ++i) {
    double infeas = 0.0;
    if (lp.row_sense[i] == RowSense::kLessEqual) infeas = std::max(0.0, y[i]);
    if (lp.row_sense[i] == RowSense::kGreaterEqual) {
      infeas = std::max(0.0, -y[i]);
    }
    rep.max_dual_infeasibility = std::max(rep.max_dual_infeasibility, infeas);
    dual_obj += lp.rhs[i] * y[i];
  }
  for (int j = 0; j < n; ++j) {
    const bool has_lo = std::isfinite(lp.lower[j]);
    const bool has_up = std::isfinite(lp.upper[j]);
    double infeas = 0.0;
    if (d[j] > 0.0) {
      if (has_lo) {
        dual_obj += d[j] * lp.lower[j];
      } else {
        infeas = d[j];
      }
    } else if (d[j] < 0.0) {
      if (has_up) {
        dual_obj += d[j] * lp.upper[j];
      } else {
        infeas = -d[j];
      }
    }
    rep.max_dual_infeasibility = std::max(rep.max_dual_infeasibility, infeas);
  }
  double primal_obj = 0.0;
  for (int j = 0; j < n; ++j) primal_obj += sign * lp.objective[j] * sol.x[j];
  rep.duality_gap = std::abs(primal_obj - dual_obj);

  // Reduced costs live on the scale of the objective coefficients.
  double cost_scale = 0.0;
  for (int j = 0; j < n; ++j) {
    cost_scale = std::max(cost_scale, std::abs(lp.objective[j]));
  }
  if (cost_scale == 0.0) cost_scale = 1.0;
  const double scale = 1.0 + std::abs(primal_obj);
  rep.pass = primal_ok &&
             rep.max_dual_infeasibility <= 10.0 * opts.opt_tol * cost_scale &&
             rep.duality_gap <= 10.0 * opts.opt_tol * scale;
  rep.note = rep.pass ? "pass" : "fail";
  return rep;
}

// ---------------------------------------------------------------------------
// MPS

namespace {

std::string Name(char prefix, int index) {
  std::ostringstream os;
  os << prefix;
  os.width(7);
  os.fill('0');
  os << index + 1;
  return os.str();
}

std::string Number(double v) {
  for (int precision = 12; precision >= 1; --precision) {
    std::ostringstream os;
    os.precision(precision);
    os << v;
    if (os.str().size() <= 12) return os.str();
  }
  throw std::invalid_argument("value does not fit an MPS field");
}

std::string Pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

// Fixed-field layout: columns 2-3, 5-12, 15-22, 25-36, 40-47, 50-61.
std::string Line(const std::string& f1, const std::string& f2,
                 const std::string& f3 = "", const std::string& f4 = "",
                 const std::string& f5 = "", const std::string& f6 = "") {
  std::string line = " " + Pad(f1, 2) + " " + Pad(f2, 8);
  if (!f3.empty()) line += "  " + Pad(f3, 8);
  if (!f4.empty()) line += "  " + Pad(f4, 12);
  if (!f5.empty()) line += "   " + Pad(f5, 8);
  if (!f6.empty()) line += "  " + Pad(f6, 12);
  while (!line.empty() && line.back() == ' ') line.pop_back();
  return line;
}

}  // namespace

void WriteMps(const LinearProgram& lp, const std::vector<int>& integer_cols,
              std::ostream& out, const std::string& name) {
  lp.Validate();
  const int n = lp.num_cols();
  const int m = lp.num_rows();
  const double sign = lp.sense == ObjectiveSense::kMaximize ? -1.0 : 1.0;
  std::vector<char> is_int(n, 0);
  for (int j : integer_cols) is_int.at(j) = 1;

  std::vector<std::vector<std::pair<int, double>>> cols(n);
  {
    std::vector<Triplet> sorted = lp.entries;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Triplet& a, const Triplet& b) {
                       return a.col != b.col ? a.col < b.col : a.row < b.row;
                     });
    for (const Triplet& t : sorted) {
      auto& c = cols[t.col];
      if (!c.empty() && c.back().first == t.row) {
        c.back().second += t.value;
      } else {
        c.emplace_back(t.row, t.value);
      }
    }
  }

  out << "NAME          " << name << "\n";
  if (lp.sense == ObjectiveSense::kMaximize) {
    out << "* maximization written as minimization (objective negated)\n";
  }
  out << "ROWS\n";
  out << Line("N", "OBJ") << "\n";
  for (int i = 0; i < m; ++i) {
    const char* s = lp.row_sense[i] == RowSense::kLessEqual      ? "L"
                    : lp.row_sense[i] == RowSense::kGreaterEqual ? "G"
                                                                 : "E";
    out << Line(s, Name('R', i)) << "\n";
  }
  out << "COLUMNS\n";
  bool in_int = false;
  int markers = 0;
  for (int j = 0; j < n; ++j) {
    if (is_int[j] != in_int) {
      out << Line("", Name('M', markers++), "'MARKER'", "",
                  is_int[j] ? "'INTORG'" : "'INTEND'")
          << "\n";
      in_int = is_int[j];
    }
    const std::string cname = Name('C', j);
    std::vector<std::pair<std::string, double>> items;
    if (lp.objective[j] != 0.0 || cols[j].empty()) {
      items.emplace_back("OBJ", sign * lp.objective[j]);
    }
    for (const auto& [row, v] : cols[j]) items.emplace_back(Name('R', row), v);
    for (std::size_t k = 0; k < items.size(); k += 2) {
      if (k + 1 < items.size()) {
        out << Line("", cname, items[k].first, Number(items[k].second),
                    items[k + 1].first, Number(items[k + 1].second))
            << "\n";
      } else {
        out << Line("", cname, items[k].first, Number(items[k].second))
            << "\n";
      }
    }
  }
  if (in_int) {
    out << Line("", Name('M', markers++), "'MARKER'", "", "'INTEND'") << "\n";
  }
  out << "RHS\n";
  if (lp.objective_offset != 0.0) {
    out << Line("", "RHS", "OBJ", Number(-sign * lp.objective_offset))
        << "\n";
  }
  for (int i = 0; i < m; ++i) {
    if (lp.rhs[i] != 0.0) {
      out << Line("", "RHS", Name('R', i), Number(lp.rhs[i])) << "\n";
    }
  }
  out << "BOUNDS\n";
  for (int j = 0; j < n; ++j) {
    const std::string cname = Name('C', j);
    const double lo = lp.lower[j];
    const double up = lp.upper[j];
    if (std::isinf(lo) && std::isinf(up)) {
      out << Line("FR", "BND", cname) << "\n";
    } else if (lo == up) {
      out << Line("FX", "BND", cname, Number(lo)) << "\n";
    } else {
      if (std::isinf(lo)) {
        out << Line("MI", "BND", cname) << "\n";
      } else if (lo != 0.0) {
        out << Line("LO", "BND", cname, Number(lo)) << "\n";
      }
      if (std::isfinite(up)) {
        out << Line("UP", "BND", cname, Number(up)) << "\n";
      }
    }
  }
  out << "ENDATA\n";
}

MpsModel ReadMps(std::istream& in) {
  enum class Section { kNone, kRows, kColumns, kRhs, kBounds, kObjSense };
  MpsModel model;
  LinearProgram& lp = model.lp;
  std::string objective_row;
  std::vector<std::string> row_names;
  std::unordered_map<std::string, int> row_index;
  std::unordered_map<std::string, int> col_index;
  Section section = Section::kNone;
  bool in_int = false;
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& what) {
    throw std::runtime_error("MPS line " + std::to_string(line_no) + ": " +
                             what);
  };
  auto col_of = [&](const std::string& name) {
    auto it = col_index.find(name);
    if (it != col_index.end()) return it->second;
    const int j = lp.AddColumn(0.0, 0.0, kInf);
    col_index.emplace(name, j);
    if (in_int) {
      model.integer_cols.push_back(j);
      lp.upper[j] = 1.0;
    }
    return j;
  };
  auto add_coef = [&](int j, const std::string& row, const std::string& val) {
    const double v = std::stod(val);
    if (row == objective_row) {
      lp.objective[j] += v;
      return;
    }
    auto it = row_index.find(row);
    if (it == row_index.end()) fail("unknown row " + row);
    lp.AddEntry(it->second, j, v);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '*') continue;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (line[0] != ' ' && line[0] != '\t') {
      const std::string& head = tok[0];
      if (head == "NAME") {
        section = Section::kNone;
      } else if (head == "ROWS") {
        section = Section::kRows;
      } else if (head == "COLUMNS") {
        section = Section::kColumns;
      } else if (head == "RHS") {
        section = Section::kRhs;
      } else if (head == "BOUNDS") {
        section = Section::kBounds;
      } else if (head == "OBJSENSE") {
        section = Section::kObjSense;
        if (tok.size() > 1) {
          if (tok[1] == "MAX") lp.sense = ObjectiveSense::kMaximize;
          section = Section::kNone;
        }
      } else if (head == "ENDATA") {
        break;
      } else {
        fail("unsupported section " + head);
      }
      continue;
    }
    switch (section) {
      case Section::kObjSense:
        if (tok[0] == "MAX") lp.sense = ObjectiveSense::kMaximize;
        break;
      case Section::kRows: {
        if (tok.size() < 2) fail("short ROWS record");
        if (tok[0] == "N") {
          if (objective_row.empty()) objective_row = tok[1];
          break;
        }
        RowSense s = RowSense::kEqual;
        if (tok[0] == "L") {
          s = RowSense::kLessEqual;
        } else if (tok[0] == "G") {
          s = RowSense::kGreaterEqual;
        } else if (tok[0] != "E") {
          fail("bad row type " + tok[0]);
        }
        row_index.emplace(tok[1], lp.AddRow(s, 0.0));
        break;
      }
      case Section::kColumns: {
        if (tok.size() >= 3 && tok[1] == "'MARKER'") {
          in_int = tok.back() == "'INTORG'";
          break;
        }
        if (tok.size() != 3 && tok.size() != 5) fail("bad COLUMNS record");
        const int j = col_of(tok[0]);
        add_coef(j, tok[1], tok[2]);
        if (tok.size() == 5) add_coef(j, tok[3], tok[4]);
        break;
      }
      case Section::kRhs: {
        if (tok.size() != 3 && tok.size() != 5) fail("bad RHS record");
        for (std::size_t k = 1; k + 1 < tok.size(); k += 2) {
          const double v = std::stod(tok[k + 1]);
          if (tok[k] == objective_row) {
            lp.objective_offset = -v;
            continue;
          }
          auto it = row_index.find(tok[k]);
          if (it == row_index.end()) fail("unknown row " + tok[k]);
          lp.rhs[it->second] = v;
        }
        break;
      }
      case Section::kBounds: {
        if (tok.size() < 3) fail("bad BOUNDS record");
        auto it = col_index.find(tok[2]);
        if (it == col_index.end()) fail("unknown column " + tok[2]);
        const int j = it->second;
        const std::string& type = tok[0];
        const double v = tok.size() > 3 ? std::stod(tok[3]) : 0.0;
        if (type == "LO") {
          lp.lower[j] = v;
        } else if (type == "UP") {
          lp.upper[j] = v;
        } else if (type == "FX") {
          lp.lower[j] = v;
          lp.upper[j] = v;
        } else if (type == "FR") {
          lp.lower[j] = -kInf;
          lp.upper[j] = kInf;
        } else if (type == "MI") {
          lp.lower[j] = -kInf;
        } else if (type == "PL") {
          lp.upper[j] = kInf;
        } else if (type == "BV") {
          lp.lower[j] = 0.0;
          lp.upper[j] = 1.0;
          model.integer_cols.push_back(j);
        } else {
          fail("unsupported bound type " + type);
        }
        break;
      }
      case Section::kNone:
        fail("record outside of a section");
    }
  }
  std::sort(model.integer_cols.begin(), model.integer_cols.end());
  model.integer_cols.erase(
      std::unique(model.integer_cols.begin(), model.integer_cols.end()),
      model.integer_cols.end());
  return model;
}

}  // namespace flexdesign
