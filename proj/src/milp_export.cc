// Copyright 2026 The kvote Authors
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

#include "kvote/milp_export.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "kvote/errors.h"
#include "kvote/polysolve.h"

namespace kvote {

std::string to_string(FormulationKind kind) {
  switch (kind) {
    case FormulationKind::kCoverZ:
      return "CoverZ";
    case FormulationKind::kCoverX:
      return "CoverX";
    case FormulationKind::kKCentrum:
      return "KCentrum";
    case FormulationKind::kAssignment:
      return "Assignment";
  }
  return "?";
}

FormulationKind parse_formulation_kind(const std::string& text) {
  std::string lower;
  for (char c : text) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "coverz") return FormulationKind::kCoverZ;
  if (lower == "coverx") return FormulationKind::kCoverX;
  if (lower == "kcentrum") return FormulationKind::kKCentrum;
  if (lower == "assignment") return FormulationKind::kAssignment;
  throw std::invalid_argument("unknown formulation '" + text +
                              "' (expected coverz, coverx, kcentrum or assignment)");
}

int LinearModel::AddVariable(Variable var) {
  variables.push_back(std::move(var));
  return static_cast<int>(variables.size()) - 1;
}

int LinearModel::Find(const std::string& name) const {
  for (std::size_t v = 0; v < variables.size(); ++v) {
    if (variables[v].name == name) return static_cast<int>(v);
  }
  return -1;
}

int LinearModel::num_binaries() const {
  return static_cast<int>(std::count_if(
      variables.begin(), variables.end(), [](const Variable& v) {
        return v.integer && v.lower == 0 && v.upper == 1;
      }));
}

int LinearModel::CountConstraints(std::string_view prefix) const {
  return static_cast<int>(std::count_if(
      constraints.begin(), constraints.end(),
      [&](const Constraint& c) { return c.name.starts_with(prefix); }));
}

namespace {

std::string one_based(int index) { return std::to_string(index + 1); }

Variable make_var(std::string name, VarRole role, int index1 = -1,
                  int index2 = -1) {
  Variable v;
  v.name = std::move(name);
  v.role = role;
  v.index1 = index1;
  v.index2 = index2;
  if (role == VarRole::kX) {
    v.upper = 1;
    v.integer = true;
  }
  return v;
}

// Appends `coef * var` unless the coefficient is zero.
void push_term(std::vector<Term>& terms, int var, Score coef) {
  if (coef != 0) terms.push_back({var, coef});
}

// Variable indices of one model, in creation order.
struct Layout {
  int x = -1;
  int z = -1;
  int d = -1;
  int v = -1;
  int t = -1;
  int vi = -1;
  int u = -1;
  int vh = -1;
};

Layout layout_of(const LinearModel& model) {
  Layout layout;
  for (std::size_t idx = 0; idx < model.variables.size(); ++idx) {
    const Variable& var = model.variables[idx];
    int* slot = nullptr;
    switch (var.role) {
      case VarRole::kX: slot = &layout.x; break;
      case VarRole::kZ: slot = &layout.z; break;
      case VarRole::kD: slot = &layout.d; break;
      case VarRole::kV: slot = &layout.v; break;
      case VarRole::kT: slot = &layout.t; break;
      case VarRole::kVi: slot = &layout.vi; break;
      case VarRole::kU: slot = &layout.u; break;
      case VarRole::kVh: slot = &layout.vh; break;
    }
    if (*slot < 0) *slot = static_cast<int>(idx);
  }
  return layout;
}

Constraint cover_row(const LinearModel& model, const Layout& layout,
                     const VoterSet& voters, const std::vector<int>& counts,
                     std::string name) {
  Constraint row;
  row.name = std::move(name);
  row.sense = Sense::kLessEqual;
  if (model.kind == FormulationKind::kCoverX) {
    // sum_j (k - 2 gamma_j(S)) x_j - v <= -sum_j gamma_j(S)
    Score constant = 0;
    for (int j = 0; j < model.m; ++j) {
      push_term(row.terms, layout.x + j, model.k - 2 * counts[j]);
      constant += counts[j];
    }
    push_term(row.terms, layout.v, -1);
    row.rhs = -constant;
  } else {
    for (int i : voters) {
      for (int j = 0; j < model.m; ++j) push_term(row.terms, layout.z + i * model.m + j, 1);
    }
    push_term(row.terms, layout.v, -1);
    row.rhs = 0;
  }
  return row;
}

}  // namespace

LinearModel build(const Instance& instance, int k, FormulationKind kind,
                  CutPolicy cuts, std::optional<int> committee_size,
                  std::uint64_t budget) {
  const int n = instance.num_voters();
  const int m = instance.num_candidates();
  OwaWeights::TopK(k).Validate(n);
  if (committee_size && (*committee_size < 0 || *committee_size > m)) {
    throw std::invalid_argument("committee size " + std::to_string(*committee_size) +
                                " out of range [0, " + std::to_string(m) + "]");
  }
  const bool cover = kind == FormulationKind::kCoverX || kind == FormulationKind::kCoverZ;
  if (cover && cuts == CutPolicy::kFullEnumeration) {
    const std::uint64_t rows = binomial(n, k);
    if (rows > budget) {
      throw ResourceLimitError("full enumeration needs C(" + std::to_string(n) +
                               ", " + std::to_string(k) + ") = " +
                               std::to_string(rows) + " rows, budget is " +
                               std::to_string(budget));
    }
  }

  LinearModel model;
  model.kind = kind;
  model.cuts = cuts;
  model.n = n;
  model.m = m;
  model.k = k;
  model.committee_size = committee_size;

  Layout layout;
  layout.x = static_cast<int>(model.variables.size());
  for (int j = 0; j < m; ++j) model.AddVariable(make_var("x_" + one_based(j), VarRole::kX, j));
  if (kind != FormulationKind::kCoverX) {
    layout.z = static_cast<int>(model.variables.size());
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) {
        model.AddVariable(make_var("z_" + one_based(i) + "_" + one_based(j),
                                   VarRole::kZ, i, j));
      }
    }
  }
  if (!cover) {
    layout.d = static_cast<int>(model.variables.size());
    for (int i = 0; i < n; ++i) model.AddVariable(make_var("d_" + one_based(i), VarRole::kD, i));
  }
  if (cover) layout.v = model.AddVariable(make_var("v", VarRole::kV));
  if (kind == FormulationKind::kKCentrum) {
    layout.t = model.AddVariable(make_var("t", VarRole::kT));
    layout.vi = static_cast<int>(model.variables.size());
    for (int i = 0; i < n; ++i) model.AddVariable(make_var("vi_" + one_based(i), VarRole::kVi, i));
  }
  if (kind == FormulationKind::kAssignment) {
    layout.u = static_cast<int>(model.variables.size());
    for (int i = 0; i < n; ++i) model.AddVariable(make_var("u_" + one_based(i), VarRole::kU, i));
    layout.vh = static_cast<int>(model.variables.size());
    for (int h = 0; h < k; ++h) model.AddVariable(make_var("vh_" + one_based(h), VarRole::kVh, h));
  }

  // Objective.
  switch (kind) {
    case FormulationKind::kCoverZ:
    case FormulationKind::kCoverX:
      model.objective.push_back({layout.v, 1});
      break;
    case FormulationKind::kKCentrum:
      model.objective.push_back({layout.t, k});
      for (int i = 0; i < n; ++i) model.objective.push_back({layout.vi + i, 1});
      break;
    case FormulationKind::kAssignment:
      for (int i = 0; i < n; ++i) model.objective.push_back({layout.u + i, 1});
      for (int h = 0; h < k; ++h) model.objective.push_back({layout.vh + h, 1});
      break;
  }

  // Distance-linking rows.
  if (kind == FormulationKind::kCoverZ) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) {
        const int p = instance.approves(i, j);
        const int z = layout.z + i * m + j;
        const std::string suffix = one_based(i) + "_" + one_based(j);
        // z_ij >= p_ij (1 - x_j)
        Constraint low{"zp_" + suffix, {}, Sense::kGreaterEqual, p};
        push_term(low.terms, z, 1);
        push_term(low.terms, layout.x + j, p);
        model.constraints.push_back(std::move(low));
        // z_ij >= (1 - p_ij) x_j
        Constraint high{"zq_" + suffix, {}, Sense::kGreaterEqual, 0};
        push_term(high.terms, z, 1);
        push_term(high.terms, layout.x + j, -(1 - p));
        model.constraints.push_back(std::move(high));
      }
    }
  } else if (!cover) {
    if (kind == FormulationKind::kKCentrum) {
      // vi_i >= d_i - t
      for (int i = 0; i < n; ++i) {
        model.constraints.push_back({"kc_" + one_based(i),
                                     {{layout.vi + i, 1}, {layout.d + i, -1}, {layout.t, 1}},
                                     Sense::kGreaterEqual,
                                     0});
      }
    } else {
      // u_i + vh_h >= d_i
      for (int i = 0; i < n; ++i) {
        for (int h = 0; h < k; ++h) {
          model.constraints.push_back(
              {"asg_" + one_based(i) + "_" + one_based(h),
               {{layout.u + i, 1}, {layout.vh + h, 1}, {layout.d + i, -1}},
               Sense::kGreaterEqual,
               0});
        }
      }
    }
    // d_i >= sum_j z_ij
    for (int i = 0; i < n; ++i) {
      Constraint row{"dist_" + one_based(i), {{layout.d + i, 1}}, Sense::kGreaterEqual, 0};
      for (int j = 0; j < m; ++j) row.terms.push_back({layout.z + i * m + j, -1});
      model.constraints.push_back(std::move(row));
    }
    // z_ij >= x_j (1 - p_ij) + p_ij (1 - x_j), i.e. z_ij - (1 - 2 p_ij) x_j >= p_ij
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) {
        const int p = instance.approves(i, j);
        Constraint row{"ham_" + one_based(i) + "_" + one_based(j), {}, Sense::kGreaterEqual, p};
        push_term(row.terms, layout.z + i * m + j, 1);
        push_term(row.terms, layout.x + j, -(1 - 2 * p));
        model.constraints.push_back(std::move(row));
      }
    }
  }

  if (cover && cuts == CutPolicy::kFullEnumeration) {
    std::vector<int> voters(k);
    std::iota(voters.begin(), voters.end(), 0);
    int count = 0;
    while (true) {
      const std::vector<int> counts = subset_counts(instance, voters);
      model.constraints.push_back(
          cover_row(model, layout, voters, counts, "cover_" + std::to_string(++count)));
      int pos = k - 1;
      while (pos >= 0 && voters[pos] == n - k + pos) --pos;
      if (pos < 0) break;
      ++voters[pos];
      for (int t = pos + 1; t < k; ++t) voters[t] = voters[t - 1] + 1;
    }
  }

  if (committee_size) {
    Constraint row{"card", {}, Sense::kLessEqual, *committee_size};
    for (int j = 0; j < m; ++j) row.terms.push_back({layout.x + j, 1});
    model.constraints.push_back(std::move(row));
  }
  return model;
}

void add_cut(LinearModel& model, const Cut& cut) {
  if (model.kind != FormulationKind::kCoverX && model.kind != FormulationKind::kCoverZ) {
    throw std::invalid_argument("cuts apply to Cover formulations only");
  }
  if (static_cast<int>(cut.voters.size()) != model.k ||
      static_cast<int>(cut.counts.size()) != model.m) {
    throw std::invalid_argument("cut dimensions do not match the model");
  }
  const Layout layout = layout_of(model);
  const int next = model.CountConstraints("cover_") + 1;
  model.constraints.push_back(
      cover_row(model, layout, cut.voters, cut.counts, "cover_" + std::to_string(next)));
}

namespace {

Score floor_div(Score a, Score b) {
  Score q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Score ceil_div(Score a, Score b) { return -floor_div(-a, b); }

bool satisfied(const Constraint& row, const std::vector<Score>& values) {
  Score lhs = 0;
  for (const Term& t : row.terms) lhs += t.coef * values[t.var];
  switch (row.sense) {
    case Sense::kLessEqual:
      return lhs <= row.rhs;
    case Sense::kGreaterEqual:
      return lhs >= row.rhs;
    case Sense::kEqual:
      return lhs == row.rhs;
  }
  return false;
}

}  // namespace

Evaluation evaluate_at(const LinearModel& model, const Committee& committee) {
  if (static_cast<int>(committee.size()) != model.m) {
    throw std::invalid_argument("committee has length " +
                                std::to_string(committee.size()) + ", model has " +
                                std::to_string(model.m) + " candidates");
  }
  Evaluation eval;
  const std::size_t count = model.variables.size();
  eval.values.assign(count, 0);
  std::vector<bool> known(count, false);
  for (std::size_t v = 0; v < count; ++v) {
    const Variable& var = model.variables[v];
    if (var.role == VarRole::kX) {
      eval.values[v] = committee.test(var.index1);
      known[v] = true;
    } else {
      eval.values[v] = var.lower;
    }
  }

  // Raise each auxiliary variable of `role` to the largest lower bound implied
  // by rows in which it is the only variable not yet known.
  const auto propagate = [&](VarRole role) {
    for (const Constraint& row : model.constraints) {
      int target = -1;
      Score target_coef = 0;
      Score rest = 0;
      bool usable = true;
      for (const Term& t : row.terms) {
        if (known[t.var]) {
          rest += t.coef * eval.values[t.var];
        } else if (model.variables[t.var].role == role && target < 0) {
          target = t.var;
          target_coef = t.coef;
        } else {
          usable = false;
          break;
        }
      }
      if (!usable || target < 0) continue;
      const Score room = row.rhs - rest;
      const bool lower_bound =
          (row.sense == Sense::kGreaterEqual && target_coef > 0) ||
          (row.sense == Sense::kLessEqual && target_coef < 0) ||
          row.sense == Sense::kEqual;
      if (lower_bound) {
        eval.values[target] = std::max(eval.values[target], ceil_div(room, target_coef));
      }
    }
    for (std::size_t v = 0; v < count; ++v) {
      if (model.variables[v].role == role) known[v] = true;
    }
  };
  propagate(VarRole::kZ);
  propagate(VarRole::kD);
  propagate(VarRole::kV);

  if (model.kind == FormulationKind::kKCentrum ||
      model.kind == FormulationKind::kAssignment) {
    std::vector<int> d(model.n, 0);
    for (std::size_t v = 0; v < count; ++v) {
      if (model.variables[v].role == VarRole::kD) {
        d[model.variables[v].index1] = static_cast<int>(eval.values[v]);
      }
    }
    std::vector<int> sorted = d;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    const Score kth = sorted[model.k - 1];
    for (std::size_t v = 0; v < count; ++v) {
      const Variable& var = model.variables[v];
      switch (var.role) {
        case VarRole::kT:
        case VarRole::kVh:
          eval.values[v] = kth;
          break;
        case VarRole::kVi:
        case VarRole::kU:
          eval.values[v] = std::max<Score>(d[var.index1] - kth, 0);
          break;
        default:
          break;
      }
    }
  }

  eval.feasible = true;
  for (std::size_t v = 0; v < count; ++v) {
    const Variable& var = model.variables[v];
    if (eval.values[v] < var.lower || (var.upper && eval.values[v] > *var.upper)) {
      eval.feasible = false;
    }
  }
  for (const Constraint& row : model.constraints) {
    if (!satisfied(row, eval.values)) {
      eval.feasible = false;
      break;
    }
  }
  for (const Term& t : model.objective) eval.objective += t.coef * eval.values[t.var];
  return eval;
}

// ---------------------------------------------------------------------------
// LP text format.

namespace {

constexpr std::size_t kMaxLineLength = 200;

std::string cuts_name(CutPolicy cuts) {
  return cuts == CutPolicy::kFullEnumeration ? "full" : "seed";
}

void write_expression(std::ostream& out, const LinearModel& model,
                      const std::vector<Term>& terms, std::size_t column) {
  bool first = true;
  for (const Term& t : terms) {
    std::string piece;
    if (t.coef < 0) {
      piece = first ? "- " : "- ";
    } else if (!first) {
      piece = "+ ";
    }
    const Score magnitude = t.coef < 0 ? -t.coef : t.coef;
    if (magnitude != 1) piece += std::to_string(magnitude) + " ";
    piece += model.variables[t.var].name;
    if (!first && column + piece.size() + 1 > kMaxLineLength) {
      out << "\n   ";
      column = 3;
    } else if (!first) {
      out << ' ';
      ++column;
    }
    out << piece;
    column += piece.size();
    first = false;
  }
}

const char* sense_text(Sense sense) {
  switch (sense) {
    case Sense::kLessEqual:
      return "<=";
    case Sense::kGreaterEqual:
      return ">=";
    case Sense::kEqual:
      return "=";
  }
  return "?";
}

}  // namespace

void write_lp(std::ostream& out, const LinearModel& model) {
  out << "\\ kvote formulation=" << to_string(model.kind)
      << " cuts=" << cuts_name(model.cuts) << " n=" << model.n
      << " m=" << model.m << " k=" << model.k << " size="
      << (model.committee_size ? std::to_string(*model.committee_size) : "none")
      << "\n";
  out << "Minimize\n obj: ";
  write_expression(out, model, model.objective, 6);
  out << "\n";
  if (!model.constraints.empty()) {
    out << "Subject To\n";
    for (const Constraint& row : model.constraints) {
      out << ' ' << row.name << ": ";
      write_expression(out, model, row.terms, row.name.size() + 3);
      out << ' ' << sense_text(row.sense) << ' ' << row.rhs << "\n";
    }
  }
  out << "Bounds\n";
  for (const Variable& var : model.variables) {
    if (var.integer) continue;
    if (var.upper) {
      out << ' ' << var.lower << " <= " << var.name << " <= " << *var.upper << "\n";
    } else {
      out << ' ' << var.name << " >= " << var.lower << "\n";
    }
  }
  out << "Binaries\n";
  std::size_t column = 0;
  for (const Variable& var : model.variables) {
    if (!var.integer) continue;
    if (column > 0 && column + var.name.size() + 1 > kMaxLineLength) {
      out << "\n";
      column = 0;
    }
    out << ' ' << var.name;
    column += var.name.size() + 1;
  }
  if (column > 0) out << "\n";
  out << "End\n";
}

void write_lp(const std::filesystem::path& path, const LinearModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_lp(out, model);
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

namespace {

struct Token {
  std::string text;
  int line = 0;
};

bool parse_score(const std::string& text, Score& value) {
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  return begin != end && ec == std::errc() && ptr == end;
}

bool parse_index(std::string_view text, int& value) {
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return !text.empty() && ec == std::errc() && ptr == text.data() + text.size() && value >= 1;
}

// Role and 0-based indices from a variable name.
Variable variable_from_name(const std::string& name, int line) {
  const auto fail = [&] {
    return ParseError("unrecognized variable name '" + name + "'", line, 0);
  };
  if (name == "v") return make_var(name, VarRole::kV);
  if (name == "t") return make_var(name, VarRole::kT);
  const std::size_t us = name.find('_');
  if (us == std::string::npos) throw fail();
  const std::string prefix = name.substr(0, us);
  const std::string_view rest = std::string_view(name).substr(us + 1);
  int a = 0;
  int b = 0;
  if (prefix == "z") {
    const std::size_t us2 = rest.find('_');
    if (us2 == std::string_view::npos || !parse_index(rest.substr(0, us2), a) ||
        !parse_index(rest.substr(us2 + 1), b)) {
      throw fail();
    }
    return make_var(name, VarRole::kZ, a - 1, b - 1);
  }
  if (!parse_index(rest, a)) throw fail();
  if (prefix == "x") return make_var(name, VarRole::kX, a - 1);
  if (prefix == "d") return make_var(name, VarRole::kD, a - 1);
  if (prefix == "vi") return make_var(name, VarRole::kVi, a - 1);
  if (prefix == "u") return make_var(name, VarRole::kU, a - 1);
  if (prefix == "vh") return make_var(name, VarRole::kVh, a - 1);
  throw fail();
}

class LpReader {
 public:
  LinearModel Read(std::istream& in) {
    std::string line;
    int line_no = 0;
    if (!std::getline(in, line)) throw ParseError("empty LP file", 1, 0);
    ++line_no;
    ReadHeader(line, line_no);

    enum class Section { kNone, kObjective, kConstraints, kBounds, kBinaries, kEnd };
    Section section = Section::kNone;
    std::vector<Token> objective_tokens;
    std::vector<Token> constraint_tokens;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.starts_with('\\') || line.empty()) continue;
      if (section == Section::kEnd) {
        throw ParseError("text after End", line_no, 0);
      }
      if (line == "Minimize") {
        section = Section::kObjective;
        continue;
      }
      if (line == "Subject To") {
        section = Section::kConstraints;
        continue;
      }
      if (line == "Bounds") {
        section = Section::kBounds;
        continue;
      }
      if (line == "Binaries") {
        section = Section::kBinaries;
        continue;
      }
      if (line == "End") {
        section = Section::kEnd;
        continue;
      }
      std::istringstream words(line);
      std::string word;
      std::vector<Token> tokens;
      while (words >> word) tokens.push_back({word, line_no});
      switch (section) {
        case Section::kNone:
          throw ParseError("expected a section keyword", line_no, 0);
        case Section::kObjective:
          objective_tokens.insert(objective_tokens.end(), tokens.begin(), tokens.end());
          break;
        case Section::kConstraints:
          constraint_tokens.insert(constraint_tokens.end(), tokens.begin(), tokens.end());
          break;
        case Section::kBounds:
          ReadBound(tokens, line_no);
          break;
        case Section::kBinaries:
          for (const Token& t : tokens) {
            Variable& var = Declare(t.text, t.line);
            var.integer = true;
            var.lower = 0;
            var.upper = 1;
          }
          break;
        case Section::kEnd:
          break;
      }
    }
    if (section != Section::kEnd) throw ParseError("missing End", line_no, 0);

    ReadObjective(objective_tokens);
    ReadConstraints(constraint_tokens);
    return Finish();
  }

 private:
  void ReadHeader(std::string line, int line_no) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.starts_with("\\ kvote ")) {
      throw ParseError("missing '\\ kvote' header comment", line_no, 1);
    }
    std::istringstream words(line.substr(8));
    std::string word;
    std::map<std::string, std::string> fields;
    while (words >> word) {
      const std::size_t eq = word.find('=');
      if (eq == std::string::npos) throw ParseError("bad header field '" + word + "'", line_no, 0);
      fields[word.substr(0, eq)] = word.substr(eq + 1);
    }
    try {
      model_.kind = parse_formulation_kind(fields.at("formulation"));
      const std::string& cuts = fields.at("cuts");
      if (cuts != "full" && cuts != "seed") throw std::invalid_argument(cuts);
      model_.cuts = cuts == "full" ? CutPolicy::kFullEnumeration : CutPolicy::kSeedOnly;
      model_.n = std::stoi(fields.at("n"));
      model_.m = std::stoi(fields.at("m"));
      model_.k = std::stoi(fields.at("k"));
      const std::string& size = fields.at("size");
      if (size != "none") model_.committee_size = std::stoi(size);
    } catch (const std::exception& e) {
      throw ParseError(std::string("bad header: ") + e.what(), line_no, 0);
    }
  }

  Variable& Declare(const std::string& name, int line) {
    auto it = index_.find(name);
    if (it == index_.end()) {
      it = index_.emplace(name, vars_.size()).first;
      vars_.push_back(variable_from_name(name, line));
    }
    return vars_[it->second];
  }

  void ReadBound(const std::vector<Token>& tokens, int line_no) {
    Score value = 0;
    if (tokens.size() == 3 && tokens[1].text == ">=" && parse_score(tokens[2].text, value)) {
      Variable& var = Declare(tokens[0].text, line_no);
      var.lower = value;
      var.upper.reset();
      return;
    }
    Score upper = 0;
    if (tokens.size() == 5 && tokens[1].text == "<=" && tokens[3].text == "<=" &&
        parse_score(tokens[0].text, value) && parse_score(tokens[4].text, upper)) {
      Variable& var = Declare(tokens[2].text, line_no);
      var.lower = value;
      var.upper = upper;
      return;
    }
    throw ParseError("unsupported bound line", line_no, 0);
  }

  // Parses "[+|-] [coef] name ..." until `end` or a sense token.
  std::vector<Term> ReadTerms(const std::vector<Token>& tokens, std::size_t& pos) {
    std::vector<std::pair<std::string, Score>> raw;
    while (pos < tokens.size()) {
      const std::string& text = tokens[pos].text;
      if (text == "<=" || text == ">=" || text == "=" || text.ends_with(':')) break;
      Score sign = 1;
      if (text == "+" || text == "-") {
        sign = text == "-" ? -1 : 1;
        ++pos;
        if (pos >= tokens.size()) throw ParseError("dangling sign", tokens.back().line, 0);
      }
      Score coef = 1;
      if (parse_score(tokens[pos].text, coef)) {
        ++pos;
        if (pos >= tokens.size()) throw ParseError("dangling coefficient", tokens.back().line, 0);
      }
      const Token& name = tokens[pos++];
      Declare(name.text, name.line);
      raw.emplace_back(name.text, sign * coef);
    }
    std::vector<Term> terms;
    for (auto& [name, coef] : raw) terms.push_back({static_cast<int>(index_.at(name)), coef});
    return terms;
  }

  void ReadObjective(const std::vector<Token>& tokens) {
    if (tokens.empty() || tokens[0].text != "obj:") {
      throw ParseError("objective must start with 'obj:'",
                       tokens.empty() ? 0 : tokens[0].line, 0);
    }
    std::size_t pos = 1;
    objective_ = ReadTerms(tokens, pos);
    if (pos != tokens.size()) throw ParseError("unexpected token in objective", tokens[pos].line, 0);
  }

  void ReadConstraints(const std::vector<Token>& tokens) {
    std::size_t pos = 0;
    while (pos < tokens.size()) {
      const Token& label = tokens[pos];
      if (!label.text.ends_with(':')) throw ParseError("expected a row name", label.line, 0);
      Constraint row;
      row.name = label.text.substr(0, label.text.size() - 1);
      ++pos;
      const std::vector<Term> terms = ReadTerms(tokens, pos);
      if (pos + 1 >= tokens.size()) throw ParseError("row without sense", label.line, 0);
      const std::string& sense = tokens[pos].text;
      if (sense == "<=") {
        row.sense = Sense::kLessEqual;
      } else if (sense == ">=") {
        row.sense = Sense::kGreaterEqual;
      } else if (sense == "=") {
        row.sense = Sense::kEqual;
      } else {
        throw ParseError("expected <=, >= or =", tokens[pos].line, 0);
      }
      if (!parse_score(tokens[pos + 1].text, row.rhs)) {
        throw ParseError("right-hand side must be an integer", tokens[pos + 1].line, 0);
      }
      pos += 2;
      row.terms = terms;
      rows_.push_back(std::move(row));
    }
  }

  // Variables in canonical order: role, then indices. build() creates them
  // in the same order.
  LinearModel Finish() {
    std::vector<std::size_t> order(vars_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const Variable& va = vars_[a];
      const Variable& vb = vars_[b];
      return std::tie(va.role, va.index1, va.index2) <
             std::tie(vb.role, vb.index1, vb.index2);
    });
    std::vector<int> remap(vars_.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      remap[order[pos]] = static_cast<int>(pos);
      model_.variables.push_back(vars_[order[pos]]);
    }
    for (Term& t : objective_) t.var = remap[t.var];
    model_.objective = std::move(objective_);
    for (Constraint& row : rows_) {
      for (Term& t : row.terms) t.var = remap[t.var];
    }
    model_.constraints = std::move(rows_);
    return std::move(model_);
  }

  LinearModel model_;
  std::vector<Variable> vars_;
  std::map<std::string, std::size_t> index_;
  std::vector<Term> objective_;
  std::vector<Constraint> rows_;
};

}  // namespace

LinearModel parse_lp(std::istream& in) { return LpReader().Read(in); }

LinearModel read_lp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return parse_lp(in);
}

CutLoopResult run_cut_loop(const Instance& instance, int k, std::uint64_t budget) {
  const int m = instance.num_candidates();
  if (m >= 63 || (std::uint64_t{1} << m) > budget) {
    throw ResourceLimitError("cut loop master needs 2^" + std::to_string(m) +
                             " committees, budget is " + std::to_string(budget));
  }
  CutLoopResult result;
  result.model = build(instance, k, FormulationKind::kCoverX, CutPolicy::kSeedOnly);
  std::vector<Cut> cuts;
  const std::uint64_t total = std::uint64_t{1} << m;
  Committee x(m);
  while (true) {
    ++result.rounds;
    // Master: min over committees of the largest active row, v >= 0.
    Score best = std::numeric_limits<Score>::max();
    std::uint64_t best_key = 0;
    for (std::uint64_t key = 0; key < total; ++key) {
      for (int j = 0; j < m; ++j) x.set(j, (key >> (m - 1 - j)) & 1U);
      Score v = 0;
      for (const Cut& cut : cuts) v = std::max(v, cut.Evaluate(x));
      if (v < best) {
        best = v;
        best_key = key;
      }
    }
    for (int j = 0; j < m; ++j) x.set(j, (best_key >> (m - 1 - j)) & 1U);
    std::optional<Cut> cut = separate(instance, x, best, k);
    if (!cut) {
      result.committee = x;
      result.value = best;
      return result;
    }
    add_cut(result.model, *cut);
    cuts.push_back(std::move(*cut));
  }
}

}  // namespace kvote
