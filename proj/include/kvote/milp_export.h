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

// Solver-agnostic MILP models of the k-sum problem and an LP-format writer
// and reader for them.
//
// Four formulations are available:
//   kCoverZ      min v  s.t. z_ij >= p_ij (1 - x_j), z_ij >= (1 - p_ij) x_j,
//                sum_{i in S} sum_j z_ij <= v for every |S| = k.
//   kCoverX      min v  s.t. sum_j gamma_j(S)(1 - x_j) + (k - gamma_j(S)) x_j
//                <= v for every |S| = k.
//   kKCentrum    min k t + sum_i vi_i  s.t. vi_i >= d_i - t,
//                d_i >= sum_j z_ij, z_ij >= x_j (1 - p_ij) + p_ij (1 - x_j).
//   kAssignment  min sum_i u_i + sum_h vh_h  s.t. u_i + vh_h >= d_i for all
//                i and h <= k, plus the d and z rows of kKCentrum.
// All variables are non-negative, x is binary, every coefficient is an
// integer. Names are 1-based: x_j, z_i_j, d_i, v, t, vi_i, u_i, vh_h.

#ifndef KVOTE_MILP_EXPORT_H_
#define KVOTE_MILP_EXPORT_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kvote/bounds.h"
#include "kvote/model.h"

namespace kvote {

enum class FormulationKind { kCoverZ, kCoverX, kKCentrum, kAssignment };

// Whether the Cover kinds list all C(n, k) subset rows or start empty and
// receive rows from a separation loop.
enum class CutPolicy { kFullEnumeration, kSeedOnly };

std::string to_string(FormulationKind kind);
// Accepts the names produced by to_string, case-insensitively, plus the
// short forms "coverz", "coverx", "kcentrum", "assignment".
FormulationKind parse_formulation_kind(const std::string& text);

enum class VarRole { kX, kZ, kD, kV, kT, kVi, kU, kVh };

struct Variable {
  std::string name;
  VarRole role = VarRole::kX;
  // 0-based indices taken from the name: (j) for x, (i, j) for z, (i) for d,
  // vi and u, (h) for vh; -1 when unused.
  int index1 = -1;
  int index2 = -1;
  Score lower = 0;
  std::optional<Score> upper;  // nullopt = +infinity
  bool integer = false;

  friend bool operator==(const Variable&, const Variable&) = default;
};

struct Term {
  int var = 0;
  Score coef = 0;

  friend bool operator==(const Term&, const Term&) = default;
};

enum class Sense { kLessEqual, kGreaterEqual, kEqual };

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Sense sense = Sense::kGreaterEqual;
  Score rhs = 0;

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

struct LinearModel {
  FormulationKind kind = FormulationKind::kKCentrum;
  CutPolicy cuts = CutPolicy::kFullEnumeration;
  int n = 0;
  int m = 0;
  int k = 0;
  std::optional<int> committee_size;

  std::vector<Variable> variables;
  std::vector<Term> objective;  // minimized
  std::vector<Constraint> constraints;

  int AddVariable(Variable var);
  // Index of the variable called `name`, or -1.
  int Find(const std::string& name) const;
  int num_binaries() const;
  int CountConstraints(std::string_view prefix) const;

  friend bool operator==(const LinearModel&, const LinearModel&) = default;
};

inline constexpr std::uint64_t kDefaultCoverBudget = 100'000;

// Throws std::invalid_argument unless 1 <= k <= n and 0 <= size <= m, and
// ResourceLimitError when a fully enumerated Cover model would need more
// than `budget` subset rows.
LinearModel build(const Instance& instance, int k, FormulationKind kind,
                  CutPolicy cuts = CutPolicy::kFullEnumeration,
                  std::optional<int> committee_size = std::nullopt,
                  std::uint64_t budget = kDefaultCoverBudget);

// Appends the row of `cut` to a Cover model (kCoverX: x-only form, kCoverZ:
// the z-sum form). Throws std::invalid_argument for other kinds or if the
// cut size differs from the model's k.
void add_cut(LinearModel& model, const Cut& cut);

struct Evaluation {
  bool feasible = false;
  Score objective = 0;
  // One value per model variable.
  std::vector<Score> values;
};

// Fixes x to `committee` and every auxiliary variable to the smallest value
// the rows allow (z and d by propagation, v as the largest subset row,
// t = d_(k) and vi_i = max(d_i - t, 0) for kKCentrum, u_i = max(d_i - d_(k),
// 0) and vh_h = d_(k) for kAssignment), then checks every row and bound.
// All values are integers at a binary committee. Throws std::invalid_argument
// if the committee length differs from the model's m.
Evaluation evaluate_at(const LinearModel& model, const Committee& committee);

void write_lp(std::ostream& out, const LinearModel& model);
void write_lp(const std::filesystem::path& path, const LinearModel& model);
// Reads files written by write_lp. Throws ParseError on anything else.
LinearModel parse_lp(std::istream& in);
LinearModel read_lp(const std::filesystem::path& path);

struct CutLoopResult {
  Committee committee;
  Score value = 0;
  int rounds = 0;
  LinearModel model;
};

// Cutting-plane solve of the kCoverX model: starts from the SeedOnly model,
// minimizes v over all 2^m committees subject to the rows found so far, and
// adds the cut returned by separate() until none is violated. Intended for
// tiny instances; throws ResourceLimitError when 2^m exceeds `budget`.
CutLoopResult run_cut_loop(const Instance& instance, int k,
                           std::uint64_t budget = std::uint64_t{1} << 20);

}  // namespace kvote

#endif  // KVOTE_MILP_EXPORT_H_
