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

// Synthetic instance generation and the plain-text instance / results files.
//
// Instance file:
//   line 1:      "n m"
//   line 2:      "# seed=<u64> mode=<uniform|biased:p> rng=<id>"  (optional)
//   next n lines: m characters from {0,1}, newline-terminated.
//
// Generator stream (rng id "mt19937_64"): a std::mt19937_64 seeded with the
// 64-bit seed draws one 64-bit word per profile entry in voter-major order.
// The entry is 1 iff (word >> 11) * 2^-53 < p, with p = 0.5 for uniform data.

#ifndef KVOTE_GEN_IO_H_
#define KVOTE_GEN_IO_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kvote/model.h"

namespace kvote {

inline constexpr double kDefaultBias = 0.25;
inline constexpr const char* kRngId = "mt19937_64";

struct GenMode {
  enum class Kind { kUniform, kBiased };

  static GenMode Uniform() { return {Kind::kUniform, 0.5}; }
  static GenMode Biased(double p = kDefaultBias) { return {Kind::kBiased, p}; }

  // "uniform" or "biased:<p>" with p in shortest round-trip form.
  std::string ToString() const;
  // Inverse of ToString; also accepts plain "biased" (default p).
  static GenMode Parse(const std::string& text);

  Kind kind = Kind::kUniform;
  // Probability of an approval.
  double p = 0.5;

  friend bool operator==(const GenMode&, const GenMode&) = default;
};

struct GenConfig {
  int n = 1;
  int m = 1;
  GenMode mode = GenMode::Uniform();
  std::uint64_t seed = 0;

  // Throws std::invalid_argument on n < 1, m < 1 or p outside (0, 1).
  void Validate() const;
  // The comment line recorded in generated files, without the trailing newline.
  std::string HeaderComment() const;
};

Instance generate(const GenConfig& config);

struct InstanceFile {
  Instance instance;
  // Text of the '#' line after the dimensions, without the leading "# ".
  std::optional<std::string> comment;
};

void write_instance(std::ostream& out, const Instance& instance,
                    const std::optional<std::string>& comment = std::nullopt);
void write_instance(const std::filesystem::path& path, const Instance& instance,
                    const std::optional<std::string>& comment = std::nullopt);

// Throws ParseError (with line and column) on malformed input.
InstanceFile parse_instance(std::istream& in);
// Throws IoError if the file cannot be opened, ParseError if malformed.
InstanceFile read_instance_file(const std::filesystem::path& path);
Instance read_instance(const std::filesystem::path& path);

// One solve, as reported in the results CSV.
struct ResultRecord {
  std::string instance_id;
  int n = 0;
  int m = 0;
  int k = 0;
  Score objective = 0;
  double time_s = 0.0;
  std::int64_t nodes = 0;
  Score root_bound = 0;
  // (objective - root_bound) / objective * 100 with the combinatorial bound.
  double root_gap_pct = 0.0;
  bool solved_at_root = false;
  double pct_fixed = 0.0;
  // False when a budget stopped the search before optimality was proven.
  bool optimal = true;

  friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

// Column header of the results CSV, in output order.
const std::vector<std::string>& result_columns();

void write_results_csv(std::ostream& out, const std::vector<ResultRecord>& rows);
void write_results_csv(const std::filesystem::path& path,
                       const std::vector<ResultRecord>& rows);
std::vector<ResultRecord> parse_results_csv(std::istream& in);
std::vector<ResultRecord> read_results_csv(const std::filesystem::path& path);

// Splits one RFC-4180 record; quoted fields may contain commas and doubled
// quotes but not newlines. `line` is only used for error messages.
std::vector<std::string> split_csv_record(const std::string& record, int line);
// Quotes `field` if it contains a comma, quote or newline.
std::string csv_escape(const std::string& field);

// Shortest text that parses back to the same double.
std::string format_double(double value);

}  // namespace kvote

#endif  // KVOTE_GEN_IO_H_
