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

#include "kvote/gen_io.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "kvote/errors.h"

namespace kvote {

std::string format_double(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, end);
}

namespace {

bool parse_double(std::string_view text, double& value) {
  if (text.empty()) return false;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc() && end == text.data() + text.size();
}

template <typename T>
bool parse_integer(std::string_view text, T& value) {
  if (text.empty()) return false;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc() && end == text.data() + text.size();
}

}  // namespace

std::string GenMode::ToString() const {
  if (kind == Kind::kUniform) return "uniform";
  return "biased:" + format_double(p);
}

GenMode GenMode::Parse(const std::string& text) {
  if (text == "uniform") return Uniform();
  if (text == "biased") return Biased();
  if (text.starts_with("biased:")) {
    double p = 0;
    if (!parse_double(std::string_view(text).substr(7), p) || !(p > 0 && p < 1)) {
      throw std::invalid_argument("bad bias probability in mode '" + text + "'");
    }
    return Biased(p);
  }
  throw std::invalid_argument("unknown mode '" + text +
                              "' (expected uniform, biased or biased:<p>)");
}

void GenConfig::Validate() const {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  if (!(mode.p > 0.0 && mode.p < 1.0)) {
    throw std::invalid_argument("approval probability must lie in (0, 1)");
  }
}

std::string GenConfig::HeaderComment() const {
  return "seed=" + std::to_string(seed) + " mode=" + mode.ToString() +
         " rng=" + kRngId;
}

Instance generate(const GenConfig& config) {
  config.Validate();
  std::mt19937_64 engine(config.seed);
  std::vector<Profile> profiles;
  profiles.reserve(config.n);
  for (int i = 0; i < config.n; ++i) {
    Profile p(config.m);
    for (int j = 0; j < config.m; ++j) {
      const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
      p.set(j, u < config.mode.p);
    }
    profiles.push_back(std::move(p));
  }
  return Instance(std::move(profiles));
}

void write_instance(std::ostream& out, const Instance& instance,
                    const std::optional<std::string>& comment) {
  out << instance.num_voters() << ' ' << instance.num_candidates() << '\n';
  if (comment) out << "# " << *comment << '\n';
  for (const Profile& p : instance.profiles()) out << p.ToString() << '\n';
}

void write_instance(const std::filesystem::path& path, const Instance& instance,
                    const std::optional<std::string>& comment) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_instance(out, instance, comment);
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

InstanceFile parse_instance(std::istream& in) {
  std::string line;
  int line_no = 1;
  if (!std::getline(in, line)) throw ParseError("empty instance file", 1, 0);
  if (!line.empty() && line.back() == '\r') line.pop_back();

  int n = 0;
  int m = 0;
  {
    const std::size_t space = line.find(' ');
    if (space == std::string::npos) {
      throw ParseError("expected \"n m\"", line_no, 1);
    }
    const std::string_view view(line);
    if (!parse_integer(view.substr(0, space), n) || n < 1) {
      throw ParseError("voter count must be a positive integer", line_no, 1);
    }
    if (!parse_integer(view.substr(space + 1), m) || m < 1) {
      throw ParseError("candidate count must be a positive integer", line_no,
                       static_cast<int>(space) + 2);
    }
  }

  std::optional<std::string> comment;
  std::vector<Profile> profiles;
  profiles.reserve(n);
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 2 && line.starts_with('#')) {
      std::string_view text(line);
      text.remove_prefix(1);
      if (text.starts_with(' ')) text.remove_prefix(1);
      comment = std::string(text);
      continue;
    }
    if (static_cast<int>(profiles.size()) == n) {
      if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
      throw ParseError("more than " + std::to_string(n) + " profile rows",
                       line_no, 0);
    }
    if (static_cast<int>(line.size()) != m) {
      throw ParseError("profile row has " + std::to_string(line.size()) +
                           " characters, expected " + std::to_string(m),
                       line_no, 0);
    }
    Profile p(m);
    for (int j = 0; j < m; ++j) {
      if (line[j] == '1') {
        p.set(j);
      } else if (line[j] != '0') {
        throw ParseError("invalid character '" + std::string(1, line[j]) +
                             "' in profile row",
                         line_no, j + 1);
      }
    }
    profiles.push_back(std::move(p));
  }
  if (static_cast<int>(profiles.size()) != n) {
    throw ParseError("expected " + std::to_string(n) + " profile rows, found " +
                         std::to_string(profiles.size()),
                     line_no + 1, 0);
  }
  return InstanceFile{Instance(std::move(profiles)), std::move(comment)};
}

InstanceFile read_instance_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return parse_instance(in);
}

Instance read_instance(const std::filesystem::path& path) {
  return read_instance_file(path).instance;
}

const std::vector<std::string>& result_columns() {
  static const std::vector<std::string> kColumns = {
      "instance_id", "n",           "m",          "k",
      "objective",   "time_s",      "nodes",      "root_bound",
      "root_gap_pct", "solved_at_root", "pct_fixed", "optimal"};
  return kColumns;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::vector<std::string> split_csv_record(const std::string& record, int line) {
  std::vector<std::string> fields;
  std::string field;
  std::size_t i = 0;
  while (true) {
    field.clear();
    if (i < record.size() && record[i] == '"') {
      const std::size_t open = i++;
      while (true) {
        if (i >= record.size()) {
          throw ParseError("unterminated quoted field", line,
                           static_cast<int>(open) + 1);
        }
        if (record[i] == '"') {
          if (i + 1 < record.size() && record[i + 1] == '"') {
            field += '"';
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        field += record[i++];
      }
      if (i < record.size() && record[i] != ',') {
        throw ParseError("text after closing quote", line,
                         static_cast<int>(i) + 1);
      }
    } else {
      while (i < record.size() && record[i] != ',') field += record[i++];
    }
    fields.push_back(field);
    if (i >= record.size()) break;
    ++i;  // comma
  }
  return fields;
}

void write_results_csv(std::ostream& out, const std::vector<ResultRecord>& rows) {
  const auto& columns = result_columns();
  for (std::size_t c = 0; c < columns.size(); ++c) {
    out << (c ? "," : "") << columns[c];
  }
  out << "\r\n";
  for (const ResultRecord& r : rows) {
    out << csv_escape(r.instance_id) << ',' << r.n << ',' << r.m << ',' << r.k
        << ',' << r.objective << ',' << format_double(r.time_s) << ','
        << r.nodes << ',' << r.root_bound << ','
        << format_double(r.root_gap_pct) << ','
        << (r.solved_at_root ? "true" : "false") << ','
        << format_double(r.pct_fixed) << ','
        << (r.optimal ? "true" : "false") << "\r\n";
  }
}

void write_results_csv(const std::filesystem::path& path,
                       const std::vector<ResultRecord>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_results_csv(out, rows);
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

namespace {

bool parse_bool(const std::string& text, bool& value) {
  if (text == "true") {
    value = true;
    return true;
  }
  if (text == "false") {
    value = false;
    return true;
  }
  return false;
}

}  // namespace

std::vector<ResultRecord> parse_results_csv(std::istream& in) {
  std::string line;
  int line_no = 1;
  if (!std::getline(in, line)) throw ParseError("missing CSV header", 1, 0);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (split_csv_record(line, line_no) != result_columns()) {
    throw ParseError("unexpected CSV header", line_no, 0);
  }
  std::vector<ResultRecord> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_csv_record(line, line_no);
    if (f.size() != result_columns().size()) {
      throw ParseError("expected " + std::to_string(result_columns().size()) +
                           " fields, found " + std::to_string(f.size()),
                       line_no, 0);
    }
    ResultRecord r;
    r.instance_id = f[0];
    const auto bad = [&](int column) {
      return ParseError("bad value for " + result_columns()[column], line_no,
                        0);
    };
    if (!parse_integer(f[1], r.n)) throw bad(1);
    if (!parse_integer(f[2], r.m)) throw bad(2);
    if (!parse_integer(f[3], r.k)) throw bad(3);
    if (!parse_integer(f[4], r.objective)) throw bad(4);
    if (!parse_double(f[5], r.time_s)) throw bad(5);
    if (!parse_integer(f[6], r.nodes)) throw bad(6);
    if (!parse_integer(f[7], r.root_bound)) throw bad(7);
    if (!parse_double(f[8], r.root_gap_pct)) throw bad(8);
    if (!parse_bool(f[9], r.solved_at_root)) throw bad(9);
    if (!parse_double(f[10], r.pct_fixed)) throw bad(10);
    if (!parse_bool(f[11], r.optimal)) throw bad(11);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<ResultRecord> read_results_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return parse_results_csv(in);
}

}  // namespace kvote
