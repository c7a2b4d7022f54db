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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "kvote/errors.h"
#include "test_support.h"

namespace kvote {
namespace {

std::string to_text(const Instance& instance, const std::optional<std::string>& comment) {
  std::ostringstream out;
  write_instance(out, instance, comment);
  return out.str();
}

InstanceFile from_text(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

int parse_error_line(const std::string& text, int* column = nullptr) {
  try {
    from_text(text);
  } catch (const ParseError& e) {
    if (column) *column = e.column();
    return e.line();
  }
  return -1;
}

TEST(GenModeTest, ParseAndPrint) {
  EXPECT_EQ(GenMode::Parse("uniform"), GenMode::Uniform());
  EXPECT_EQ(GenMode::Parse("biased"), GenMode::Biased(kDefaultBias));
  EXPECT_EQ(GenMode::Parse("biased:0.3").p, 0.3);
  EXPECT_EQ(GenMode::Biased(0.25).ToString(), "biased:0.25");
  EXPECT_EQ(GenMode::Uniform().ToString(), "uniform");
  EXPECT_THROW(GenMode::Parse("skewed"), std::invalid_argument);
  EXPECT_THROW(GenMode::Parse("biased:x"), std::invalid_argument);
}

TEST(GenConfigTest, Validate) {
  GenConfig c;
  c.n = 0;
  EXPECT_THROW(c.Validate(), std::invalid_argument);
  c.n = 1;
  c.m = 0;
  EXPECT_THROW(c.Validate(), std::invalid_argument);
  c.m = 1;
  c.mode = GenMode::Biased(1.0);
  EXPECT_THROW(c.Validate(), std::invalid_argument);
  c.mode = GenMode::Biased(0.0);
  EXPECT_THROW(c.Validate(), std::invalid_argument);
  c.mode = GenMode::Biased(0.5);
  EXPECT_NO_THROW(c.Validate());
  c.seed = 42;
  EXPECT_EQ(c.HeaderComment(), "seed=42 mode=biased:0.5 rng=mt19937_64");
}

TEST(GenerateTest, SameSeedSameInstance) {
  GenConfig c;
  c.n = 3;
  c.m = 3;
  c.seed = 7;
  EXPECT_EQ(generate(c), generate(c));
  EXPECT_EQ(to_text(generate(c), c.HeaderComment()), to_text(generate(c), c.HeaderComment()));
  c.n = 40;
  c.m = 70;
  const Instance a = generate(c);
  c.seed = 8;
  EXPECT_NE(a, generate(c));
}

// Each column count is Binomial(1000, p); the bands are about six sigma wide.
TEST(GenerateTest, ApprovalFrequencyConcentrates) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    GenConfig c;
    c.n = 1000;
    c.m = 20;
    c.seed = seed;
    for (int j = 0; const int g : approval_counts(generate(c))) {
      EXPECT_GE(g / 1000.0, 0.40) << "column " << j;
      EXPECT_LE(g / 1000.0, 0.60) << "column " << j;
      ++j;
    }
    c.mode = GenMode::Biased(0.25);
    for (const int g : approval_counts(generate(c))) {
      EXPECT_GE(g / 1000.0, 0.17);
      EXPECT_LE(g / 1000.0, 0.33);
    }
  }
}

// Chi-square of the total approval count over a large sample, 1 degree of
// freedom; 10.83 is the 0.1% critical value.
TEST(GenerateTest, OverallFrequencyMatchesProbability) {
  for (double p : {0.5, 0.25, 0.1}) {
    GenConfig c;
    c.n = 400;
    c.m = 250;
    c.mode = p == 0.5 ? GenMode::Uniform() : GenMode::Biased(p);
    c.seed = 99;
    double ones = 0;
    for (int g : approval_counts(generate(c))) ones += g;
    const double total = 400.0 * 250.0;
    const double expected = total * p;
    const double chi2 = std::pow(ones - expected, 2) / expected +
                        std::pow((total - ones) - (total - expected), 2) / (total - expected);
    EXPECT_LT(chi2, 10.83) << "p=" << p;
  }
}

TEST(InstanceFileTest, RoundTripWithAndWithoutComment) {
  const Instance t1 = testing::T1();
  const std::string text = to_text(t1, "seed=1 mode=uniform rng=mt19937_64");
  EXPECT_EQ(text, "3 3\n# seed=1 mode=uniform rng=mt19937_64\n110\n101\n011\n");
  const InstanceFile back = from_text(text);
  EXPECT_EQ(back.instance, t1);
  EXPECT_EQ(back.comment, "seed=1 mode=uniform rng=mt19937_64");
  EXPECT_EQ(to_text(back.instance, back.comment), text);

  const InstanceFile bare = from_text("3 3\n110\n101\n011\n");
  EXPECT_EQ(bare.instance, t1);
  EXPECT_FALSE(bare.comment.has_value());
  EXPECT_EQ(from_text("3 3\r\n110\r\n101\r\n011\r\n").instance, t1);
}

TEST(InstanceFileTest, FileRoundTripOnCorpus) {
  const auto dir = std::filesystem::temp_directory_path() / "kvote_gen_io_test";
  std::filesystem::create_directories(dir);
  for (const auto& entry : testing::corpus(30)) {
    const auto path = dir / "inst.txt";
    write_instance(path, entry.instance, entry.config.HeaderComment());
    const InstanceFile back = read_instance_file(path);
    EXPECT_EQ(back.instance, entry.instance);
    EXPECT_EQ(back.comment, entry.config.HeaderComment());
  }
  std::filesystem::remove_all(dir);
}

TEST(InstanceFileTest, ParseErrorsNameLineAndColumn) {
  int column = -1;
  EXPECT_EQ(parse_error_line("3 3\n110\n10\n011\n", &column), 3);
  EXPECT_EQ(column, 0);
  EXPECT_EQ(parse_error_line("3 3\n# c\n110\n1a1\n011\n", &column), 4);
  EXPECT_EQ(column, 2);
  EXPECT_EQ(parse_error_line("3 3\n110\n101\n"), 4);
  EXPECT_EQ(parse_error_line("2 3\n110\n101\n011\n"), 4);
  EXPECT_EQ(parse_error_line("x 3\n110\n"), 1);
  EXPECT_EQ(parse_error_line("0 3\n"), 1);
  EXPECT_EQ(parse_error_line(""), 1);
  EXPECT_THROW(read_instance("/nonexistent/kvote/file.txt"), IoError);
}

ResultRecord sample_record() {
  ResultRecord r;
  r.instance_id = "n50_m30_uniform_s1";
  r.n = 50;
  r.m = 30;
  r.k = 7;
  r.objective = 84;
  r.time_s = 0.125;
  r.nodes = 123456789012;
  r.root_bound = 83;
  r.root_gap_pct = 100.0 / 84.0;
  r.solved_at_root = false;
  r.pct_fixed = 10.0 / 3.0;
  r.optimal = true;
  return r;
}

TEST(ResultsCsvTest, HeaderOnlyAndOneRecord) {
  std::ostringstream empty;
  write_results_csv(empty, {});
  EXPECT_EQ(empty.str(),
            "instance_id,n,m,k,objective,time_s,nodes,root_bound,root_gap_pct,"
            "solved_at_root,pct_fixed,optimal\r\n");
  std::ostringstream one;
  write_results_csv(one, {sample_record()});
  const std::string text = one.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
}

TEST(ResultsCsvTest, RoundTripIsExact) {
  std::vector<ResultRecord> rows = {sample_record(), sample_record()};
  rows[1].instance_id = "needs, \"quoting\"";
  rows[1].solved_at_root = true;
  rows[1].optimal = false;
  rows[1].time_s = 1e-7;
  std::stringstream io;
  write_results_csv(io, rows);
  EXPECT_EQ(parse_results_csv(io), rows);
}

TEST(ResultsCsvTest, RejectsMalformedRows) {
  std::stringstream io;
  write_results_csv(io, {sample_record()});
  std::string text = io.str() + "a,1,2\r\n";
  std::istringstream in(text);
  try {
    parse_results_csv(in);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(CsvFieldTest, SplitHandlesQuotes) {
  EXPECT_EQ(split_csv_record("a,\"b,c\",\"d\"\"e\"", 1),
            (std::vector<std::string>{"a", "b,c", "d\"e"}));
  EXPECT_EQ(csv_escape("plain"), "plain");
  EXPECT_EQ(csv_escape("a,b"), "\"a,b\"");
  EXPECT_THROW(split_csv_record("\"open", 1), ParseError);
}

}  // namespace
}  // namespace kvote
