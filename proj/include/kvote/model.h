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

// Core domain types for approval-voting committee election: voter profiles,
// committees, OWA weight selectors and exact integer scoring.
//
// Indices are 0-based throughout the API: voters are 0..n-1 and candidates
// are 0..m-1. Bit strings are written with candidate 0 first.

#ifndef KVOTE_MODEL_H_
#define KVOTE_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kvote {

// Objective values and distance sums. Every quantity in scoring is integral.
using Score = std::int64_t;

// Sorted, duplicate-free list of voter indices.
using VoterSet = std::vector<int>;

// Packed fixed-length bit vector. Unused high bits of the last word are kept
// zero so that word-wise XOR + popcount gives exact Hamming distances.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size);

  // Parses a string of '0'/'1' characters; throws std::invalid_argument on
  // any other character.
  static BitVector FromString(std::string_view bits);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1U;
  }
  bool operator[](std::size_t i) const { return test(i); }
  void set(std::size_t i, bool value = true);
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  // Number of set bits.
  int count() const;

  std::span<const std::uint64_t> words() const { return words_; }
  std::string ToString() const;

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

// A voter's approval ballot.
using Profile = BitVector;
// The elected subset of candidates, x_j = 1 iff candidate j is elected.
using Committee = BitVector;

// Number of positions in which `profile` and `committee` differ. Symmetric.
// Throws std::invalid_argument on a length mismatch.
int hamming_distance(const BitVector& profile, const BitVector& committee);

// n voter profiles over m candidates, with cached per-candidate approval
// counts. Immutable after construction.
class Instance {
 public:
  // Throws std::invalid_argument if there are no profiles, no candidates, or
  // profiles of unequal length.
  explicit Instance(std::vector<Profile> profiles);

  // Convenience for tests and examples: one '0'/'1' string per voter.
  static Instance FromStrings(std::span<const std::string_view> rows);
  static Instance FromStrings(std::initializer_list<std::string_view> rows);

  int num_voters() const { return static_cast<int>(profiles_.size()); }
  int num_candidates() const { return num_candidates_; }

  const Profile& profile(int voter) const { return profiles_[voter]; }
  std::span<const Profile> profiles() const { return profiles_; }
  bool approves(int voter, int candidate) const {
    return profiles_[voter].test(static_cast<std::size_t>(candidate));
  }

  // gamma_j: number of voters approving candidate j.
  std::span<const int> approval_counts() const { return approval_counts_; }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.profiles_ == b.profiles_;
  }

 private:
  std::vector<Profile> profiles_;
  int num_candidates_ = 0;
  std::vector<int> approval_counts_;
};

// Selects the 0/1 OWA weight family: TopK(k) sums the k largest distances,
// BottomH(h) sums the h smallest. TopK(n) and BottomH(n) are both minisum.
class OwaWeights {
 public:
  enum class Kind { kTopK, kBottomH };

  static OwaWeights TopK(int k) { return OwaWeights(Kind::kTopK, k); }
  static OwaWeights BottomH(int h) { return OwaWeights(Kind::kBottomH, h); }

  Kind kind() const { return kind_; }
  int count() const { return count_; }

  // Throws std::invalid_argument unless 1 <= count <= num_voters.
  void Validate(int num_voters) const;

  std::string ToString() const;

  friend bool operator==(const OwaWeights&, const OwaWeights&) = default;

 private:
  OwaWeights(Kind kind, int count) : kind_(kind), count_(count) {}

  Kind kind_;
  int count_;
};

struct DistanceReport {
  // distances[i] = d_i(x).
  std::vector<int> distances;
  // Voter indices sorted by non-increasing distance, ties by ascending index.
  std::vector<int> order;
  Score score = 0;
};

std::vector<int> approval_counts(const Instance& instance);

// gamma_j(S) for every candidate. Throws std::invalid_argument for indices out
// of range or repeated indices.
std::vector<int> subset_counts(const Instance& instance, const VoterSet& voters);

// d_S(x) = sum over i in S of d_i(x).
Score subset_distance(const Instance& instance, const VoterSet& voters,
                      const Committee& committee);

// Same quantity through approval counts:
//   sum_j gamma_j(S) (1 - x_j) + sum_j (|S| - gamma_j(S)) x_j.
Score subset_distance_by_counts(const Instance& instance,
                                const VoterSet& voters,
                                const Committee& committee);

std::vector<int> distances(const Instance& instance, const Committee& committee);

// Voter indices sorted by non-increasing distance, ties by ascending index.
std::vector<int> order_by_distance(std::span<const int> distances);

// Sum of the `k` largest entries of `values`. Requires k <= values.size().
Score top_k_sum(std::span<const int> values, int k);
// Sum of the `h` smallest entries of `values`. Requires h <= values.size().
Score bottom_h_sum(std::span<const int> values, int h);

DistanceReport score(const Instance& instance, const Committee& committee,
                     const OwaWeights& weights);

// Just the objective value, without building the ordering.
Score score_value(const Instance& instance, const Committee& committee,
                  const OwaWeights& weights);

// Throws std::invalid_argument if the committee length differs from m.
void check_committee(const Instance& instance, const Committee& committee);

}  // namespace kvote

#endif  // KVOTE_MODEL_H_
