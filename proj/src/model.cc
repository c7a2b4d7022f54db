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

#include "kvote/model.h"

#include <algorithm>
#include <bit>
#include <cassert>
#include <numeric>
#include <stdexcept>

namespace kvote {

BitVector::BitVector(std::size_t size)
    : size_(size), words_((size + 63) / 64, 0) {}

BitVector BitVector::FromString(std::string_view bits) {
  BitVector out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      out.set(i);
    } else if (bits[i] != '0') {
      throw std::invalid_argument("bit string has character '" +
                                  std::string(1, bits[i]) + "' at position " +
                                  std::to_string(i));
    }
  }
  return out;
}

void BitVector::set(std::size_t i, bool value) {
  const std::uint64_t mask = std::uint64_t{1} << (i & 63);
  if (value) {
    words_[i >> 6] |= mask;
  } else {
    words_[i >> 6] &= ~mask;
  }
}

int BitVector::count() const {
  int total = 0;
  for (std::uint64_t w : words_) total += std::popcount(w);
  return total;
}

std::string BitVector::ToString() const {
  std::string out(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (test(i)) out[i] = '1';
  }
  return out;
}

int hamming_distance(const BitVector& profile, const BitVector& committee) {
  if (profile.size() != committee.size()) {
    throw std::invalid_argument(
        "hamming_distance: length mismatch (" + std::to_string(profile.size()) +
        " vs " + std::to_string(committee.size()) + ")");
  }
  const auto a = profile.words();
  const auto b = committee.words();
  if (a.size() == 1) return std::popcount(a[0] ^ b[0]);
  int total = 0;
  for (std::size_t w = 0; w < a.size(); ++w) total += std::popcount(a[w] ^ b[w]);
  return total;
}

Instance::Instance(std::vector<Profile> profiles)
    : profiles_(std::move(profiles)) {
  if (profiles_.empty()) {
    throw std::invalid_argument("instance needs at least one voter");
  }
  num_candidates_ = static_cast<int>(profiles_.front().size());
  if (num_candidates_ == 0) {
    throw std::invalid_argument("instance needs at least one candidate");
  }
  approval_counts_.assign(num_candidates_, 0);
  for (std::size_t i = 0; i < profiles_.size(); ++i) {
    const Profile& p = profiles_[i];
    if (static_cast<int>(p.size()) != num_candidates_) {
      throw std::invalid_argument(
          "profile " + std::to_string(i) + " has length " +
          std::to_string(p.size()) + ", expected " +
          std::to_string(num_candidates_));
    }
    for (int j = 0; j < num_candidates_; ++j) approval_counts_[j] += p.test(j);
  }
}

Instance Instance::FromStrings(std::span<const std::string_view> rows) {
  std::vector<Profile> profiles;
  profiles.reserve(rows.size());
  for (std::string_view row : rows) profiles.push_back(BitVector::FromString(row));
  return Instance(std::move(profiles));
}

Instance Instance::FromStrings(std::initializer_list<std::string_view> rows) {
  return FromStrings(std::span<const std::string_view>(rows.begin(), rows.size()));
}

void OwaWeights::Validate(int num_voters) const {
  if (count_ < 1 || count_ > num_voters) {
    throw std::invalid_argument(ToString() + " out of range [1, " +
                                std::to_string(num_voters) + "]");
  }
}

std::string OwaWeights::ToString() const {
  return (kind_ == Kind::kTopK ? "TopK(" : "BottomH(") +
         std::to_string(count_) + ")";
}

std::vector<int> approval_counts(const Instance& instance) {
  const auto counts = instance.approval_counts();
  return {counts.begin(), counts.end()};
}

namespace {

void check_voter_set(const Instance& instance, const VoterSet& voters) {
  std::vector<bool> seen(instance.num_voters(), false);
  for (int i : voters) {
    if (i < 0 || i >= instance.num_voters()) {
      throw std::invalid_argument("voter index " + std::to_string(i) +
                                  " out of range [0, " +
                                  std::to_string(instance.num_voters()) + ")");
    }
    if (seen[i]) {
      throw std::invalid_argument("voter index " + std::to_string(i) +
                                  " repeated in subset");
    }
    seen[i] = true;
  }
}

}  // namespace

std::vector<int> subset_counts(const Instance& instance,
                               const VoterSet& voters) {
  check_voter_set(instance, voters);
  std::vector<int> counts(instance.num_candidates(), 0);
  for (int i : voters) {
    const Profile& p = instance.profile(i);
    for (int j = 0; j < instance.num_candidates(); ++j) counts[j] += p.test(j);
  }
  return counts;
}

void check_committee(const Instance& instance, const Committee& committee) {
  if (static_cast<int>(committee.size()) != instance.num_candidates()) {
    throw std::invalid_argument(
        "committee has length " + std::to_string(committee.size()) +
        ", instance has " + std::to_string(instance.num_candidates()) +
        " candidates");
  }
}

Score subset_distance_by_counts(const Instance& instance,
                                const VoterSet& voters,
                                const Committee& committee) {
  check_committee(instance, committee);
  const std::vector<int> gamma = subset_counts(instance, voters);
  const Score size = static_cast<Score>(voters.size());
  Score total = 0;
  for (int j = 0; j < instance.num_candidates(); ++j) {
    total += committee.test(j) ? size - gamma[j] : gamma[j];
  }
  return total;
}

Score subset_distance(const Instance& instance, const VoterSet& voters,
                      const Committee& committee) {
  check_committee(instance, committee);
  check_voter_set(instance, voters);
  Score total = 0;
  for (int i : voters) total += hamming_distance(instance.profile(i), committee);
  assert(total == subset_distance_by_counts(instance, voters, committee));
  return total;
}

std::vector<int> distances(const Instance& instance,
                           const Committee& committee) {
  check_committee(instance, committee);
  std::vector<int> out(instance.num_voters());
  for (int i = 0; i < instance.num_voters(); ++i) {
    out[i] = hamming_distance(instance.profile(i), committee);
  }
  return out;
}

std::vector<int> order_by_distance(std::span<const int> distances) {
  std::vector<int> order(distances.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return distances[a] > distances[b];
  });
  return order;
}

Score top_k_sum(std::span<const int> values, int k) {
  assert(k >= 0 && static_cast<std::size_t>(k) <= values.size());
  std::vector<int> copy(values.begin(), values.end());
  std::nth_element(copy.begin(), copy.begin() + k, copy.end(),
                   std::greater<>());
  return std::accumulate(copy.begin(), copy.begin() + k, Score{0});
}

Score bottom_h_sum(std::span<const int> values, int h) {
  assert(h >= 0 && static_cast<std::size_t>(h) <= values.size());
  std::vector<int> copy(values.begin(), values.end());
  std::nth_element(copy.begin(), copy.begin() + h, copy.end());
  return std::accumulate(copy.begin(), copy.begin() + h, Score{0});
}

DistanceReport score(const Instance& instance, const Committee& committee,
                     const OwaWeights& weights) {
  weights.Validate(instance.num_voters());
  DistanceReport report;
  report.distances = distances(instance, committee);
  report.order = order_by_distance(report.distances);
  const int n = instance.num_voters();
  const int count = weights.count();
  if (weights.kind() == OwaWeights::Kind::kTopK) {
    for (int r = 0; r < count; ++r) report.score += report.distances[report.order[r]];
  } else {
    for (int r = n - count; r < n; ++r) report.score += report.distances[report.order[r]];
  }
  return report;
}

Score score_value(const Instance& instance, const Committee& committee,
                  const OwaWeights& weights) {
  weights.Validate(instance.num_voters());
  const std::vector<int> d = distances(instance, committee);
  return weights.kind() == OwaWeights::Kind::kTopK
             ? top_k_sum(d, weights.count())
             : bottom_h_sum(d, weights.count());
}

}  // namespace kvote
