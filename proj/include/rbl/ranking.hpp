// Copyright 2026 The rblink Authors
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rbl {

using ObjectId = std::uint32_t;
inline constexpr std::uint32_t kNotFriend = UINT32_MAX;

/// Bijection between external labels and dense indices 0..n-1.
class LabelMap {
 public:
  LabelMap() = default;

  /// Labels "0", "1", ..., "n-1".
  static LabelMap identity(std::size_t n);

  /// Returns the index of `label`, inserting it if it is new.
  ObjectId intern(std::string_view label);
  std::optional<ObjectId> find(std::string_view label) const;
  const std::string& label(ObjectId id) const { return labels_.at(id); }
  std::size_t size() const { return labels_.size(); }

  /// Keeps the listed ids (in the given order) and renumbers them densely.
  LabelMap subset(std::span<const ObjectId> kept) const;

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, ObjectId> index_;
};

/// Dense n x n ranking table: row i is a permutation of 0..n-1 with
/// r_i(i) = 0, so r_i(j) in 1..n-1 is the rank object i awards object j.
class RankingTable {
 public:
  RankingTable() = default;

  /// Validates every row; throws Error{MalformedTable} naming the bad row.
  RankingTable(std::size_t n, std::vector<std::uint32_t> flat);
  static RankingTable from_rows(const std::vector<std::vector<std::uint32_t>>& rows);

  std::size_t size() const { return n_; }
  std::uint32_t rank(ObjectId i, ObjectId j) const { return ranks_[i * n_ + j]; }
  std::span<const std::uint32_t> row(ObjectId i) const {
    return {ranks_.data() + i * n_, n_};
  }

  /// Object j with r_i(j) = s.
  ObjectId object_at_rank(ObjectId i, std::uint32_t s) const;

  /// Exchanges r_i(j) and r_i(k). j, k must differ from i.
  void swap_ranks(ObjectId i, ObjectId j, ObjectId k);

  /// Sub-table on `objects` (in that order), ranks renumbered 1..m-1.
  RankingTable restrict_to(std::span<const ObjectId> objects) const;

  bool operator==(const RankingTable&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint32_t> ranks_;
};

/// Plain text: first line n, then n lines of n space-separated integers.
RankingTable read_ranking_table(std::istream& in);
void write_ranking_table(std::ostream& out, const RankingTable& table);

struct WeightedArc {
  ObjectId source = 0;
  ObjectId target = 0;
  double weight = 0.0;  // compared, never combined arithmetically

  bool operator==(const WeightedArc&) const = default;
};

/// (S, Gamma, <=): for each object an ordered, nearest-first friend list.
/// Stored as CSR plus a sorted (friend, position) index per object so rank
/// lookups cost O(log |Gamma(x)|).
class OutOrderedDigraph {
 public:
  OutOrderedDigraph() = default;

  /// Throws Error{InvalidDigraph} if a list contains its owner, repeats an
  /// object, names an object >= n, or is longer than `k_bound`.
  OutOrderedDigraph(std::size_t n, const std::vector<std::vector<ObjectId>>& friends,
                    std::size_t k_bound);
  /// k_bound defaults to the longest list.
  OutOrderedDigraph(std::size_t n, const std::vector<std::vector<ObjectId>>& friends);

  std::size_t size() const { return n_; }
  std::size_t k_bound() const { return k_bound_; }
  std::size_t arc_count() const { return friends_.size(); }

  std::span<const ObjectId> friends(ObjectId x) const {
    return {friends_.data() + offsets_[x], offsets_[x + 1] - offsets_[x]};
  }

  /// Position of y in Gamma(x) (0 = nearest), or kNotFriend.
  std::uint32_t position(ObjectId x, ObjectId y) const;
  bool is_friend(ObjectId x, ObjectId y) const { return position(x, y) != kNotFriend; }

  std::vector<std::vector<ObjectId>> to_lists() const;

  bool operator==(const OutOrderedDigraph& other) const {
    return n_ == other.n_ && offsets_ == other.offsets_ && friends_ == other.friends_;
  }

 private:
  std::size_t n_ = 0;
  std::size_t k_bound_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<ObjectId> friends_;
  std::vector<ObjectId> sorted_ids_;
  std::vector<std::uint32_t> sorted_pos_;
};

enum class TiePolicy { Error, BreakByTarget };
enum class DuplicatePolicy { Error, KeepMax };

struct ArcBuildOptions {
  TiePolicy ties = TiePolicy::Error;
  DuplicatePolicy duplicates = DuplicatePolicy::Error;
};

/// Gamma(x) = targets of x's out-arcs, heaviest (most similar) first.
/// Throws DuplicateArc, TiedWeights, SelfLoop or OutOfRange.
OutOrderedDigraph from_weighted_arcs(std::span<const WeightedArc> arcs, std::size_t n,
                                     const ArcBuildOptions& options = {});

/// Gamma(x) = the k objects of smallest positive rank in row x.
OutOrderedDigraph from_ranking_table(const RankingTable& table, std::size_t k);

/// Keeps the first k friends of every list.
OutOrderedDigraph truncate(const OutOrderedDigraph& d, std::size_t k);

/// Reverses every arc; with from_weighted_arcs this yields the in-edge
/// ("whence") comparator.
std::vector<WeightedArc> transpose_mode(std::span<const WeightedArc> arcs);

bool check_rank_equivalent(const OutOrderedDigraph& a, const OutOrderedDigraph& b);

/// Canonical representative: w_x(y) = -(position + 1).
std::vector<WeightedArc> to_weighted_arcs(const OutOrderedDigraph& d);

struct FriendListStats {
  std::size_t min = 0;
  std::size_t max = 0;
  double mean = 0.0;
};
FriendListStats friend_list_stats(const OutOrderedDigraph& d);

}  // namespace rbl
