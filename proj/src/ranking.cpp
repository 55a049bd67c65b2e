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

#include "rbl/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "rbl/error.hpp"

namespace rbl {

LabelMap LabelMap::identity(std::size_t n) {
  LabelMap map;
  for (std::size_t i = 0; i < n; ++i) map.intern(std::to_string(i));
  return map;
}

ObjectId LabelMap::intern(std::string_view label) {
  auto [it, inserted] =
      index_.try_emplace(std::string(label), static_cast<ObjectId>(labels_.size()));
  if (inserted) labels_.emplace_back(label);
  return it->second;
}

std::optional<ObjectId> LabelMap::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

LabelMap LabelMap::subset(std::span<const ObjectId> kept) const {
  LabelMap out;
  for (ObjectId id : kept) out.intern(labels_.at(id));
  return out;
}

namespace {

void validate_row(std::span<const std::uint32_t> row, std::size_t i) {
  const std::size_t n = row.size();
  std::vector<bool> seen(n, false);
  for (std::uint32_t v : row) {
    if (v >= n || seen[v]) {
      throw Error(ErrorCode::MalformedTable,
                  "row " + std::to_string(i) + " is not a permutation of 0.." +
                      std::to_string(n - 1));
    }
    seen[v] = true;
  }
  if (row[i] != 0) {
    throw Error(ErrorCode::MalformedTable,
                "row " + std::to_string(i) + " must rank itself 0");
  }
}

}  // namespace

RankingTable::RankingTable(std::size_t n, std::vector<std::uint32_t> flat)
    : n_(n), ranks_(std::move(flat)) {
  if (ranks_.size() != n_ * n_) {
    throw Error(ErrorCode::MalformedTable, "ranking table must have n*n entries");
  }
  for (std::size_t i = 0; i < n_; ++i) validate_row(row(static_cast<ObjectId>(i)), i);
}

RankingTable RankingTable::from_rows(const std::vector<std::vector<std::uint32_t>>& rows) {
  const std::size_t n = rows.size();
  std::vector<std::uint32_t> flat;
  flat.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw Error(ErrorCode::MalformedTable,
                  "row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                      " entries, expected " + std::to_string(n));
    }
    flat.insert(flat.end(), rows[i].begin(), rows[i].end());
  }
  return RankingTable(n, std::move(flat));
}

ObjectId RankingTable::object_at_rank(ObjectId i, std::uint32_t s) const {
  auto r = row(i);
  auto it = std::find(r.begin(), r.end(), s);
  return static_cast<ObjectId>(it - r.begin());
}

void RankingTable::swap_ranks(ObjectId i, ObjectId j, ObjectId k) {
  std::swap(ranks_[i * n_ + j], ranks_[i * n_ + k]);
}

RankingTable RankingTable::restrict_to(std::span<const ObjectId> objects) const {
  const std::size_t m = objects.size();
  std::vector<std::uint32_t> flat(m * m, 0);
  std::vector<std::size_t> order(m);
  for (std::size_t a = 0; a < m; ++a) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    const ObjectId x = objects[a];
    std::sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) {
      return rank(x, objects[p]) < rank(x, objects[q]);
    });
    // order[0] is a itself (rank 0)
    for (std::size_t r = 0; r < m; ++r) {
      flat[a * m + order[r]] = static_cast<std::uint32_t>(r);
    }
  }
  return RankingTable(m, std::move(flat));
}

RankingTable read_ranking_table(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_content_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      ++line_no;
      auto pos = out.find_first_not_of(" \t\r");
      if (pos == std::string::npos || out[pos] == '#') continue;
      return true;
    }
    return false;
  };
  if (!next_content_line(line)) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": missing n");
  }
  std::size_t n = 0;
  {
    std::istringstream head(line);
    if (!(head >> n) || n == 0) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line_no) + ": expected a positive object count");
    }
  }
  std::vector<std::vector<std::uint32_t>> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!next_content_line(line)) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line_no) + ": expected " + std::to_string(n) +
                      " rows, found " + std::to_string(i));
    }
    std::istringstream fields(line);
    std::vector<std::uint32_t> row;
    long long v = 0;
    while (fields >> v) {
      if (v < 0) {
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(line_no) + ": negative rank");
      }
      row.push_back(static_cast<std::uint32_t>(v));
    }
    if (!fields.eof()) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line_no) + ": non-integer entry");
    }
    rows.push_back(std::move(row));
  }
  return RankingTable::from_rows(rows);
}

void write_ranking_table(std::ostream& out, const RankingTable& table) {
  const std::size_t n = table.size();
  out << n << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    auto r = table.row(static_cast<ObjectId>(i));
    for (std::size_t j = 0; j < n; ++j) {
      if (j) out << ' ';
      out << r[j];
    }
    out << '\n';
  }
}

OutOrderedDigraph::OutOrderedDigraph(std::size_t n,
                                     const std::vector<std::vector<ObjectId>>& friends,
                                     std::size_t k_bound)
    : n_(n), k_bound_(k_bound) {
  if (friends.size() != n) {
    throw Error(ErrorCode::InvalidDigraph, "friend lists must cover all n objects");
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t x = 0; x < n; ++x) offsets_[x + 1] = offsets_[x] + friends[x].size();
  friends_.reserve(offsets_[n]);
  sorted_ids_.reserve(offsets_[n]);
  sorted_pos_.reserve(offsets_[n]);

  std::vector<std::pair<ObjectId, std::uint32_t>> scratch;
  for (std::size_t x = 0; x < n; ++x) {
    const auto& list = friends[x];
    if (list.size() > k_bound) {
      throw Error(ErrorCode::InvalidDigraph, "object " + std::to_string(x) + " has " +
                                                 std::to_string(list.size()) +
                                                 " friends, bound is " +
                                                 std::to_string(k_bound));
    }
    scratch.clear();
    for (std::size_t p = 0; p < list.size(); ++p) {
      const ObjectId y = list[p];
      if (y >= n) {
        throw Error(ErrorCode::InvalidDigraph,
                    "friend " + std::to_string(y) + " of " + std::to_string(x) +
                        " is out of range");
      }
      if (y == x) {
        throw Error(ErrorCode::InvalidDigraph,
                    "object " + std::to_string(x) + " lists itself as a friend");
      }
      friends_.push_back(y);
      scratch.emplace_back(y, static_cast<std::uint32_t>(p));
    }
    std::sort(scratch.begin(), scratch.end());
    for (std::size_t p = 0; p < scratch.size(); ++p) {
      if (p > 0 && scratch[p].first == scratch[p - 1].first) {
        throw Error(ErrorCode::InvalidDigraph,
                    "object " + std::to_string(x) + " lists friend " +
                        std::to_string(scratch[p].first) + " twice");
      }
      sorted_ids_.push_back(scratch[p].first);
      sorted_pos_.push_back(scratch[p].second);
    }
  }
}

namespace {

std::size_t longest(const std::vector<std::vector<ObjectId>>& friends) {
  std::size_t k = 0;
  for (const auto& list : friends) k = std::max(k, list.size());
  return k;
}

}  // namespace

OutOrderedDigraph::OutOrderedDigraph(std::size_t n,
                                     const std::vector<std::vector<ObjectId>>& friends)
    : OutOrderedDigraph(n, friends, longest(friends)) {}

std::uint32_t OutOrderedDigraph::position(ObjectId x, ObjectId y) const {
  const auto first = sorted_ids_.begin() + static_cast<std::ptrdiff_t>(offsets_[x]);
  const auto last = sorted_ids_.begin() + static_cast<std::ptrdiff_t>(offsets_[x + 1]);
  const auto it = std::lower_bound(first, last, y);
  if (it == last || *it != y) return kNotFriend;
  return sorted_pos_[static_cast<std::size_t>(it - sorted_ids_.begin())];
}

std::vector<std::vector<ObjectId>> OutOrderedDigraph::to_lists() const {
  std::vector<std::vector<ObjectId>> lists(n_);
  for (std::size_t x = 0; x < n_; ++x) {
    auto f = friends(static_cast<ObjectId>(x));
    lists[x].assign(f.begin(), f.end());
  }
  return lists;
}

OutOrderedDigraph from_weighted_arcs(std::span<const WeightedArc> arcs, std::size_t n,
                                     const ArcBuildOptions& options) {
  std::vector<WeightedArc> sorted;
  sorted.reserve(arcs.size());
  for (const auto& arc : arcs) {
    if (arc.source >= n || arc.target >= n) {
      throw Error(ErrorCode::OutOfRange, "arc " + std::to_string(arc.source) + " -> " +
                                             std::to_string(arc.target) +
                                             " names an object outside 0.." +
                                             std::to_string(n ? n - 1 : 0));
    }
    if (arc.source == arc.target) {
      throw Error(ErrorCode::SelfLoop, "self-loop on object " + std::to_string(arc.source));
    }
    if (std::isnan(arc.weight)) {
      throw Error(ErrorCode::ParseError, "NaN weight on arc " + std::to_string(arc.source) +
                                             " -> " + std::to_string(arc.target));
    }
    sorted.push_back(arc);
  }
  // Group by (source, target) to find duplicates, keeping the heaviest first.
  std::sort(sorted.begin(), sorted.end(), [](const WeightedArc& a, const WeightedArc& b) {
    if (a.source != b.source) return a.source < b.source;
    if (a.target != b.target) return a.target < b.target;
    return a.weight > b.weight;
  });
  std::vector<WeightedArc> unique;
  unique.reserve(sorted.size());
  for (const auto& arc : sorted) {
    if (!unique.empty() && unique.back().source == arc.source &&
        unique.back().target == arc.target) {
      if (options.duplicates == DuplicatePolicy::Error) {
        throw Error(ErrorCode::DuplicateArc, "duplicate arc " + std::to_string(arc.source) +
                                                 " -> " + std::to_string(arc.target));
      }
      continue;
    }
    unique.push_back(arc);
  }
  // Nearest first: decreasing weight, ties by ascending target when allowed.
  std::stable_sort(unique.begin(), unique.end(),
                   [](const WeightedArc& a, const WeightedArc& b) {
                     if (a.source != b.source) return a.source < b.source;
                     return a.weight > b.weight;
                   });
  std::vector<std::vector<ObjectId>> lists(n);
  for (std::size_t i = 0; i < unique.size(); ++i) {
    const auto& arc = unique[i];
    if (i > 0 && unique[i - 1].source == arc.source && unique[i - 1].weight == arc.weight &&
        options.ties == TiePolicy::Error) {
      throw Error(ErrorCode::TiedWeights,
                  "object " + std::to_string(arc.source) + " has tied weights on arcs to " +
                      std::to_string(unique[i - 1].target) + " and " +
                      std::to_string(arc.target));
    }
    lists[arc.source].push_back(arc.target);
  }
  return OutOrderedDigraph(n, lists);
}

OutOrderedDigraph from_ranking_table(const RankingTable& table, std::size_t k) {
  const std::size_t n = table.size();
  if (n == 0 ? k > 0 : k > n - 1) {
    throw Error(ErrorCode::KTooLarge,
                "k = " + std::to_string(k) + " exceeds n - 1 = " + std::to_string(n - 1));
  }
  std::vector<std::vector<ObjectId>> lists(n);
  for (std::size_t x = 0; x < n; ++x) {
    lists[x].reserve(k);
    for (std::uint32_t s = 1; s <= k; ++s) {
      lists[x].push_back(table.object_at_rank(static_cast<ObjectId>(x), s));
    }
  }
  return OutOrderedDigraph(n, lists, k);
}

OutOrderedDigraph truncate(const OutOrderedDigraph& d, std::size_t k) {
  auto lists = d.to_lists();
  for (auto& list : lists) {
    if (list.size() > k) list.resize(k);
  }
  return OutOrderedDigraph(d.size(), lists, std::min(k, d.k_bound()));
}

std::vector<WeightedArc> transpose_mode(std::span<const WeightedArc> arcs) {
  std::vector<WeightedArc> out;
  out.reserve(arcs.size());
  for (const auto& arc : arcs) out.push_back({arc.target, arc.source, arc.weight});
  return out;
}

bool check_rank_equivalent(const OutOrderedDigraph& a, const OutOrderedDigraph& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t x = 0; x < a.size(); ++x) {
    auto fa = a.friends(static_cast<ObjectId>(x));
    auto fb = b.friends(static_cast<ObjectId>(x));
    if (!std::equal(fa.begin(), fa.end(), fb.begin(), fb.end())) return false;
  }
  return true;
}

std::vector<WeightedArc> to_weighted_arcs(const OutOrderedDigraph& d) {
  std::vector<WeightedArc> arcs;
  arcs.reserve(d.arc_count());
  for (std::size_t x = 0; x < d.size(); ++x) {
    auto f = d.friends(static_cast<ObjectId>(x));
    for (std::size_t p = 0; p < f.size(); ++p) {
      arcs.push_back({static_cast<ObjectId>(x), f[p], -static_cast<double>(p + 1)});
    }
  }
  return arcs;
}

FriendListStats friend_list_stats(const OutOrderedDigraph& d) {
  FriendListStats stats;
  if (d.size() == 0) return stats;
  stats.min = SIZE_MAX;
  for (std::size_t x = 0; x < d.size(); ++x) {
    const std::size_t len = d.friends(static_cast<ObjectId>(x)).size();
    stats.min = std::min(stats.min, len);
    stats.max = std::max(stats.max, len);
  }
  stats.mean = static_cast<double>(d.arc_count()) / static_cast<double>(d.size());
  return stats;
}

}  // namespace rbl
