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

// Shared fixtures and hand-rolled generators for the test suites.
#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "rbl/linkage.hpp"
#include "rbl/ranking.hpp"
#include "rbl/rng.hpp"
#include "rbl/sampling.hpp"

namespace rbl::testing {

/// The 10-object 3-concordant system used for the golden tests; row i
/// holds r_i(0..9).
inline RankingTable ten_objects() {
  return RankingTable::from_rows({
      {0, 7, 6, 4, 8, 3, 1, 5, 9, 2},
      {5, 0, 3, 6, 7, 8, 1, 4, 9, 2},
      {7, 6, 0, 1, 9, 5, 3, 4, 8, 2},
      {2, 9, 5, 0, 4, 6, 3, 8, 7, 1},
      {9, 8, 7, 4, 0, 3, 6, 2, 1, 5},
      {4, 9, 3, 6, 5, 0, 1, 7, 8, 2},
      {1, 6, 5, 4, 8, 3, 0, 7, 9, 2},
      {7, 9, 1, 8, 2, 3, 5, 0, 4, 6},
      {9, 6, 7, 5, 1, 3, 8, 2, 0, 4},
      {7, 5, 4, 2, 8, 3, 1, 6, 9, 0},
  });
}

/// Ranks by Euclidean distance between uniform points in the unit square;
/// concordant because it comes from a metric (ties have probability 0).
inline RankingTable metric_table(std::size_t n, Rng& rng) {
  std::vector<double> px(n), py(n);
  for (std::size_t i = 0; i < n; ++i) {
    px[i] = rng.unit();
    py[i] = rng.unit();
  }
  std::vector<std::uint32_t> flat(n * n, 0);
  std::vector<ObjectId> order(n);
  for (ObjectId i = 0; i < n; ++i) {
    std::iota(order.begin(), order.end(), ObjectId{0});
    auto dist = [&](ObjectId j) { return std::hypot(px[i] - px[j], py[i] - py[j]); };
    std::sort(order.begin(), order.end(), [&](ObjectId a, ObjectId b) {
      if (a == i || b == i) return a == i && b != i;
      return dist(a) < dist(b);
    });
    for (std::size_t r = 0; r < n; ++r) flat[i * n + order[r]] = static_cast<std::uint32_t>(r);
  }
  return RankingTable(n, std::move(flat));
}

/// A 3-concordant but usually not concordant table: a short random walk
/// away from a concordant start.
inline RankingTable walked_table(std::size_t n, Rng& rng) {
  return random_walk(n, 20 * n * n, RngSeed{rng.next()}).state.table;
}

/// Friend lists of random lengths 0..k with arbitrary order; no
/// concordance is implied.
inline OutOrderedDigraph random_lists(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<std::vector<ObjectId>> lists(n);
  std::vector<ObjectId> others;
  for (ObjectId x = 0; x < n; ++x) {
    others.clear();
    for (ObjectId y = 0; y < n; ++y) {
      if (y != x) others.push_back(y);
    }
    rng.shuffle(std::span<ObjectId>(others));
    const std::size_t len = std::min<std::size_t>(others.size(), rng.below(k + 1));
    lists[x].assign(others.begin(), others.begin() + static_cast<std::ptrdiff_t>(len));
  }
  return OutOrderedDigraph(n, lists, k);
}

/// Each source gets up to k arcs with distinct random weights.
inline std::vector<WeightedArc> random_arcs(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<WeightedArc> arcs;
  std::vector<ObjectId> others;
  for (ObjectId x = 0; x < n; ++x) {
    others.clear();
    for (ObjectId y = 0; y < n; ++y) {
      if (y != x) others.push_back(y);
    }
    rng.shuffle(std::span<ObjectId>(others));
    const std::size_t len = std::min<std::size_t>(others.size(), 1 + rng.below(k));
    for (std::size_t p = 0; p < len; ++p) {
      arcs.push_back({x, others[p], rng.unit() * 10.0 - 5.0});
    }
  }
  return arcs;
}

inline Partition random_partition(std::size_t n, Rng& rng) {
  const std::uint32_t blocks = static_cast<std::uint32_t>(1 + rng.below(n));
  std::vector<std::uint32_t> labels(n);
  for (auto& l : labels) l = static_cast<std::uint32_t>(rng.below(blocks));
  return partition_from_labels(labels);
}

}  // namespace rbl::testing
