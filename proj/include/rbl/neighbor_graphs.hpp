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
#include <span>
#include <utility>
#include <vector>

#include "rbl/ranking.hpp"

namespace rbl {

/// Unordered object pair, stored with lo < hi.
struct Link {
  ObjectId lo = 0;
  ObjectId hi = 0;

  static Link of(ObjectId a, ObjectId b) { return a < b ? Link{a, b} : Link{b, a}; }
  auto operator<=>(const Link&) const = default;
};

/// Sorted, duplicate-free set of pairs.
using LinkSet = std::vector<Link>;

/// Undirected Gamma-neighbor (K-NN) graph U_Gamma in symmetric CSR form.
/// Each adjacency list is sorted; `edge_ids` runs parallel to it and maps
/// every slot to the index of its undirected edge in `edges()`.
class NeighborGraph {
 public:
  NeighborGraph() = default;
  NeighborGraph(std::size_t n, LinkSet edges);

  std::size_t size() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const LinkSet& edges() const { return edges_; }

  std::span<const ObjectId> neighbors(ObjectId x) const {
    return {adjacency_.data() + offsets_[x], offsets_[x + 1] - offsets_[x]};
  }
  std::span<const std::size_t> neighbor_edge_ids(ObjectId x) const {
    return {edge_ids_.data() + offsets_[x], offsets_[x + 1] - offsets_[x]};
  }
  std::size_t degree(ObjectId x) const { return offsets_[x + 1] - offsets_[x]; }

  bool adjacent(ObjectId x, ObjectId y) const;
  /// Index of edge {x, y} in edges(), or SIZE_MAX.
  std::size_t edge_id(ObjectId x, ObjectId y) const;

 private:
  std::size_t n_ = 0;
  LinkSet edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<ObjectId> adjacency_;
  std::vector<std::size_t> edge_ids_;
};

/// {x, y} is an edge iff y in Gamma(x) or x in Gamma(y).
NeighborGraph undirected_neighbor_graph(const OutOrderedDigraph& d);

struct TwoCore {
  std::vector<ObjectId> survivors;  // sorted
  std::vector<ObjectId> pruned;     // sorted
  LinkSet edges;                    // induced on survivors, original ids
};

/// Iteratively removes vertices of degree <= 1. Self-loops and repeated
/// edges in the input are ignored.
TwoCore two_core(std::span<const Link> edges, std::size_t n);

/// Pairs {x, z} with z in Gamma(x) and x in Gamma(z).
LinkSet mutual_friends(const OutOrderedDigraph& d);

}  // namespace rbl
