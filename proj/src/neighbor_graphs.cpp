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

#include "rbl/neighbor_graphs.hpp"

#include <algorithm>
#include <cstdint>

namespace rbl {

NeighborGraph::NeighborGraph(std::size_t n, LinkSet edges) : n_(n), edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  offsets_.assign(n + 1, 0);
  for (const auto& e : edges_) {
    ++offsets_[e.lo + 1];
    ++offsets_[e.hi + 1];
  }
  for (std::size_t x = 0; x < n; ++x) offsets_[x + 1] += offsets_[x];
  adjacency_.resize(offsets_[n]);
  edge_ids_.resize(offsets_[n]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  // Edges are sorted by (lo, hi), so appending in edge order fills each list
  // with lower neighbors ascending, then higher neighbors ascending.
  for (std::size_t id = 0; id < edges_.size(); ++id) {
    const auto& e = edges_[id];
    adjacency_[cursor[e.hi]] = e.lo;
    edge_ids_[cursor[e.hi]++] = id;
  }
  for (std::size_t id = 0; id < edges_.size(); ++id) {
    const auto& e = edges_[id];
    adjacency_[cursor[e.lo]] = e.hi;
    edge_ids_[cursor[e.lo]++] = id;
  }
}

bool NeighborGraph::adjacent(ObjectId x, ObjectId y) const {
  auto nb = neighbors(x);
  return std::binary_search(nb.begin(), nb.end(), y);
}

std::size_t NeighborGraph::edge_id(ObjectId x, ObjectId y) const {
  auto nb = neighbors(x);
  auto it = std::lower_bound(nb.begin(), nb.end(), y);
  if (it == nb.end() || *it != y) return SIZE_MAX;
  return neighbor_edge_ids(x)[static_cast<std::size_t>(it - nb.begin())];
}

NeighborGraph undirected_neighbor_graph(const OutOrderedDigraph& d) {
  LinkSet edges;
  edges.reserve(d.arc_count());
  for (std::size_t x = 0; x < d.size(); ++x) {
    for (ObjectId y : d.friends(static_cast<ObjectId>(x))) {
      edges.push_back(Link::of(static_cast<ObjectId>(x), y));
    }
  }
  return NeighborGraph(d.size(), std::move(edges));
}

TwoCore two_core(std::span<const Link> edges, std::size_t n) {
  LinkSet clean;
  clean.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.lo != e.hi) clean.push_back(Link::of(e.lo, e.hi));
  }
  NeighborGraph graph(n, std::move(clean));

  std::vector<std::size_t> degree(n);
  std::vector<ObjectId> queue;
  std::vector<bool> removed(n, false);
  for (std::size_t x = 0; x < n; ++x) {
    degree[x] = graph.degree(static_cast<ObjectId>(x));
    if (degree[x] <= 1) {
      removed[x] = true;
      queue.push_back(static_cast<ObjectId>(x));
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (ObjectId y : graph.neighbors(queue[head])) {
      if (removed[y]) continue;
      if (--degree[y] <= 1) {
        removed[y] = true;
        queue.push_back(y);
      }
    }
  }

  TwoCore core;
  for (std::size_t x = 0; x < n; ++x) {
    (removed[x] ? core.pruned : core.survivors).push_back(static_cast<ObjectId>(x));
  }
  for (const auto& e : graph.edges()) {
    if (!removed[e.lo] && !removed[e.hi]) core.edges.push_back(e);
  }
  return core;
}

LinkSet mutual_friends(const OutOrderedDigraph& d) {
  LinkSet links;
  for (std::size_t x = 0; x < d.size(); ++x) {
    const auto xi = static_cast<ObjectId>(x);
    for (ObjectId z : d.friends(xi)) {
      if (xi < z && d.is_friend(z, xi)) links.push_back({xi, z});
    }
  }
  std::sort(links.begin(), links.end());
  return links;
}

}  // namespace rbl
