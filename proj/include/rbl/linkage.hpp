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
#include <map>
#include <optional>
#include <vector>

#include "rbl/neighbor_graphs.hpp"
#include "rbl/ranking.hpp"

namespace rbl {

/// (S, L, sigma_K) with optional tau_K on the undirected K-NN edges.
/// `in_sway[i]` belongs to `links[i]`; `tau[i]` to `knn_edges[i]`.
struct LinkageGraph {
  std::size_t n = 0;
  LinkSet links;
  std::vector<std::uint64_t> in_sway;
  LinkSet knn_edges;
  std::vector<std::uint64_t> tau;
  bool with_tau = false;  // knn_edges and tau are filled only when set

  std::optional<std::uint64_t> sigma(Link link) const;
  std::optional<std::uint64_t> tau_of(Link edge) const;
  std::uint64_t max_sigma() const;

  bool operator==(const LinkageGraph&) const = default;
};

/// Partition of 0..n-1; blocks sorted internally and ordered by minimum
/// member, and block_of[x] indexes `blocks`.
struct Partition {
  std::size_t n = 0;
  std::vector<std::uint32_t> block_of;
  std::vector<std::vector<ObjectId>> blocks;

  std::vector<std::size_t> block_sizes() const;  // ascending
  bool operator==(const Partition&) const = default;
};

/// Builds the canonical form from any labelling of blocks.
Partition partition_from_labels(std::span<const std::uint32_t> labels);

struct Hierarchy {
  /// Increasing thresholds at which the partition may change: 0, every
  /// distinct positive sigma, and max sigma + 1.
  std::vector<std::uint64_t> thresholds;
  std::vector<Partition> partitions;
  std::optional<std::uint64_t> critical;

  /// Partition of the components of L_t for any integer t >= 0.
  const Partition& partition_at(std::uint64_t t) const;
};

/// Lemma-style source test for the voter triangle {xz, xy, yz}, with {x, z}
/// mutual friends: xz is the source iff every comparator that can see y
/// ranks the partner ahead of y.
inline bool first_element_is_source(const OutOrderedDigraph& d, ObjectId x, ObjectId z,
                                    ObjectId y) {
  const std::uint32_t xy = d.position(x, y);
  if (xy != kNotFriend && d.position(x, z) > xy) return false;
  const std::uint32_t zy = d.position(z, y);
  if (zy != kNotFriend && d.position(z, x) > zy) return false;
  return true;
}

/// All y adjacent to both x and z in U with {x, z} meeting Gamma(y).
std::vector<ObjectId> pertinent_witnesses(const OutOrderedDigraph& d, const NeighborGraph& g,
                                          ObjectId x, ObjectId z);

struct LinkageOptions {
  bool with_tau = false;
  /// 0 keeps the OpenMP default.
  int threads = 0;
};

/// In-sway over all mutual-friend links, parallel over links.
LinkageGraph compute_linkage(const OutOrderedDigraph& d, const LinkageOptions& options = {});
LinkageGraph compute_linkage(const OutOrderedDigraph& d, const NeighborGraph& g,
                             const LinkageOptions& options = {});

/// Single-threaded reference of the same kernel.
LinkageGraph compute_linkage_serial(const OutOrderedDigraph& d, bool with_tau);

/// O(n^3) oracle: enumerates every triple, keeps the Gamma-pertinent ones by
/// definition, orients each 1-cell from the comparators and counts sources.
/// Always fills tau.
LinkageGraph in_sway_bruteforce(const OutOrderedDigraph& d);

/// Triple-level statistics used to audit the structural lemmas.
struct PertinenceCensus {
  std::uint64_t pertinent = 0;
  std::uint64_t cyclic = 0;
  std::uint64_t without_mutual_pair = 0;
  std::uint64_t off_link_sources = 0;  // sources that are not mutual friends
  std::map<Link, std::uint64_t> containing;  // pertinent simplices per pair
};
PertinenceCensus pertinent_census(const OutOrderedDigraph& d);

enum class WeightHeuristic { Proportion, Reciprocal };

/// Weighted variants of in-sway; scores are aligned with `lg.links`.
/// Requires lg.tau (compute_linkage with with_tau).
std::vector<double> weighted_linkage(const OutOrderedDigraph& d, const LinkageGraph& lg,
                                     WeightHeuristic heuristic);

LinkSet threshold_links(const LinkageGraph& lg, std::uint64_t t);

Partition components(std::size_t n, std::span<const Link> links);

/// max{t >= 1 : |L_t| >= n}, absent when |L_1| < n.
std::optional<std::uint64_t> critical_in_sway(const LinkageGraph& lg, std::size_t n);

Hierarchy hierarchy(const LinkageGraph& lg, std::size_t n);

}  // namespace rbl
