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

#include "rbl/linkage.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>

#include "rbl/error.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace rbl {

std::optional<std::uint64_t> LinkageGraph::sigma(Link link) const {
  auto it = std::lower_bound(links.begin(), links.end(), link);
  if (it == links.end() || *it != link) return std::nullopt;
  return in_sway[static_cast<std::size_t>(it - links.begin())];
}

std::optional<std::uint64_t> LinkageGraph::tau_of(Link edge) const {
  if (!with_tau) return std::nullopt;
  auto it = std::lower_bound(knn_edges.begin(), knn_edges.end(), edge);
  if (it == knn_edges.end() || *it != edge) return std::nullopt;
  return tau[static_cast<std::size_t>(it - knn_edges.begin())];
}

std::uint64_t LinkageGraph::max_sigma() const {
  return in_sway.empty() ? 0 : *std::max_element(in_sway.begin(), in_sway.end());
}

std::vector<std::size_t> Partition::block_sizes() const {
  std::vector<std::size_t> sizes;
  sizes.reserve(blocks.size());
  for (const auto& b : blocks) sizes.push_back(b.size());
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

Partition partition_from_labels(std::span<const std::uint32_t> labels) {
  Partition p;
  p.n = labels.size();
  p.block_of.assign(p.n, 0);
  std::vector<std::uint32_t> remap;
  std::vector<bool> assigned;
  for (std::size_t x = 0; x < p.n; ++x) {
    const std::uint32_t label = labels[x];
    if (label >= remap.size()) {
      remap.resize(label + 1);
      assigned.resize(label + 1, false);
    }
    if (!assigned[label]) {
      assigned[label] = true;
      remap[label] = static_cast<std::uint32_t>(p.blocks.size());
      p.blocks.emplace_back();
    }
    p.block_of[x] = remap[label];
    p.blocks[remap[label]].push_back(static_cast<ObjectId>(x));
  }
  return p;
}

const Partition& Hierarchy::partition_at(std::uint64_t t) const {
  auto it = std::lower_bound(thresholds.begin(), thresholds.end(), t);
  if (it == thresholds.end()) return partitions.back();
  return partitions[static_cast<std::size_t>(it - thresholds.begin())];
}

std::vector<ObjectId> pertinent_witnesses(const OutOrderedDigraph& d, const NeighborGraph& g,
                                          ObjectId x, ObjectId z) {
  std::vector<ObjectId> out;
  auto nx = g.neighbors(x);
  auto nz = g.neighbors(z);
  std::set_intersection(nx.begin(), nx.end(), nz.begin(), nz.end(), std::back_inserter(out));
  std::erase_if(out, [&](ObjectId y) {
    return y == x || y == z || (!d.is_friend(y, x) && !d.is_friend(y, z));
  });
  return out;
}

namespace {

// Counts sources over the pertinent witnesses of one link. `tau`, when
// non-null, receives +1 on both non-source edges of every counted simplex.
template <bool Atomic>
std::uint64_t count_link(const OutOrderedDigraph& d, const NeighborGraph& g, ObjectId x,
                         ObjectId z, std::uint64_t* tau) {
  auto nx = g.neighbors(x);
  auto nz = g.neighbors(z);
  auto ex = g.neighbor_edge_ids(x);
  auto ez = g.neighbor_edge_ids(z);
  std::uint64_t sigma = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < nx.size() && j < nz.size()) {
    if (nx[i] < nz[j]) {
      ++i;
    } else if (nz[j] < nx[i]) {
      ++j;
    } else {
      const ObjectId y = nx[i];
      if ((d.is_friend(y, x) || d.is_friend(y, z)) && first_element_is_source(d, x, z, y)) {
        ++sigma;
        if (tau != nullptr) {
          if constexpr (Atomic) {
            std::atomic_ref<std::uint64_t>(tau[ex[i]]).fetch_add(1, std::memory_order_relaxed);
            std::atomic_ref<std::uint64_t>(tau[ez[j]]).fetch_add(1, std::memory_order_relaxed);
          } else {
            ++tau[ex[i]];
            ++tau[ez[j]];
          }
        }
      }
      ++i;
      ++j;
    }
  }
  return sigma;
}

LinkageGraph empty_graph(const OutOrderedDigraph& d, const NeighborGraph& g, bool with_tau) {
  LinkageGraph lg;
  lg.n = d.size();
  lg.links = mutual_friends(d);
  lg.in_sway.assign(lg.links.size(), 0);
  lg.with_tau = with_tau;
  if (with_tau) {
    lg.knn_edges = g.edges();
    lg.tau.assign(lg.knn_edges.size(), 0);
  }
  return lg;
}

}  // namespace

LinkageGraph compute_linkage(const OutOrderedDigraph& d, const NeighborGraph& g,
                             const LinkageOptions& options) {
  LinkageGraph lg = empty_graph(d, g, options.with_tau);
  std::uint64_t* tau = options.with_tau ? lg.tau.data() : nullptr;
  const auto count = static_cast<std::ptrdiff_t>(lg.links.size());
#if defined(_OPENMP)
  const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 256) num_threads(threads)
#endif
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const Link link = lg.links[static_cast<std::size_t>(i)];
    lg.in_sway[static_cast<std::size_t>(i)] = count_link<true>(d, g, link.lo, link.hi, tau);
  }
  return lg;
}

LinkageGraph compute_linkage(const OutOrderedDigraph& d, const LinkageOptions& options) {
  return compute_linkage(d, undirected_neighbor_graph(d), options);
}

LinkageGraph compute_linkage_serial(const OutOrderedDigraph& d, bool with_tau) {
  const NeighborGraph g = undirected_neighbor_graph(d);
  LinkageGraph lg = empty_graph(d, g, with_tau);
  std::uint64_t* tau = with_tau ? lg.tau.data() : nullptr;
  for (std::size_t i = 0; i < lg.links.size(); ++i) {
    lg.in_sway[i] = count_link<false>(d, g, lg.links[i].lo, lg.links[i].hi, tau);
  }
  return lg;
}

namespace {

bool knn_adjacent(const OutOrderedDigraph& d, ObjectId a, ObjectId b) {
  return d.is_friend(a, b) || d.is_friend(b, a);
}

// Orientation of the 1-cell {vu, vw} at v: true when vu -> vw, i.e. v's
// comparator puts u ahead of w. A non-friend is farther than any friend.
bool points_from(const OutOrderedDigraph& d, ObjectId v, ObjectId u, ObjectId w) {
  const std::uint32_t pu = d.position(v, u);
  const std::uint32_t pw = d.position(v, w);
  if (pu != kNotFriend && pw != kNotFriend) return pu < pw;
  return pu != kNotFriend;
}

bool is_pertinent(const OutOrderedDigraph& d, ObjectId a, ObjectId b, ObjectId c) {
  if (!knn_adjacent(d, a, b) || !knn_adjacent(d, b, c) || !knn_adjacent(d, a, c)) {
    return false;
  }
  return (d.is_friend(a, b) || d.is_friend(a, c)) && (d.is_friend(b, a) || d.is_friend(b, c)) &&
         (d.is_friend(c, a) || d.is_friend(c, b));
}

struct TriangleVisit {
  Link ab, ac, bc;
  bool ab_source, ac_source, bc_source;
};

// Visits every pertinent triple a < b < c with its source flags.
template <class Visitor>
void for_each_pertinent(const OutOrderedDigraph& d, Visitor&& visit) {
  const auto n = static_cast<ObjectId>(d.size());
  for (ObjectId a = 0; a < n; ++a) {
    for (ObjectId b = a + 1; b < n; ++b) {
      if (!knn_adjacent(d, a, b)) continue;
      for (ObjectId c = b + 1; c < n; ++c) {
        if (!is_pertinent(d, a, b, c)) continue;
        const bool ab_over_ac = points_from(d, a, b, c);
        const bool ab_over_bc = points_from(d, b, a, c);
        const bool ac_over_bc = points_from(d, c, a, b);
        TriangleVisit t{{a, b}, {a, c}, {b, c},
                        ab_over_ac && ab_over_bc,
                        !ab_over_ac && ac_over_bc,
                        !ab_over_bc && !ac_over_bc};
        visit(t);
      }
    }
  }
}

}  // namespace

LinkageGraph in_sway_bruteforce(const OutOrderedDigraph& d) {
  LinkageGraph lg;
  lg.n = d.size();
  lg.with_tau = true;
  const auto n = static_cast<ObjectId>(d.size());
  for (ObjectId a = 0; a < n; ++a) {
    for (ObjectId b = a + 1; b < n; ++b) {
      if (d.is_friend(a, b) && d.is_friend(b, a)) lg.links.push_back({a, b});
      if (knn_adjacent(d, a, b)) lg.knn_edges.push_back({a, b});
    }
  }
  lg.in_sway.assign(lg.links.size(), 0);
  lg.tau.assign(lg.knn_edges.size(), 0);
  auto bump = [](const LinkSet& keys, std::vector<std::uint64_t>& values, Link key) {
    auto it = std::lower_bound(keys.begin(), keys.end(), key);
    if (it != keys.end() && *it == key) ++values[static_cast<std::size_t>(it - keys.begin())];
  };
  for_each_pertinent(d, [&](const TriangleVisit& t) {
    const std::pair<Link, bool> cells[] = {
        {t.ab, t.ab_source}, {t.ac, t.ac_source}, {t.bc, t.bc_source}};
    const bool has_source = t.ab_source || t.ac_source || t.bc_source;
    if (!has_source) return;
    for (const auto& [cell, source] : cells) {
      if (source) {
        bump(lg.links, lg.in_sway, cell);
      } else {
        bump(lg.knn_edges, lg.tau, cell);
      }
    }
  });
  return lg;
}

PertinenceCensus pertinent_census(const OutOrderedDigraph& d) {
  PertinenceCensus census;
  auto mutual = [&](Link l) { return d.is_friend(l.lo, l.hi) && d.is_friend(l.hi, l.lo); };
  for_each_pertinent(d, [&](const TriangleVisit& t) {
    ++census.pertinent;
    ++census.containing[t.ab];
    ++census.containing[t.ac];
    ++census.containing[t.bc];
    if (!mutual(t.ab) && !mutual(t.ac) && !mutual(t.bc)) ++census.without_mutual_pair;
    if (!t.ab_source && !t.ac_source && !t.bc_source) {
      ++census.cyclic;
      return;
    }
    const Link source = t.ab_source ? t.ab : (t.ac_source ? t.ac : t.bc);
    if (!mutual(source)) ++census.off_link_sources;
  });
  return census;
}

std::vector<double> weighted_linkage(const OutOrderedDigraph& d, const LinkageGraph& lg,
                                     WeightHeuristic heuristic) {
  if (!lg.with_tau) {
    throw Error(ErrorCode::InvalidDigraph, "weighted linkage needs tau; compute it first");
  }
  std::vector<double> scores(lg.links.size(), 0.0);
  if (heuristic == WeightHeuristic::Proportion) {
    for (std::size_t i = 0; i < lg.links.size(); ++i) {
      const double sigma = static_cast<double>(lg.in_sway[i]);
      const double total = sigma + static_cast<double>(lg.tau_of(lg.links[i]).value_or(0));
      scores[i] = total > 0 ? sigma / total : 0.0;
    }
    return scores;
  }
  const NeighborGraph g = undirected_neighbor_graph(d);
  const auto count = static_cast<std::ptrdiff_t>(lg.links.size());
#pragma omp parallel for schedule(dynamic, 256)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const Link link = lg.links[static_cast<std::size_t>(i)];
    double sum = 0.0;
    for (ObjectId y : pertinent_witnesses(d, g, link.lo, link.hi)) {
      if (!first_element_is_source(d, link.lo, link.hi, y)) continue;
      const auto t1 = lg.tau[g.edge_id(link.lo, y)];
      const auto t2 = lg.tau[g.edge_id(link.hi, y)];
      sum += 1.0 / (2.0 + static_cast<double>(std::min(t1, t2)));
    }
    scores[static_cast<std::size_t>(i)] = sum;
  }
  return scores;
}

LinkSet threshold_links(const LinkageGraph& lg, std::uint64_t t) {
  LinkSet out;
  for (std::size_t i = 0; i < lg.links.size(); ++i) {
    if (lg.in_sway[i] >= t) out.push_back(lg.links[i]);
  }
  return out;
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent_[a] = b;
  }
  std::vector<std::uint32_t> labels() {
    std::vector<std::uint32_t> out(parent_.size());
    for (std::size_t x = 0; x < parent_.size(); ++x) {
      out[x] = find(static_cast<std::uint32_t>(x));
    }
    return out;
  }

 private:
  std::vector<std::uint32_t> parent_;
};

}  // namespace

Partition components(std::size_t n, std::span<const Link> links) {
  DisjointSets sets(n);
  for (const auto& l : links) sets.unite(l.lo, l.hi);
  const auto labels = sets.labels();
  return partition_from_labels(labels);
}

std::optional<std::uint64_t> critical_in_sway(const LinkageGraph& lg, std::size_t n) {
  if (n == 0 || lg.in_sway.size() < n) return std::nullopt;
  std::vector<std::uint64_t> sorted = lg.in_sway;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(n - 1),
                   sorted.end(), std::greater<>());
  // |L_t| >= n exactly when t is at most the n-th largest in-sway.
  const std::uint64_t nth = sorted[n - 1];
  if (nth < 1) return std::nullopt;
  return nth;
}

Hierarchy hierarchy(const LinkageGraph& lg, std::size_t n) {
  Hierarchy h;
  h.critical = critical_in_sway(lg, n);
  std::vector<std::uint64_t> levels{0};
  for (std::uint64_t s : lg.in_sway) {
    if (s > 0) levels.push_back(s);
  }
  levels.push_back(lg.max_sigma() + 1);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  std::vector<std::size_t> order(lg.links.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return lg.in_sway[a] > lg.in_sway[b]; });

  h.thresholds = levels;
  h.partitions.resize(levels.size());
  DisjointSets sets(n);
  std::size_t next = 0;
  for (std::size_t li = levels.size(); li-- > 0;) {
    while (next < order.size() && lg.in_sway[order[next]] >= levels[li]) {
      const Link l = lg.links[order[next++]];
      sets.unite(l.lo, l.hi);
    }
    const auto labels = sets.labels();
    h.partitions[li] = partition_from_labels(labels);
  }
  return h;
}

}  // namespace rbl
