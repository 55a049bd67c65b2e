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

#include <doctest.h>

#include <map>
#include <queue>

#include "rbl/concordance.hpp"
#include "rbl/error.hpp"
#include "rbl/linkage.hpp"
#include "support.hpp"

using namespace rbl;
using rbl::testing::ten_objects;

namespace {

OutOrderedDigraph full_ten() { return from_ranking_table(ten_objects(), 9); }

// ab is the source: b before c at a, a before c at b, b before a at c.
OutOrderedDigraph single_triangle() { return OutOrderedDigraph(3, {{1, 2}, {0, 2}, {1, 0}}); }

// BFS components with blocks keyed by minimum member.
std::vector<std::uint32_t> bfs_labels(std::size_t n, const LinkSet& links) {
  std::vector<std::vector<ObjectId>> adj(n);
  for (const Link& l : links) {
    adj[l.lo].push_back(l.hi);
    adj[l.hi].push_back(l.lo);
  }
  std::vector<std::uint32_t> label(n, UINT32_MAX);
  for (ObjectId s = 0; s < n; ++s) {
    if (label[s] != UINT32_MAX) continue;
    std::queue<ObjectId> q;
    q.push(s);
    label[s] = s;
    while (!q.empty()) {
      const ObjectId v = q.front();
      q.pop();
      for (ObjectId w : adj[v]) {
        if (label[w] == UINT32_MAX) {
          label[w] = s;
          q.push(w);
        }
      }
    }
  }
  return label;
}

std::vector<OutOrderedDigraph> concordant_instances(int count, std::uint64_t seed) {
  Rng rng(RngSeed{seed});
  std::vector<OutOrderedDigraph> out;
  for (int i = 0; i < count; ++i) {
    const std::size_t n = 5 + rng.below(36);
    const std::size_t k = 1 + rng.below(std::min<std::size_t>(8, n - 1));
    const RankingTable t =
        i % 2 == 0 ? rbl::testing::metric_table(n, rng) : rbl::testing::walked_table(n, rng);
    out.push_back(from_ranking_table(t, k));
  }
  return out;
}

bool refines_naive(const Partition& p, const Partition& q) {
  for (ObjectId x = 0; x < p.n; ++x) {
    for (ObjectId y = 0; y < p.n; ++y) {
      if (p.block_of[x] == p.block_of[y] && q.block_of[x] != q.block_of[y]) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("first_element_is_source on the ten-object system") {
  const auto d = full_ten();
  CHECK(first_element_is_source(d, 0, 6, 9));
  CHECK_FALSE(first_element_is_source(d, 0, 5, 6));
  // y outside both friend lists: both implications are vacuous
  const OutOrderedDigraph sparse(3, {{1}, {0}, {0, 1}});
  CHECK(first_element_is_source(sparse, 0, 1, 2));
}

TEST_CASE("pertinent witnesses") {
  const auto d = full_ten();
  const NeighborGraph g = undirected_neighbor_graph(d);
  for (ObjectId x = 0; x < 10; ++x) {
    for (ObjectId z = x + 1; z < 10; ++z) CHECK(pertinent_witnesses(d, g, x, z).size() == 8);
  }
  // 2 is adjacent to 0 and 1 (they list it) but lists neither of them
  const OutOrderedDigraph excluded(4, {{1, 2}, {0, 2}, {3}, {2}});
  const NeighborGraph ge = undirected_neighbor_graph(excluded);
  CHECK(pertinent_witnesses(excluded, ge, 0, 1).empty());
}

TEST_CASE("property: pertinent witnesses equal an O(n) scan") {
  Rng rng(RngSeed{31});
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 3 + rng.below(30);
    const auto d = rbl::testing::random_lists(n, 1 + rng.below(8), rng);
    const NeighborGraph g = undirected_neighbor_graph(d);
    for (const Link& e : g.edges()) {
      std::vector<ObjectId> expected;
      for (ObjectId y = 0; y < n; ++y) {
        if (y == e.lo || y == e.hi) continue;
        const bool adj_x = d.is_friend(y, e.lo) || d.is_friend(e.lo, y);
        const bool adj_z = d.is_friend(y, e.hi) || d.is_friend(e.hi, y);
        if (adj_x && adj_z && (d.is_friend(y, e.lo) || d.is_friend(y, e.hi))) {
          expected.push_back(y);
        }
      }
      CHECK(pertinent_witnesses(d, g, e.lo, e.hi) == expected);
    }
  }
}

TEST_CASE("compute_linkage golden values") {
  const LinkageGraph lg = compute_linkage(full_ten());
  CHECK(lg.links.size() == 45);
  CHECK(lg.sigma({0, 6}) == 8u);
  CHECK(lg.sigma({4, 8}) == 8u);
  CHECK(lg.max_sigma() == 8);

  const LinkageGraph pair = compute_linkage(OutOrderedDigraph(2, {{1}, {0}}));
  CHECK(pair.links == LinkSet{{0, 1}});
  CHECK(pair.in_sway == std::vector<std::uint64_t>{0});

  const LinkageGraph tri = compute_linkage(single_triangle(), {true, 1});
  CHECK(tri.sigma({0, 1}) == 1u);
  CHECK(tri.sigma({0, 2}) == 0u);
  CHECK(tri.sigma({1, 2}) == 0u);
  CHECK(tri.tau_of({0, 1}) == 0u);
  CHECK(tri.tau_of({0, 2}) == 1u);
  CHECK(tri.tau_of({1, 2}) == 1u);

  CHECK(compute_linkage(OutOrderedDigraph(0, {})).links.empty());
  CHECK(in_sway_bruteforce(OutOrderedDigraph(0, {})).links.empty());
}

TEST_CASE("property: parallel kernel equals the brute-force oracle") {
  // random friend lists, with no concordance assumed: sigma must agree
  Rng rng(RngSeed{32});
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + rng.below(38);
    const auto d = rbl::testing::random_lists(n, 1 + rng.below(8), rng);
    const LinkageGraph fast = compute_linkage(d);
    const LinkageGraph slow = in_sway_bruteforce(d);
    CHECK(fast.links == slow.links);
    CHECK(fast.in_sway == slow.in_sway);
  }
  // on 3-concordant instances tau agrees as well
  for (const auto& d : concordant_instances(60, 33)) {
    const LinkageGraph fast = compute_linkage(d, {true, 0});
    const LinkageGraph slow = in_sway_bruteforce(d);
    CHECK(fast.in_sway == slow.in_sway);
    CHECK(fast.knn_edges == slow.knn_edges);
    CHECK(fast.tau == slow.tau);
  }
}

TEST_CASE("property: results do not depend on thread count") {
  for (const auto& d : concordant_instances(20, 34)) {
    const LinkageGraph serial = compute_linkage_serial(d, true);
    for (int threads : {1, 2, 3, 8}) {
      CHECK(compute_linkage(d, {true, threads}) == serial);
    }
  }
}

TEST_CASE("property: structural lemmas on 3-concordant instances") {
  for (const auto& d : concordant_instances(60, 35)) {
    const auto census = pertinent_census(d);
    CHECK(census.pertinent <= d.size() * d.k_bound() * d.k_bound());
    CHECK(census.without_mutual_pair == 0);
    CHECK(census.off_link_sources == 0);
    CHECK(census.cyclic == 0);
    const LinkageGraph lg = compute_linkage(d, {true, 0});
    for (std::size_t i = 0; i < lg.links.size(); ++i) {
      const auto it = census.containing.find(lg.links[i]);
      const std::uint64_t containing = it == census.containing.end() ? 0 : it->second;
      CHECK(lg.in_sway[i] + *lg.tau_of(lg.links[i]) == containing);
    }
  }
}

TEST_CASE("property: rank-equivalent digraphs have equal linkage") {
  Rng rng(RngSeed{36});
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 5 + rng.below(30);
    auto arcs = rbl::testing::random_arcs(n, 6, rng);
    const auto d = from_weighted_arcs(arcs, n);
    for (auto& a : arcs) a.weight = std::exp(a.weight) + a.source;
    const auto e = from_weighted_arcs(arcs, n);
    REQUIRE(check_rank_equivalent(d, e));
    CHECK(compute_linkage(d, {true, 0}) == compute_linkage(e, {true, 0}));
  }
}

TEST_CASE("weighted linkage heuristics") {
  const auto d = single_triangle();
  const LinkageGraph lg = compute_linkage(d, {true, 1});
  const auto proportion = weighted_linkage(d, lg, WeightHeuristic::Proportion);
  const auto reciprocal = weighted_linkage(d, lg, WeightHeuristic::Reciprocal);
  // links are {0,1}, {0,2}, {1,2}
  CHECK(proportion[0] == doctest::Approx(1.0));
  CHECK(proportion[1] == doctest::Approx(0.0));
  // tau({0,2}) = tau({1,2}) = 1, so the increment is 1 / (2 + 1)
  CHECK(reciprocal[0] == doctest::Approx(1.0 / 3.0));
  CHECK(reciprocal[1] == doctest::Approx(0.0));

  // a link in no pertinent simplex scores 0
  const OutOrderedDigraph lonely(2, {{1}, {0}});
  const LinkageGraph lo = compute_linkage(lonely, {true, 1});
  CHECK(weighted_linkage(lonely, lo, WeightHeuristic::Proportion)[0] == 0.0);

  const LinkageGraph no_tau = compute_linkage(d);
  CHECK_THROWS_AS(weighted_linkage(d, no_tau, WeightHeuristic::Proportion), Error);
}

TEST_CASE("thresholds, components and the critical in-sway") {
  const LinkageGraph lg = compute_linkage(full_ten());
  CHECK(threshold_links(lg, 0) == lg.links);
  CHECK(threshold_links(lg, lg.max_sigma() + 1).empty());
  CHECK(threshold_links(lg, 6).size() < 10);
  CHECK(critical_in_sway(lg, 10) == 5u);

  const Partition p6 = components(10, threshold_links(lg, 6));
  CHECK(p6.block_sizes() == std::vector<std::size_t>{1, 1, 3, 5});

  CHECK(components(4, {}).blocks.size() == 4);
  const LinkSet path{{0, 1}, {1, 2}, {2, 3}};
  CHECK(components(4, path).blocks.size() == 1);

  // fewer than n links in total
  LinkageGraph few;
  few.n = 5;
  few.links = {{0, 1}, {1, 2}};
  few.in_sway = {4, 4};
  CHECK_FALSE(critical_in_sway(few, 5));
}

TEST_CASE("property: components and critical in-sway match scan oracles") {
  Rng rng(RngSeed{37});
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 3 + rng.below(38);
    const auto d = rbl::testing::random_lists(n, 1 + rng.below(8), rng);
    const LinkageGraph lg = compute_linkage(d);
    for (std::uint64_t t = 0; t <= lg.max_sigma() + 1; ++t) {
      const LinkSet lt = threshold_links(lg, t);
      CHECK(components(n, lt) == partition_from_labels(bfs_labels(n, lt)));
    }
    std::optional<std::uint64_t> expected;
    for (std::uint64_t t = 1; t <= lg.max_sigma() + 1; ++t) {
      std::size_t count = 0;
      for (auto s : lg.in_sway) count += s >= t;
      if (count >= n) expected = t;
    }
    CHECK(critical_in_sway(lg, n) == expected);
  }
}

TEST_CASE("hierarchy") {
  const LinkageGraph lg = compute_linkage(full_ten());
  const Hierarchy h = hierarchy(lg, 10);
  CHECK(h.critical == 5u);
  CHECK(h.partition_at(6).blocks.size() == 4);
  CHECK(h.partition_at(6).block_sizes() == std::vector<std::size_t>{1, 1, 3, 5});
  CHECK(h.partition_at(0).blocks.size() == 1);
  CHECK(h.partition_at(100).blocks.size() == 10);

  // every sigma equal: one block up to that value, singletons beyond
  LinkageGraph flat;
  flat.n = 3;
  flat.links = {{0, 1}, {1, 2}};
  flat.in_sway = {2, 2};
  const Hierarchy hf = hierarchy(flat, 3);
  std::vector<Partition> distinct;
  for (std::uint64_t t = 0; t <= 3; ++t) {
    if (distinct.empty() || !(distinct.back() == hf.partition_at(t))) {
      distinct.push_back(hf.partition_at(t));
    }
  }
  CHECK(distinct.size() == 2);
}

TEST_CASE("property: hierarchy levels refine and match direct components") {
  std::vector<OutOrderedDigraph> instances = concordant_instances(40, 38);
  Rng rng(RngSeed{39});
  for (int i = 0; i < 40; ++i) instances.push_back(rbl::testing::random_lists(30, 6, rng));
  for (const auto& d : instances) {
    const LinkageGraph lg = compute_linkage(d);
    const Hierarchy h = hierarchy(lg, d.size());
    for (std::uint64_t t = 0; t <= lg.max_sigma() + 1; ++t) {
      CHECK(h.partition_at(t) == components(d.size(), threshold_links(lg, t)));
      CHECK(refines_naive(h.partition_at(t + 1), h.partition_at(t)));
    }
  }
}
