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

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "rbl/error.hpp"
#include "rbl/ranking.hpp"
#include "support.hpp"

using namespace rbl;
using rbl::testing::ten_objects;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an rbl::Error");
  return ErrorCode::ParseError;
}

std::vector<ObjectId> list(const OutOrderedDigraph& d, ObjectId x) {
  auto f = d.friends(x);
  return {f.begin(), f.end()};
}

}  // namespace

TEST_CASE("label map is a bijection") {
  LabelMap m;
  CHECK(m.intern("alpha") == 0);
  CHECK(m.intern("beta") == 1);
  CHECK(m.intern("alpha") == 0);
  CHECK(m.size() == 2);
  CHECK(m.label(1) == "beta");
  CHECK(m.find("beta") == 1u);
  CHECK_FALSE(m.find("gamma"));
  const std::vector<ObjectId> kept{1};
  CHECK(m.subset(kept).label(0) == "beta");
}

TEST_CASE("ranking table validation") {
  CHECK_NOTHROW(RankingTable::from_rows({{0, 1}, {1, 0}}));
  CHECK(code_of([] { RankingTable::from_rows({{0, 1}, {0, 1}}); }) == ErrorCode::MalformedTable);
  CHECK(code_of([] { RankingTable::from_rows({{0, 1, 1}, {1, 0, 2}, {1, 2, 0}}); }) ==
        ErrorCode::MalformedTable);
  CHECK(code_of([] { RankingTable::from_rows({{0, 1}, {1}}); }) == ErrorCode::MalformedTable);
  try {
    RankingTable::from_rows({{0, 1, 2}, {1, 0, 2}, {1, 1, 0}});
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("row 2") != std::string::npos);
  }
}

TEST_CASE("ranking table text round trip and parse errors") {
  const RankingTable t = ten_objects();
  std::stringstream s;
  write_ranking_table(s, t);
  CHECK(read_ranking_table(s) == t);

  std::istringstream bad("# comment\n3\n0 1 2\n1 0 x\n1 2 0\n");
  try {
    read_ranking_table(bad);
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
}

TEST_CASE("object_at_rank, swap_ranks and restriction") {
  RankingTable t = ten_objects();
  CHECK(t.object_at_rank(1, 1) == 6);
  t.swap_ranks(1, 6, 9);
  CHECK(t.rank(1, 6) == 2);
  CHECK(t.rank(1, 9) == 1);

  const std::vector<ObjectId> objects{0, 6, 9};
  const RankingTable r = ten_objects().restrict_to(objects);
  // row 0 ranks 6 (1) before 9 (2); row 9 ranks 6 (1) before 0 (7)
  CHECK(r.rank(0, 1) == 1);
  CHECK(r.rank(0, 2) == 2);
  CHECK(r.rank(2, 1) == 1);
  CHECK(r.rank(2, 0) == 2);
}

TEST_CASE("out-ordered digraph validation") {
  CHECK(code_of([] { OutOrderedDigraph(2, {{0}, {}}); }) == ErrorCode::InvalidDigraph);
  CHECK(code_of([] { OutOrderedDigraph(3, {{1, 1}, {}, {}}); }) == ErrorCode::InvalidDigraph);
  CHECK(code_of([] { OutOrderedDigraph(3, {{1, 2}, {}, {}}, 1); }) ==
        ErrorCode::InvalidDigraph);
  CHECK(code_of([] { OutOrderedDigraph(2, {{5}, {}}); }) == ErrorCode::InvalidDigraph);

  const OutOrderedDigraph d(4, {{2, 1, 3}, {0}, {}, {2}});
  CHECK(d.position(0, 2) == 0);
  CHECK(d.position(0, 3) == 2);
  CHECK(d.position(2, 0) == kNotFriend);
  CHECK(d.arc_count() == 5);
  CHECK(d.k_bound() == 3);
  const auto stats = friend_list_stats(d);
  CHECK(stats.min == 0);
  CHECK(stats.max == 3);
  CHECK(stats.mean == doctest::Approx(1.25));
}

TEST_CASE("from_weighted_arcs orders by decreasing weight") {
  const std::vector<WeightedArc> arcs{{0, 1, 5.0}, {0, 2, 3.0}};
  const auto d = from_weighted_arcs(arcs, 3);
  CHECK(list(d, 0) == std::vector<ObjectId>{1, 2});

  const std::vector<WeightedArc> reversed{{0, 1, 3.0}, {0, 2, 5.0}};
  CHECK(list(from_weighted_arcs(reversed, 3), 0) == std::vector<ObjectId>{2, 1});
}

TEST_CASE("from_weighted_arcs error taxonomy and opt-in policies") {
  const std::vector<WeightedArc> dup{{0, 1, 1.0}, {0, 1, 2.0}, {0, 2, 1.5}};
  CHECK(code_of([&] { from_weighted_arcs(dup, 3); }) == ErrorCode::DuplicateArc);
  ArcBuildOptions keep_max;
  keep_max.duplicates = DuplicatePolicy::KeepMax;
  CHECK(list(from_weighted_arcs(dup, 3, keep_max), 0) == std::vector<ObjectId>{1, 2});

  const std::vector<WeightedArc> tie{{0, 2, 1.0}, {0, 1, 1.0}};
  CHECK(code_of([&] { from_weighted_arcs(tie, 3); }) == ErrorCode::TiedWeights);
  ArcBuildOptions break_ties;
  break_ties.ties = TiePolicy::BreakByTarget;
  CHECK(list(from_weighted_arcs(tie, 3, break_ties), 0) == std::vector<ObjectId>{1, 2});

  // equal weights on different sources are not ties
  const std::vector<WeightedArc> fine{{0, 1, 1.0}, {1, 0, 1.0}};
  CHECK_NOTHROW(from_weighted_arcs(fine, 2));

  const std::vector<WeightedArc> self{{1, 1, 1.0}};
  CHECK(code_of([&] { from_weighted_arcs(self, 2); }) == ErrorCode::SelfLoop);
  const std::vector<WeightedArc> range{{0, 7, 1.0}};
  CHECK(code_of([&] { from_weighted_arcs(range, 2); }) == ErrorCode::OutOfRange);
  const std::vector<WeightedArc> nan{{0, 1, std::nan("")}};
  CHECK(code_of([&] { from_weighted_arcs(nan, 2); }) == ErrorCode::ParseError);
}

TEST_CASE("canonical -rank weights round trip") {
  Rng rng(RngSeed{11});
  for (int trial = 0; trial < 20; ++trial) {
    const auto d = rbl::testing::random_lists(12, 5, rng);
    const auto arcs = to_weighted_arcs(d);
    for (const auto& a : arcs) CHECK(a.weight == -static_cast<double>(d.position(a.source, a.target) + 1));
    CHECK(check_rank_equivalent(from_weighted_arcs(arcs, d.size()), d));
  }
}

TEST_CASE("property: per-source increasing transforms give identical digraphs") {
  Rng rng(RngSeed{12});
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 5 + rng.below(30);
    auto arcs = rbl::testing::random_arcs(n, 6, rng);
    const auto base = from_weighted_arcs(arcs, n);
    // a different increasing map per source: exp, affine with positive
    // slope, or cube
    for (auto& a : arcs) {
      switch (a.source % 3) {
        case 0: a.weight = std::exp(a.weight); break;
        case 1: a.weight = 3.0 * a.weight + 100.0; break;
        default: a.weight = a.weight * a.weight * a.weight; break;
      }
    }
    const auto transformed = from_weighted_arcs(arcs, n);
    CHECK(transformed == base);
    CHECK(check_rank_equivalent(transformed, base));
  }
}

TEST_CASE("from_ranking_table truncates by rank") {
  const RankingTable t = ten_objects();
  CHECK(list(from_ranking_table(t, 2), 1) == std::vector<ObjectId>{6, 9});
  CHECK(list(from_ranking_table(t, 1), 4) == std::vector<ObjectId>{8});
  CHECK(code_of([&] { from_ranking_table(t, 10); }) == ErrorCode::KTooLarge);

  // full truncation reads the ranks back exactly
  const auto full = from_ranking_table(t, 9);
  for (ObjectId x = 0; x < 10; ++x) {
    CHECK(full.friends(x).size() == 9);
    for (ObjectId y = 0; y < 10; ++y) {
      if (y != x) CHECK(full.position(x, y) + 1 == t.rank(x, y));
    }
  }
}

TEST_CASE("truncate keeps list prefixes") {
  const auto full = from_ranking_table(ten_objects(), 9);
  const auto d = truncate(full, 3);
  for (ObjectId x = 0; x < 10; ++x) {
    auto f = full.friends(x);
    CHECK(list(d, x) == std::vector<ObjectId>(f.begin(), f.begin() + 3));
  }
  CHECK(truncate(d, 7) == d);
}

TEST_CASE("transpose_mode") {
  const std::vector<WeightedArc> one{{0, 1, 2.5}};
  CHECK(transpose_mode(one) == std::vector<WeightedArc>{{1, 0, 2.5}});

  Rng rng(RngSeed{13});
  const auto arcs = rbl::testing::random_arcs(15, 4, rng);
  CHECK(transpose_mode(transpose_mode(arcs)) == arcs);
}

TEST_CASE("property: symmetric weights give the same whence and whither digraph") {
  Rng rng(RngSeed{14});
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 6 + rng.below(10);
    std::vector<WeightedArc> arcs;
    for (ObjectId x = 0; x < n; ++x) {
      for (ObjectId y = x + 1; y < n; ++y) {
        if (rng.below(2) == 0) continue;
        const double w = rng.unit();
        arcs.push_back({x, y, w});
        arcs.push_back({y, x, w});
      }
    }
    CHECK(from_weighted_arcs(transpose_mode(arcs), n) == from_weighted_arcs(arcs, n));
  }
}

TEST_CASE("check_rank_equivalent") {
  const OutOrderedDigraph a(3, {{1, 2}, {0}, {}});
  const OutOrderedDigraph swapped(3, {{2, 1}, {0}, {}});
  const OutOrderedDigraph bigger(4, {{1, 2}, {0}, {}, {}});
  CHECK(check_rank_equivalent(a, a));
  CHECK_FALSE(check_rank_equivalent(a, swapped));
  CHECK_FALSE(check_rank_equivalent(a, bigger));
}
