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

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "rbl/neighbor_graphs.hpp"
#include "rbl/ranking.hpp"

namespace rbl {

using Triple = std::array<ObjectId, 3>;

struct ConcordanceReport {
  bool is_ranking_system = true;
  bool is_3_concordant = true;
  /// Largest k in 3..5 for which all loops of <= k 0-cells are acyclic
  /// (2 when a voter triangle is cyclic); absent when not evaluated.
  std::optional<int> k_concordant_up_to;
  std::uint64_t cyclic_count = 0;
  std::uint64_t pertinent_count = 0;  // digraph checks only
  std::vector<Triple> cyclic_voter_triangles;  // sample, lexicographic
  std::vector<std::vector<Link>> cyclic_loops;  // sample
};

/// True when the voter triangle on {i, j, k} is a directed 3-cycle.
inline bool voter_triangle_cyclic(const RankingTable& t, ObjectId i, ObjectId j, ObjectId k) {
  const bool a = t.rank(i, j) < t.rank(i, k);
  const bool b = t.rank(j, k) < t.rank(j, i);
  const bool c = t.rank(k, i) < t.rank(k, j);
  return a == b && b == c;
}

/// Early-exit scan over all triples; the hot path for samplers.
bool is_3_concordant(const RankingTable& t);

/// Full scan (parallel over the first object) with a sorted sample of
/// cyclic triangles; evaluates k-loop concordance when n is small enough.
ConcordanceReport is_3_concordant_table(const RankingTable& t, std::size_t sample_limit = 10);

/// Serial reference count of cyclic voter triangles.
std::uint64_t count_cyclic_voter_triangles_serial(const RankingTable& t);
std::uint64_t count_cyclic_voter_triangles(const RankingTable& t);

inline constexpr std::size_t kMaxConcordantN = 64;
/// Acyclicity of the whole line-graph orientation. Refuses n > 64.
bool is_concordant_table(const RankingTable& t);

inline constexpr int kMaxLoopK = 5;
inline constexpr std::size_t kMaxLoopN = 16;
/// True iff no loop of j distinct 0-cells, 3 <= j <= k, is a directed cycle.
bool k_loop_check(const RankingTable& t, int k);
/// Up to `limit` directed cycles of length <= k, each as its 0-cell sequence.
std::vector<std::vector<Link>> cyclic_loops(const RankingTable& t, int k, std::size_t limit);

/// Directed-cycle test on a given loop of 0-cells, in either direction.
bool loop_is_cyclic(const RankingTable& t, const std::vector<Link>& loop);

/// Enumerates Gamma-pertinent 2-simplices under the induced orientation.
ConcordanceReport is_3_concordant_ood(const OutOrderedDigraph& d, std::size_t sample_limit = 10);

/// Rows of a table over S u S' owned by one party; absent rows are unknown.
struct PartialTable {
  std::size_t n = 0;
  std::vector<bool> owned;
  std::vector<std::uint32_t> flat;  // n * n, rows valid where owned

  static PartialTable from_table(const RankingTable& t, const std::vector<bool>& owned);
  std::span<const std::uint32_t> row(ObjectId i) const { return {flat.data() + i * n, n}; }
};

/// Plain-text table where a row consisting of "-" is absent.
PartialTable read_partial_table(std::istream& in);

struct GlueResult {
  RankingTable table;
  ConcordanceReport report;
  /// Cyclic voter triangles by type: all in S, two from S, two from S',
  /// all in S'. Overlap objects count toward S when classifying.
  std::array<std::uint64_t, 4> cyclic_by_type{};
};

/// Glues two partial tables whose overlap rows agree exactly.
/// Throws OverlapRowMismatch, DimensionMismatch or MalformedTable.
GlueResult glue(const PartialTable& a, const PartialTable& b, std::size_t sample_limit = 10);

}  // namespace rbl
