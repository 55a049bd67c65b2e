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
#include <functional>
#include <span>
#include <vector>

#include "rbl/neighbor_graphs.hpp"
#include "rbl/ranking.hpp"
#include "rbl/rng.hpp"

namespace rbl {

/// Each row an independent uniform permutation of the other objects.
RankingTable random_ranking_table(std::size_t n, Rng& rng);
RankingTable random_ranking_table(std::size_t n, RngSeed seed);

struct RejectionResult {
  RankingTable table;
  std::uint64_t attempts = 0;
};

/// Draws uniform tables until one is 3-concordant. The accepted table is
/// uniform over 3-concordant systems. Throws AttemptsExhausted.
RejectionResult rejection_sample(std::size_t n, Rng& rng, std::uint64_t max_attempts);
RejectionResult rejection_sample(std::size_t n, RngSeed seed, std::uint64_t max_attempts);

struct AcceptanceEstimate {
  std::uint64_t attempts = 0;
  std::uint64_t accepted = 0;
  double rate = 0.0;
  double ci_low = 0.0;  // 95% Wilson interval
  double ci_high = 0.0;
  double mean_attempts = 0.0;  // 1 / rate, infinite when nothing is accepted
};

inline constexpr std::size_t kSampleShards = 64;

/// Acceptance rate of uniform tables. Work is split over a fixed number of
/// shards with derived seeds, so the result does not depend on threads.
AcceptanceEstimate estimate_acceptance(std::size_t n, std::uint64_t attempts, RngSeed seed);

/// `count` independent rejection samples, sharded like estimate_acceptance.
std::vector<RankingTable> sample_3_concordant(std::size_t n, std::size_t count, RngSeed seed,
                                              std::uint64_t max_attempts);

struct WalkState {
  RankingTable table;
  std::uint64_t steps_taken = 0;
  std::uint64_t rejections = 0;
};

/// Move (i, s): swap the objects ranked s and s + 1 by row i, 1 <= s <= n-2.
struct TranspositionMove {
  ObjectId row = 0;
  std::uint32_t rank = 1;
};

/// True when swapping would make the voter triangle {i, j, k} cyclic, that
/// is r_j(i) < r_j(k) and r_k(j) < r_k(i).
bool transposition_blocked(const RankingTable& t, TranspositionMove move);

/// Applies the move unless blocked; returns whether the table changed.
bool consecutive_transposition_step(WalkState& state, TranspositionMove move);
/// Uniform move; a no-op step when n < 3.
bool consecutive_transposition_step(WalkState& state, Rng& rng);

/// Row i ranks j by the position of {i, j} in `order` (closest first).
/// `order` must list every pair of 0..n-1 exactly once.
RankingTable table_from_pair_order(std::size_t n, std::span<const Link> order);

/// Table induced by a uniform random order of all pairs; always concordant.
RankingTable random_concordant_init(std::size_t n, RngSeed seed);

struct WalkResult {
  WalkState state;
  std::uint64_t audited = 0;
  std::uint64_t audit_failures = 0;
};

/// Concordant start followed by `steps` random moves. With `audit`, every
/// state is re-checked for 3-concordance.
WalkResult random_walk(std::size_t n, std::uint64_t steps, RngSeed seed, bool audit = false);

inline constexpr std::size_t kMaxEnumerateN = 5;

struct EnumerationResult {
  std::size_t n = 0;
  std::uint64_t total = 0;
  std::uint64_t concordant_3 = 0;
  std::uint64_t non_4_concordant = 0;
  /// Systems in which each 4-loop on objects 0..3 is cyclic:
  /// (01,12,23,30), (01,13,32,20), (02,21,13,30).
  std::array<std::uint64_t, 3> loop_cyclic{};
};

/// The three 4-loops through all of objects a < b < c < d, canonical first.
std::array<std::vector<Link>, 3> four_loops(ObjectId a, ObjectId b, ObjectId c, ObjectId d);

/// Exhaustive count over all ((n-1)!)^n tables with pruning on cyclic
/// triples. Throws NTooLarge for n > 5.
EnumerationResult enumerate_3_concordant(std::size_t n);

/// Calls `visit` on every 3-concordant table of size n, in lexicographic
/// row order. Throws NTooLarge for n > 5.
void for_each_3_concordant(std::size_t n, const std::function<void(const RankingTable&)>& visit);

/// Fraction of `samples` uniform 4-subsets, drawn with replacement, whose
/// canonical loop (ab, bc, cd, da) is a directed cycle either way.
double four_cycle_rate(const RankingTable& t, std::size_t samples, Rng& rng);
double four_cycle_rate(const RankingTable& t, std::size_t samples, RngSeed seed);

/// Exact count of 4-subsets whose canonical loop is cyclic.
std::uint64_t count_cyclic_canonical_loops(const RankingTable& t);

/// Number of 3-concordant (n+1)-object tables whose restriction to the
/// first n objects is `t`. Throws Not3Concordant, NTooLarge for n > 5.
std::uint64_t count_extensions(const RankingTable& t);

}  // namespace rbl
