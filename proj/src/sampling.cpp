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

#include "rbl/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <string>

#include "rbl/concordance.hpp"
#include "rbl/error.hpp"

namespace rbl {

namespace {

void fill_random_row(std::vector<std::uint32_t>& flat, std::size_t n, ObjectId i, Rng& rng,
                     std::vector<std::uint32_t>& scratch) {
  scratch.resize(n - 1);
  std::iota(scratch.begin(), scratch.end(), 1u);
  rng.shuffle(std::span<std::uint32_t>(scratch));
  std::size_t next = 0;
  for (ObjectId j = 0; j < n; ++j) flat[i * n + j] = j == i ? 0 : scratch[next++];
}

}  // namespace

RankingTable random_ranking_table(std::size_t n, Rng& rng) {
  std::vector<std::uint32_t> flat(n * n, 0);
  std::vector<std::uint32_t> scratch;
  for (ObjectId i = 0; i < n; ++i) fill_random_row(flat, n, i, rng, scratch);
  return RankingTable(n, std::move(flat));
}

RankingTable random_ranking_table(std::size_t n, RngSeed seed) {
  Rng rng(seed);
  return random_ranking_table(n, rng);
}

RejectionResult rejection_sample(std::size_t n, Rng& rng, std::uint64_t max_attempts) {
  for (std::uint64_t attempt = 1; attempt <= max_attempts; ++attempt) {
    RankingTable t = random_ranking_table(n, rng);
    if (is_3_concordant(t)) return {std::move(t), attempt};
  }
  throw Error(ErrorCode::AttemptsExhausted,
              "no 3-concordant table within " + std::to_string(max_attempts) + " attempts");
}

RejectionResult rejection_sample(std::size_t n, RngSeed seed, std::uint64_t max_attempts) {
  Rng rng(seed);
  return rejection_sample(n, rng, max_attempts);
}

AcceptanceEstimate estimate_acceptance(std::size_t n, std::uint64_t attempts, RngSeed seed) {
  std::uint64_t accepted = 0;
  const auto shards = static_cast<std::int64_t>(kSampleShards);
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : accepted)
  for (std::int64_t s = 0; s < shards; ++s) {
    const auto shard = static_cast<std::uint64_t>(s);
    const std::uint64_t share =
        attempts / kSampleShards + (shard < attempts % kSampleShards ? 1 : 0);
    Rng rng(RngSeed{mix_seed(seed.value, shard)});
    for (std::uint64_t a = 0; a < share; ++a) {
      accepted += is_3_concordant(random_ranking_table(n, rng));
    }
  }
  AcceptanceEstimate e;
  e.attempts = attempts;
  e.accepted = accepted;
  if (attempts == 0) return e;
  const double m = static_cast<double>(attempts);
  const double p = static_cast<double>(accepted) / m;
  const double z = 1.959963984540054;
  const double denom = 1.0 + z * z / m;
  const double centre = (p + z * z / (2.0 * m)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / m + z * z / (4.0 * m * m)) / denom;
  e.rate = p;
  e.ci_low = std::max(0.0, centre - half);
  e.ci_high = std::min(1.0, centre + half);
  e.mean_attempts = accepted ? m / static_cast<double>(accepted)
                             : std::numeric_limits<double>::infinity();
  return e;
}

std::vector<RankingTable> sample_3_concordant(std::size_t n, std::size_t count, RngSeed seed,
                                              std::uint64_t max_attempts) {
  std::vector<RankingTable> out(count);
  // Exceptions may not leave a parallel region; keep the lowest shard's.
  std::vector<std::exception_ptr> failures(kSampleShards);
  const auto shards = static_cast<std::int64_t>(kSampleShards);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t s = 0; s < shards; ++s) {
    try {
      Rng rng(RngSeed{mix_seed(seed.value, static_cast<std::uint64_t>(s))});
      for (std::size_t idx = static_cast<std::size_t>(s); idx < count; idx += kSampleShards) {
        out[idx] = rejection_sample(n, rng, max_attempts).table;
      }
    } catch (...) {
      failures[static_cast<std::size_t>(s)] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return out;
}

namespace {

struct MoveObjects {
  ObjectId j;
  ObjectId k;
};

MoveObjects move_objects(const RankingTable& t, TranspositionMove move) {
  return {t.object_at_rank(move.row, move.rank), t.object_at_rank(move.row, move.rank + 1)};
}

}  // namespace

bool transposition_blocked(const RankingTable& t, TranspositionMove move) {
  const auto [j, k] = move_objects(t, move);
  const ObjectId i = move.row;
  return t.rank(j, i) < t.rank(j, k) && t.rank(k, j) < t.rank(k, i);
}

bool consecutive_transposition_step(WalkState& state, TranspositionMove move) {
  ++state.steps_taken;
  if (transposition_blocked(state.table, move)) {
    ++state.rejections;
    return false;
  }
  const auto [j, k] = move_objects(state.table, move);
  state.table.swap_ranks(move.row, j, k);
  return true;
}

bool consecutive_transposition_step(WalkState& state, Rng& rng) {
  const std::size_t n = state.table.size();
  if (n < 3) {
    ++state.steps_taken;
    return false;
  }
  TranspositionMove move;
  move.row = static_cast<ObjectId>(rng.below(n));
  move.rank = static_cast<std::uint32_t>(1 + rng.below(n - 2));
  return consecutive_transposition_step(state, move);
}

RankingTable table_from_pair_order(std::size_t n, std::span<const Link> order) {
  if (order.size() != n * (n - 1) / 2) {
    throw Error(ErrorCode::SizeMismatch, "pair order must list all " +
                                             std::to_string(n * (n - 1) / 2) + " pairs");
  }
  std::vector<std::size_t> position(n * n, SIZE_MAX);
  for (std::size_t p = 0; p < order.size(); ++p) {
    const Link l = order[p];
    if (l.lo >= l.hi || l.hi >= n || position[l.lo * n + l.hi] != SIZE_MAX) {
      throw Error(ErrorCode::MalformedTable, "pair order repeats or misnames a pair");
    }
    position[l.lo * n + l.hi] = position[l.hi * n + l.lo] = p;
  }
  std::vector<std::uint32_t> flat(n * n, 0);
  std::vector<ObjectId> others;
  for (ObjectId i = 0; i < n; ++i) {
    others.clear();
    for (ObjectId j = 0; j < n; ++j) {
      if (j != i) others.push_back(j);
    }
    std::sort(others.begin(), others.end(),
              [&](ObjectId a, ObjectId b) { return position[i * n + a] < position[i * n + b]; });
    for (std::size_t r = 0; r < others.size(); ++r) {
      flat[i * n + others[r]] = static_cast<std::uint32_t>(r + 1);
    }
  }
  return RankingTable(n, std::move(flat));
}

RankingTable random_concordant_init(std::size_t n, RngSeed seed) {
  LinkSet pairs;
  for (ObjectId a = 0; a < n; ++a) {
    for (ObjectId b = a + 1; b < n; ++b) pairs.push_back({a, b});
  }
  Rng rng(seed);
  rng.shuffle(std::span<Link>(pairs));
  return table_from_pair_order(n, pairs);
}

WalkResult random_walk(std::size_t n, std::uint64_t steps, RngSeed seed, bool audit) {
  WalkResult result;
  result.state.table = random_concordant_init(n, RngSeed{mix_seed(seed.value, 0)});
  Rng rng(RngSeed{mix_seed(seed.value, 1)});
  for (std::uint64_t s = 0; s < steps; ++s) {
    const bool changed = consecutive_transposition_step(result.state, rng);
    if (audit) {
      ++result.audited;
      if (changed && !is_3_concordant(result.state.table)) ++result.audit_failures;
    }
  }
  return result;
}

std::array<std::vector<Link>, 3> four_loops(ObjectId a, ObjectId b, ObjectId c, ObjectId d) {
  return {{
      {Link::of(a, b), Link::of(b, c), Link::of(c, d), Link::of(d, a)},
      {Link::of(a, b), Link::of(b, d), Link::of(d, c), Link::of(c, a)},
      {Link::of(a, c), Link::of(c, b), Link::of(b, d), Link::of(d, a)},
  }};
}

namespace {

std::uint64_t factorial(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

void check_enumerable(std::size_t n) {
  if (n > kMaxEnumerateN) {
    throw Error(ErrorCode::NTooLarge,
                "exhaustive enumeration is limited to n <= " + std::to_string(kMaxEnumerateN));
  }
}

// Depth-first over rows; after fixing row c every triple a < b < c is
// checked, so a partial table is abandoned at its first cyclic triple.
class RowEnumerator {
 public:
  explicit RowEnumerator(std::size_t n) : n_(n), flat_(n * n, 0) {
    std::vector<std::uint32_t> ranks(n > 0 ? n - 1 : 0);
    std::iota(ranks.begin(), ranks.end(), 1u);
    do {
      perms_.push_back(ranks);
    } while (std::next_permutation(ranks.begin(), ranks.end()));
  }

  std::size_t row_choices() const { return perms_.size(); }

  template <class Visit>
  void run(std::size_t first_choice, Visit&& visit) {
    set_row(0, first_choice);
    descend(1, visit);
  }

 private:
  void set_row(ObjectId i, std::size_t choice) {
    std::size_t next = 0;
    for (ObjectId j = 0; j < n_; ++j) flat_[i * n_ + j] = j == i ? 0 : perms_[choice][next++];
  }

  bool cyclic(ObjectId i, ObjectId j, ObjectId k) const {
    auto r = [&](ObjectId x, ObjectId y) { return flat_[x * n_ + y]; };
    const bool a = r(i, j) < r(i, k);
    const bool b = r(j, k) < r(j, i);
    const bool c = r(k, i) < r(k, j);
    return a == b && b == c;
  }

  template <class Visit>
  void descend(ObjectId row, Visit& visit) {
    if (row == n_) {
      visit(flat_);
      return;
    }
    for (std::size_t choice = 0; choice < perms_.size(); ++choice) {
      set_row(row, choice);
      bool ok = true;
      for (ObjectId a = 0; a < row && ok; ++a) {
        for (ObjectId b = a + 1; b < row && ok; ++b) ok = !cyclic(a, b, row);
      }
      if (ok) descend(row + 1, visit);
    }
  }

  std::size_t n_;
  std::vector<std::uint32_t> flat_;
  std::vector<std::vector<std::uint32_t>> perms_;
};

}  // namespace

void for_each_3_concordant(std::size_t n,
                           const std::function<void(const RankingTable&)>& visit) {
  check_enumerable(n);
  if (n == 0) return;
  RowEnumerator e(n);
  for (std::size_t c = 0; c < e.row_choices(); ++c) {
    e.run(c, [&](const std::vector<std::uint32_t>& flat) { visit(RankingTable(n, flat)); });
  }
}

EnumerationResult enumerate_3_concordant(std::size_t n) {
  check_enumerable(n);
  EnumerationResult result;
  result.n = n;
  if (n == 0) return result;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= factorial(n - 1);
  result.total = total;

  const auto choices = static_cast<std::int64_t>(RowEnumerator(n).row_choices());
  std::uint64_t concordant = 0, non4 = 0, loop0 = 0, loop1 = 0, loop2 = 0;
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : concordant, non4, loop0, loop1, loop2)
  for (std::int64_t c = 0; c < choices; ++c) {
    RowEnumerator e(n);
    e.run(static_cast<std::size_t>(c), [&](const std::vector<std::uint32_t>& flat) {
      ++concordant;
      if (n < 4) return;
      const RankingTable t(n, flat);
      if (!k_loop_check(t, 4)) ++non4;
      const auto loops = four_loops(0, 1, 2, 3);
      loop0 += loop_is_cyclic(t, loops[0]);
      loop1 += loop_is_cyclic(t, loops[1]);
      loop2 += loop_is_cyclic(t, loops[2]);
    });
  }
  result.concordant_3 = concordant;
  result.non_4_concordant = non4;
  result.loop_cyclic = {loop0, loop1, loop2};
  return result;
}

namespace {

void check_four_objects(const RankingTable& t) {
  if (t.size() < 4) {
    throw Error(ErrorCode::SizeMismatch, "4-loops need at least 4 objects");
  }
}

}  // namespace

double four_cycle_rate(const RankingTable& t, std::size_t samples, Rng& rng) {
  check_four_objects(t);
  if (samples == 0) return 0.0;
  const std::size_t n = t.size();
  std::vector<ObjectId> objects(n);
  std::uint64_t cyclic = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    std::iota(objects.begin(), objects.end(), ObjectId{0});
    // partial Fisher-Yates: the first four slots become a uniform 4-subset
    for (std::size_t p = 0; p < 4; ++p) {
      std::swap(objects[p], objects[p + rng.below(n - p)]);
    }
    std::array<ObjectId, 4> q{objects[0], objects[1], objects[2], objects[3]};
    std::sort(q.begin(), q.end());
    cyclic += loop_is_cyclic(t, four_loops(q[0], q[1], q[2], q[3])[0]);
  }
  return static_cast<double>(cyclic) / static_cast<double>(samples);
}

double four_cycle_rate(const RankingTable& t, std::size_t samples, RngSeed seed) {
  Rng rng(seed);
  return four_cycle_rate(t, samples, rng);
}

std::uint64_t count_cyclic_canonical_loops(const RankingTable& t) {
  check_four_objects(t);
  const auto n = static_cast<ObjectId>(t.size());
  std::uint64_t count = 0;
  for (ObjectId a = 0; a < n; ++a) {
    for (ObjectId b = a + 1; b < n; ++b) {
      for (ObjectId c = b + 1; c < n; ++c) {
        for (ObjectId d = c + 1; d < n; ++d) {
          count += loop_is_cyclic(t, four_loops(a, b, c, d)[0]);
        }
      }
    }
  }
  return count;
}

std::uint64_t count_extensions(const RankingTable& t) {
  const std::size_t n = t.size();
  check_enumerable(n);
  if (!is_3_concordant(t)) {
    throw Error(ErrorCode::Not3Concordant, "count_extensions needs a 3-concordant table");
  }
  const std::size_t m = n + 1;
  const auto fresh = static_cast<ObjectId>(n);
  std::vector<std::uint32_t> flat(m * m, 0);
  auto r = [&](ObjectId x, ObjectId y) { return flat[x * m + y]; };
  auto cyclic = [&](ObjectId i, ObjectId j, ObjectId k) {
    const bool a = r(i, j) < r(i, k);
    const bool b = r(j, k) < r(j, i);
    const bool c = r(k, i) < r(k, j);
    return a == b && b == c;
  };

  std::vector<std::vector<std::uint32_t>> new_rows;
  {
    std::vector<std::uint32_t> ranks(n);
    std::iota(ranks.begin(), ranks.end(), 1u);
    do {
      new_rows.push_back(ranks);
    } while (std::next_permutation(ranks.begin(), ranks.end()));
  }

  // Odometer over insertion ranks p_i in 1..n for each old row.
  std::vector<std::uint32_t> insert_at(n, 1);
  std::uint64_t count = 0;
  while (true) {
    for (ObjectId i = 0; i < n; ++i) {
      for (ObjectId j = 0; j < n; ++j) {
        const std::uint32_t old = t.rank(i, j);
        flat[i * m + j] = (j != i && old >= insert_at[i]) ? old + 1 : old;
      }
      flat[i * m + fresh] = insert_at[i];
    }
    for (const auto& row : new_rows) {
      for (ObjectId j = 0; j < n; ++j) flat[fresh * m + j] = row[j];
      bool ok = true;
      for (ObjectId a = 0; a < n && ok; ++a) {
        for (ObjectId b = a + 1; b < n && ok; ++b) ok = !cyclic(a, b, fresh);
      }
      count += ok;
    }
    std::size_t digit = 0;
    while (digit < n && insert_at[digit] == n) insert_at[digit++] = 1;
    if (digit == n) break;
    ++insert_at[digit];
  }
  return count;
}

}  // namespace rbl
