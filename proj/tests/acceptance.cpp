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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "rbl/concordance.hpp"
#include "rbl/functor_props.hpp"
#include "rbl/io.hpp"
#include "rbl/linkage.hpp"
#include "rbl/pipeline.hpp"
#include "rbl/sampling.hpp"
#include "support.hpp"

using namespace rbl;
using rbl::testing::ten_objects;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double s = seconds_since(start);
  const bool in_time = limit_s <= 0 || s < limit_s;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("[%s] %2d %s: %s (%.2f s%s)\n", pass ? "PASS" : "FAIL", id, name, o.detail.c_str(),
              s, in_time ? "" : ", over time limit");
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Preferential attachment: each new object joins m distinct earlier
// objects picked proportionally to degree; every edge gets a random
// weight in each direction.
std::vector<WeightedArc> preferential_attachment(std::size_t n, std::size_t m, Rng& rng) {
  std::vector<ObjectId> ends;
  std::vector<WeightedArc> arcs;
  arcs.reserve(4 * n * m);
  auto add = [&](ObjectId a, ObjectId b) {
    arcs.push_back({a, b, rng.unit()});
    arcs.push_back({b, a, rng.unit()});
    ends.push_back(a);
    ends.push_back(b);
  };
  for (ObjectId a = 0; a <= m; ++a) {
    for (ObjectId b = a + 1; b <= m; ++b) add(a, b);
  }
  std::vector<ObjectId> picked;
  for (auto x = static_cast<ObjectId>(m + 1); x < n; ++x) {
    picked.clear();
    while (picked.size() < m) {
      const ObjectId y = ends[rng.below(ends.size())];
      if (std::find(picked.begin(), picked.end(), y) == picked.end()) picked.push_back(y);
    }
    for (ObjectId y : picked) add(x, y);
  }
  return arcs;
}

double linkage_seconds(const std::vector<WeightedArc>& arcs, std::size_t n) {
  ArcBuildOptions options;
  options.ties = TiePolicy::BreakByTarget;
  const auto start = Clock::now();
  const OutOrderedDigraph d = truncate(from_weighted_arcs(arcs, n, options), 8);
  const LinkageGraph lg = compute_linkage(d);
  const Hierarchy h = hierarchy(lg, n);
  (void)h;
  return seconds_since(start);
}

std::string linkage_tsv(const LinkageGraph& lg, const LabelMap& labels) {
  std::ostringstream s;
  write_linkage_tsv(s, lg, labels);
  return s.str();
}

// A strictly increasing map of the reals chosen per source.
double monotone(int kind, double a, double w) {
  switch (kind) {
    case 0: return a * w + 3.0;
    case 1: return w * w * w + a;
    case 2: return std::exp(a * w);
    default: return std::atan(a * w) - 7.0;
  }
}

}  // namespace

int main() {
  criterion(1, "exhaustive n=4 census", 5, [] {
    const EnumerationResult e = enumerate_3_concordant(4);
    const bool ok = e.total == 1296 && e.concordant_3 == 450 && e.non_4_concordant == 24 &&
                    e.loop_cyclic[0] == 8;
    return Outcome{ok, fmt("total %llu, 3-concordant %llu, not 4-concordant %llu, loop "
                           "(01,12,23,30) cyclic %llu",
                           (unsigned long long)e.total, (unsigned long long)e.concordant_3,
                           (unsigned long long)e.non_4_concordant,
                           (unsigned long long)e.loop_cyclic[0])};
  });

  criterion(2, "ten-object golden values", 1, [] {
    const RankingTable t = ten_objects();
    const LinkageGraph lg = compute_linkage(from_ranking_table(t, 9));
    const Hierarchy h = hierarchy(lg, 10);
    const auto s06 = lg.sigma({0, 6}).value_or(0);
    const auto s48 = lg.sigma({4, 8}).value_or(0);
    auto sizes = h.partition_at(6).block_sizes();
    std::sort(sizes.begin(), sizes.end());
    const bool ok = is_3_concordant(t) && !is_concordant_table(t) && s06 == 8 && s48 == 8 &&
                    h.critical == std::optional<std::uint64_t>{5} &&
                    sizes == std::vector<std::size_t>{1, 1, 3, 5};
    std::string sz;
    for (auto s : sizes) sz += std::to_string(s) + " ";
    return Outcome{ok, fmt("sigma{0,6}=%llu sigma{4,8}=%llu t_c=%llu blocks at 6: %s",
                           (unsigned long long)s06, (unsigned long long)s48,
                           (unsigned long long)h.critical.value_or(0), sz.c_str())};
  });

  criterion(3, "extension counts", 60, [] {
    std::uint64_t all = 0, non4 = 0;
    for_each_3_concordant(4, [&](const RankingTable& t) {
      const std::uint64_t c = count_extensions(t);
      all += c;
      if (!k_loop_check(t, 4)) non4 += c;
    });
    return Outcome{all == 685488 && non4 == 33184,
                   fmt("all 450: %llu (want 685488); 24 not 4-concordant: %llu (want 33184)",
                       (unsigned long long)all, (unsigned long long)non4)};
  });

  criterion(4, "rejection sampling n=6", 30, [] {
    const AcceptanceEstimate e = estimate_acceptance(6, 200000, RngSeed{20260401});
    return Outcome{e.rate >= 0.0085 && e.rate <= 0.0120,
                   fmt("rate %.4f%% (95%% CI %.4f%%..%.4f%%), mean attempts %.2f", 100 * e.rate,
                       100 * e.ci_low, 100 * e.ci_high, e.mean_attempts)};
  });

  criterion(5, "4-cycle rate n=6", 120, [] {
    const auto tables = sample_3_concordant(6, 300, RngSeed{20260402}, 1000000);
    double total = 0;
    for (const auto& t : tables) total += static_cast<double>(count_cyclic_canonical_loops(t));
    const double rate = total / (static_cast<double>(tables.size()) * 15.0);
    return Outcome{rate >= 0.009 && rate <= 0.019,
                   fmt("%zu samples x 15 tuples, rate %.3f%%", tables.size(), 100 * rate)};
  });

  criterion(6, "kernel equals brute force", 30, [] {
    Rng rng(RngSeed{20260403});
    std::size_t mismatches = 0;
    auto compare = [&](const OutOrderedDigraph& d) {
      const LinkageGraph a = compute_linkage(d);
      const LinkageGraph b = in_sway_bruteforce(d);
      if (a.links != b.links || a.in_sway != b.in_sway) ++mismatches;
    };
    compare(from_ranking_table(ten_objects(), 9));
    for (int i = 0; i < 100; ++i) {
      const std::size_t n = 3 + rng.below(38);
      const std::size_t k = 1 + rng.below(8);
      if (i % 2 == 0) {
        compare(rbl::testing::random_lists(n, k, rng));
      } else {
        compare(from_ranking_table(rbl::testing::walked_table(n, rng), std::min(k, n - 1)));
      }
    }
    return Outcome{mismatches == 0, fmt("101 instances, %zu mismatches", mismatches)};
  });

  criterion(7, "structural invariants", 0, [] {
    Rng rng(RngSeed{20260404});
    std::size_t bound = 0, no_mutual = 0, sum = 0;
    for (int i = 0; i < 100; ++i) {
      const std::size_t n = 5 + rng.below(36);
      const std::size_t k = 1 + rng.below(std::min<std::size_t>(8, n - 1));
      const RankingTable t = i % 2 ? rbl::testing::walked_table(n, rng)
                                   : rbl::testing::metric_table(n, rng);
      const OutOrderedDigraph d = from_ranking_table(t, k);
      const PertinenceCensus c = pertinent_census(d);
      if (c.pertinent > n * k * k) ++bound;
      no_mutual += c.without_mutual_pair;
      LinkageOptions o;
      o.with_tau = true;
      const LinkageGraph lg = compute_linkage(d, o);
      for (std::size_t e = 0; e < lg.links.size(); ++e) {
        const auto it = c.containing.find(lg.links[e]);
        const std::uint64_t want = it == c.containing.end() ? 0 : it->second;
        if (lg.in_sway[e] + lg.tau_of(lg.links[e]).value_or(0) != want) ++sum;
      }
    }
    return Outcome{bound + no_mutual + sum == 0,
                   fmt("100 instances; count bound %zu, no mutual pair %zu, sigma+tau %zu "
                       "violations",
                       bound, no_mutual, sum)};
  });

  criterion(8, "hierarchy refinement", 0, [] {
    Rng rng(RngSeed{20260405});
    std::size_t violations = 0, checked = 0;
    auto check = [&](const OutOrderedDigraph& d) {
      const LinkageGraph lg = compute_linkage(d);
      const Hierarchy h = hierarchy(lg, d.size());
      for (std::uint64_t t = 0; t <= lg.max_sigma() + 1; ++t) {
        ++checked;
        if (!refines(h.partition_at(t + 1), h.partition_at(t))) ++violations;
      }
    };
    check(from_ranking_table(ten_objects(), 9));
    for (int i = 0; i < 100; ++i) {
      const std::size_t n = 3 + rng.below(60);
      const std::size_t k = 1 + rng.below(std::min<std::size_t>(8, n - 1));
      if (i % 2 == 0) {
        check(rbl::testing::random_lists(n, k, rng));
      } else {
        check(from_ranking_table(rbl::testing::walked_table(n, rng), k));
      }
    }
    return Outcome{violations == 0,
                   fmt("101 hierarchies, %zu level pairs, %zu violations", checked, violations)};
  });

  criterion(9, "functoriality", 300, [] {
    std::size_t failed[2] = {0, 0};
    for (std::uint64_t s = 0; s < 1000; ++s) {
      for (int m = 0; m < 2; ++m) {
        AugmentOptions o;
        o.mode = m == 0 ? AugmentMode::Restriction : AugmentMode::Appended;
        if (!augment_experiment(8, 12, 4, RngSeed{mix_seed(20260406, s)}, o).passed()) {
          ++failed[m];
        }
      }
    }
    return Outcome{failed[0] + failed[1] == 0,
                   fmt("1000 trials per mode; failures: sub-system %zu, appended %zu", failed[0],
                       failed[1])};
  });

  criterion(10, "walk closure", 0, [] {
    const WalkResult w = random_walk(8, 10000, RngSeed{20260407}, true);
    std::size_t unsound = 0, moves = 0;
    for_each_3_concordant(4, [&](const RankingTable& t) {
      for (ObjectId i = 0; i < 4; ++i) {
        for (std::uint32_t s = 1; s <= 2; ++s) {
          RankingTable forced = t;
          forced.swap_ranks(i, t.object_at_rank(i, s), t.object_at_rank(i, s + 1));
          if (transposition_blocked(t, {i, s}) != !is_3_concordant(forced)) ++unsound;
          ++moves;
        }
      }
    });
    const bool ok = w.audited == 10000 && w.audit_failures == 0 &&
                    is_3_concordant(w.state.table) && unsound == 0 && moves == 3600;
    return Outcome{ok, fmt("%llu audited steps, %llu failures; %zu n=4 moves, %zu unsound",
                           (unsigned long long)w.audited, (unsigned long long)w.audit_failures,
                           moves, unsound)};
  });

  criterion(11, "monotone-transform invariance", 0, [] {
    Rng rng(RngSeed{20260408});
    std::size_t differ = 0;
    for (int i = 0; i < 50; ++i) {
      const std::size_t n = 5 + rng.below(36);
      EdgeList base{LabelMap::identity(n), rbl::testing::random_arcs(n, 8, rng)};
      EdgeList moved = base;
      std::vector<int> kind(n);
      std::vector<double> scale(n);
      for (std::size_t x = 0; x < n; ++x) {
        kind[x] = static_cast<int>(rng.below(4));
        scale[x] = 0.1 + rng.unit();
      }
      for (auto& a : moved.arcs) a.weight = monotone(kind[a.source], scale[a.source], a.weight);
      LinkConfig c;
      c.k = 1 + rng.below(8);
      const LinkRun r0 = run_link(base, c);
      const LinkRun r1 = run_link(moved, c);
      if (linkage_tsv(r0.linkage, r0.labels) != linkage_tsv(r1.linkage, r1.labels)) ++differ;
    }
    return Outcome{differ == 0, fmt("50 instances, %zu differ", differ)};
  });

  criterion(12, "desk-scale performance", 0, [] {
    Rng rng(RngSeed{20260409});
    const auto small = preferential_attachment(100000, 2, rng);
    const auto big = preferential_attachment(200000, 2, rng);
    double t1 = 1e9, t2 = 1e9;
    for (int rep = 0; rep < 3; ++rep) {
      t1 = std::min(t1, linkage_seconds(small, 100000));
      t2 = std::min(t2, linkage_seconds(big, 200000));
    }
    const double ratio = t2 / t1;
    return Outcome{t1 < 30 && ratio <= 3,
                   fmt("K=8: n=1e5 %.3f s, n=2e5 %.3f s, ratio %.2f", t1, t2, ratio)};
  });

  criterion(13, "sampler uniformity n=4", 0, [] {
    std::map<std::vector<std::uint32_t>, std::uint64_t> counts;
    Rng rng(RngSeed{20260410});
    const std::uint64_t draws = 100000;
    for (std::uint64_t i = 0; i < draws; ++i) {
      const RankingTable t = rejection_sample(4, rng, 1000000).table;
      std::vector<std::uint32_t> key;
      for (ObjectId r = 0; r < 4; ++r) key.insert(key.end(), t.row(r).begin(), t.row(r).end());
      ++counts[key];
    }
    const double expected = static_cast<double>(draws) / 450.0;
    double stat = static_cast<double>(450 - counts.size()) * expected;
    for (const auto& [key, c] : counts) {
      stat += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
    }
    boost::math::chi_squared dist(449.0);
    const double critical = boost::math::quantile(boost::math::complement(dist, 0.01));
    return Outcome{counts.size() == 450 && stat < critical,
                   fmt("%zu cells seen, chi-square %.1f vs 1%% critical %.1f", counts.size(), stat,
                       critical)};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
