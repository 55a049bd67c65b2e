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

#include "rbl/functor_props.hpp"

#include <algorithm>
#include <numeric>

#include "rbl/error.hpp"
#include "rbl/sampling.hpp"

namespace rbl {

InjectionMap InjectionMap::identity(std::size_t n) {
  InjectionMap m;
  m.image.resize(n);
  std::iota(m.image.begin(), m.image.end(), ObjectId{0});
  return m;
}

std::string_view to_string(InjectionCondition c) {
  switch (c) {
    case InjectionCondition::None: return "none";
    case InjectionCondition::DomainMismatch: return "domain-mismatch";
    case InjectionCondition::OneToOne: return "one-to-one";
    case InjectionCondition::NeighborhoodPreserving: return "neighborhood-preserving";
    case InjectionCondition::OrderPreserving: return "order-preserving";
    case InjectionCondition::OrdinalSum: return "ordinal-sum";
  }
  return "unknown";
}

std::string_view to_string(AugmentMode mode) {
  return mode == AugmentMode::Restriction ? "restriction" : "appended";
}

namespace {

InjectionReport violation(InjectionCondition c, ObjectId x, ObjectId y, ObjectId z,
                          std::string detail) {
  return {c, x, y, z, std::move(detail)};
}

}  // namespace

InjectionReport is_neighborhood_ordinal_injection(const OutOrderedDigraph& a,
                                                  const OutOrderedDigraph& b,
                                                  const InjectionMap& m,
                                                  InjectionStrictness strictness) {
  if (m.image.size() != a.size()) {
    return violation(InjectionCondition::DomainMismatch, 0, 0, 0,
                     "map covers " + std::to_string(m.image.size()) + " objects, source has " +
                         std::to_string(a.size()));
  }
  std::vector<ObjectId> preimage(b.size(), kNotFriend);
  for (ObjectId x = 0; x < a.size(); ++x) {
    const ObjectId ix = m(x);
    if (ix >= b.size()) {
      return violation(InjectionCondition::DomainMismatch, x, 0, 0,
                       "image of " + std::to_string(x) + " is outside the target");
    }
    if (preimage[ix] != kNotFriend) {
      return violation(InjectionCondition::OneToOne, preimage[ix], x, 0,
                       "objects " + std::to_string(preimage[ix]) + " and " + std::to_string(x) +
                           " share an image");
    }
    preimage[ix] = x;
  }
  for (ObjectId x = 0; x < a.size(); ++x) {
    const auto gamma = a.friends(x);
    std::uint32_t last = 0;
    for (std::size_t p = 0; p < gamma.size(); ++p) {
      const ObjectId y = gamma[p];
      const std::uint32_t q = b.position(m(x), m(y));
      if (q == kNotFriend) {
        return violation(InjectionCondition::NeighborhoodPreserving, x, y, 0,
                         "image of friend " + std::to_string(y) + " of " + std::to_string(x) +
                             " is not a friend of the image");
      }
      if (p > 0 && q <= last) {
        return violation(InjectionCondition::OrderPreserving, x, gamma[p - 1], y,
                         "object " + std::to_string(x) + " ranks " +
                             std::to_string(gamma[p - 1]) + " ahead of " + std::to_string(y) +
                             " but the images are reversed");
      }
      last = q;
    }
    if (strictness == InjectionStrictness::Strict && !gamma.empty() &&
        last + 1 != gamma.size()) {
      // Images are increasing, so some new friend sits before the last one.
      const auto big = b.friends(m(x));
      for (std::uint32_t q = 0; q < last; ++q) {
        const ObjectId w = big[q];
        if (preimage[w] == kNotFriend || !a.is_friend(x, preimage[w])) {
          return violation(InjectionCondition::OrdinalSum, x, big[last], w,
                           "new friend " + std::to_string(w) + " of image " +
                               std::to_string(m(x)) + " precedes the image " +
                               std::to_string(big[last]) + " of an old friend");
        }
      }
    }
  }
  return {};
}

MonotoneReport check_insway_monotone(const LinkageGraph& la, const LinkageGraph& lb,
                                     const InjectionMap& m) {
  MonotoneReport report;
  for (std::size_t e = 0; e < la.links.size(); ++e) {
    const Link link = la.links[e];
    const auto sigma_b = lb.sigma(Link::of(m(link.lo), m(link.hi)));
    if (!sigma_b) {
      return {false, true, link, la.in_sway[e], 0};
    }
    if (*sigma_b < la.in_sway[e]) {
      return {false, false, link, la.in_sway[e], *sigma_b};
    }
  }
  return report;
}

MonotoneReport check_insway_monotone(const OutOrderedDigraph& a, const OutOrderedDigraph& b,
                                     const InjectionMap& m) {
  return check_insway_monotone(compute_linkage(a), compute_linkage(b), m);
}

bool refines(const Partition& p, const Partition& q) {
  if (p.n != q.n) {
    throw Error(ErrorCode::SizeMismatch, "partitions cover " + std::to_string(p.n) + " and " +
                                             std::to_string(q.n) + " objects");
  }
  for (const auto& block : p.blocks) {
    for (ObjectId x : block) {
      if (q.block_of[x] != q.block_of[block.front()]) return false;
    }
  }
  return true;
}

std::size_t minimal_k_for_augmentation(const RankingTable& small, const RankingTable& big,
                                       const InjectionMap& m, std::size_t k) {
  const std::size_t n = small.size();
  if (m.image.size() != n) {
    throw Error(ErrorCode::SizeMismatch, "injection must cover every object of the small table");
  }
  for (ObjectId x = 0; x < n; ++x) {
    if (m(x) >= big.size()) {
      throw Error(ErrorCode::OutOfRange, "image of " + std::to_string(x) + " is outside the big table");
    }
  }
  if (k >= n) {
    throw Error(ErrorCode::KTooLarge, "k must be below the small object count");
  }
  std::size_t k_big = k;
  for (ObjectId x = 0; x < n; ++x) {
    std::uint32_t previous = 0;
    for (std::uint32_t s = 1; s < n; ++s) {
      const ObjectId y = small.object_at_rank(x, s);
      const std::uint32_t r = big.rank(m(x), m(y));
      if (r <= previous) {
        throw Error(ErrorCode::Incompatible,
                    "row " + std::to_string(x) + " orders its objects differently in the big table");
      }
      previous = r;
      if (s <= k) k_big = std::max<std::size_t>(k_big, r);
    }
  }
  return k_big;
}

namespace {

// Old rows keep their order and see every new object behind the old ones;
// all pairs touching a new object follow one random total order, so no
// triple involving a new object can be cyclic.
RankingTable append_objects(const RankingTable& small, std::size_t n_big, Rng& rng) {
  const std::size_t n = small.size();
  LinkSet fresh;
  for (ObjectId a = 0; a < n_big; ++a) {
    for (ObjectId b = std::max<ObjectId>(a + 1, static_cast<ObjectId>(n)); b < n_big; ++b) {
      fresh.push_back({a, b});
    }
  }
  rng.shuffle(std::span<Link>(fresh));
  std::vector<std::size_t> position(n_big * n_big, 0);
  for (std::size_t p = 0; p < fresh.size(); ++p) {
    position[fresh[p].lo * n_big + fresh[p].hi] = position[fresh[p].hi * n_big + fresh[p].lo] = p;
  }
  std::vector<std::uint32_t> flat(n_big * n_big, 0);
  std::vector<ObjectId> order;
  for (ObjectId x = 0; x < n_big; ++x) {
    order.clear();
    for (ObjectId y = static_cast<ObjectId>(x < n ? n : 0); y < n_big; ++y) {
      if (y != x) order.push_back(y);
    }
    std::sort(order.begin(), order.end(), [&](ObjectId p, ObjectId q) {
      return position[x * n_big + p] < position[x * n_big + q];
    });
    std::uint32_t next = 1;
    if (x < n) {
      for (ObjectId y = 0; y < n; ++y) flat[x * n_big + y] = small.rank(x, y);
      next = static_cast<std::uint32_t>(n);
    }
    for (ObjectId y : order) flat[x * n_big + y] = next++;
  }
  return RankingTable(n_big, std::move(flat));
}

}  // namespace

AugmentReport augment_experiment(std::size_t n_small, std::size_t n_big, std::size_t k,
                                 RngSeed seed, const AugmentOptions& options) {
  if (n_small > n_big) {
    throw Error(ErrorCode::SizeMismatch, "the small system cannot exceed the big one");
  }
  AugmentReport report;
  report.seed = seed.value;
  report.mode = options.mode;
  report.n_small = n_small;
  report.n_big = n_big;
  report.k = k;

  Rng rng(RngSeed{mix_seed(seed.value, 2)});
  RankingTable small;
  RankingTable big;
  InjectionMap m;
  if (options.mode == AugmentMode::Restriction) {
    big = random_walk(n_big, options.walk_steps, seed).state.table;
    std::vector<ObjectId> all(n_big);
    std::iota(all.begin(), all.end(), ObjectId{0});
    rng.shuffle(std::span<ObjectId>(all));
    m.image.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n_small));
    std::sort(m.image.begin(), m.image.end());
    small = big.restrict_to(m.image);
    report.k_big = minimal_k_for_augmentation(small, big, m, k);
  } else {
    small = random_walk(n_small, options.walk_steps, seed).state.table;
    big = append_objects(small, n_big, rng);
    m = InjectionMap::identity(n_small);
    const std::size_t extra = rng.below(n_big - n_small + 1);
    report.k_big = std::min(n_big - 1, minimal_k_for_augmentation(small, big, m, k) + extra);
  }

  const OutOrderedDigraph a = from_ranking_table(small, k);
  const OutOrderedDigraph b = from_ranking_table(big, report.k_big);
  const auto strict = is_neighborhood_ordinal_injection(a, b, m, InjectionStrictness::Strict);
  const auto contained =
      is_neighborhood_ordinal_injection(a, b, m, InjectionStrictness::Containment);
  report.ordinal_sum = strict.valid();
  const auto& required = options.mode == AugmentMode::Restriction ? contained : strict;
  report.injection_valid = required.valid();
  if (!required.valid()) {
    report.witnesses.push_back(std::string(to_string(required.violated)) + ": " +
                               required.detail);
  }

  const LinkageOptions single{false, 1};
  const LinkageGraph la = compute_linkage(a, single);
  const LinkageGraph lb = compute_linkage(b, single);
  const MonotoneReport mono = check_insway_monotone(la, lb, m);
  report.sigma_monotone = mono.holds;
  if (!mono.holds) {
    report.witnesses.push_back(
        "link {" + std::to_string(mono.witness.lo) + "," + std::to_string(mono.witness.hi) +
        "}: " + (mono.friendship_lost ? std::string("image is not a link")
                                      : "sigma " + std::to_string(mono.sigma_a) + " > " +
                                            std::to_string(mono.sigma_b)));
  }

  report.no_rip_apart = true;
  const Hierarchy hb = hierarchy(lb, n_big);
  for (std::uint64_t t = 0; t <= la.max_sigma() + 1 && report.no_rip_apart; ++t) {
    const Partition pa = components(n_small, threshold_links(la, t));
    const Partition& pb = hb.partition_at(t);
    for (const auto& block : pa.blocks) {
      const auto target = pb.block_of[m(block.front())];
      for (ObjectId x : block) {
        if (pb.block_of[m(x)] != target) {
          report.no_rip_apart = false;
          report.witnesses.push_back("t=" + std::to_string(t) + ": objects " +
                                     std::to_string(block.front()) + " and " +
                                     std::to_string(x) + " are separated");
          break;
        }
      }
      if (!report.no_rip_apart) break;
    }
  }
  return report;
}

}  // namespace rbl
