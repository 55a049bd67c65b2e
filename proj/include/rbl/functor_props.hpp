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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rbl/linkage.hpp"
#include "rbl/ranking.hpp"
#include "rbl/rng.hpp"

namespace rbl {

/// iota: S -> S' stored as image[x].
struct InjectionMap {
  std::vector<ObjectId> image;

  static InjectionMap identity(std::size_t n);
  ObjectId operator()(ObjectId x) const { return image[x]; }
};

enum class InjectionCondition {
  None,
  DomainMismatch,
  OneToOne,
  NeighborhoodPreserving,
  OrderPreserving,
  OrdinalSum,
};
std::string_view to_string(InjectionCondition c);

/// First violated condition with witnesses: x the owner, y and z the
/// objects involved (meaning depends on the condition).
struct InjectionReport {
  InjectionCondition violated = InjectionCondition::None;
  ObjectId x = 0;
  ObjectId y = 0;
  ObjectId z = 0;
  std::string detail;

  bool valid() const { return violated == InjectionCondition::None; }
};

enum class InjectionStrictness {
  /// All four conditions, including the ordinal sum.
  Strict,
  /// Neighborhood, order and one-to-one only: new friends may interleave.
  Containment,
};

InjectionReport is_neighborhood_ordinal_injection(
    const OutOrderedDigraph& a, const OutOrderedDigraph& b, const InjectionMap& m,
    InjectionStrictness strictness = InjectionStrictness::Strict);

struct MonotoneReport {
  bool holds = true;
  bool friendship_lost = false;  // a link of a whose image is not a link of b
  Link witness{};                // in a's ids
  std::uint64_t sigma_a = 0;
  std::uint64_t sigma_b = 0;
};

/// Every link {x, z} of a maps to a link of b with no smaller in-sway.
MonotoneReport check_insway_monotone(const OutOrderedDigraph& a, const OutOrderedDigraph& b,
                                     const InjectionMap& m);
MonotoneReport check_insway_monotone(const LinkageGraph& la, const LinkageGraph& lb,
                                     const InjectionMap& m);

/// Every block of p lies inside a block of q. Throws SizeMismatch.
bool refines(const Partition& p, const Partition& q);

/// Smallest K'' >= k such that the K''-truncation of `big` contains the
/// k-nearest friends of every object of `small` (mapped by `m`), with order
/// kept. Throws Incompatible when big's rows, restricted to the image of
/// small, order the objects differently from small.
std::size_t minimal_k_for_augmentation(const RankingTable& small, const RankingTable& big,
                                       const InjectionMap& m, std::size_t k);

enum class AugmentMode {
  /// A random n_small-subset of a random 3-concordant n_big system.
  Restriction,
  /// New objects are appended behind every existing friend list.
  Appended,
};
std::string_view to_string(AugmentMode mode);

struct AugmentOptions {
  AugmentMode mode = AugmentMode::Restriction;
  /// Random-walk steps from the concordant start; 0 keeps it concordant.
  std::uint64_t walk_steps = 1000;
};

struct AugmentReport {
  std::uint64_t seed = 0;
  AugmentMode mode = AugmentMode::Restriction;
  std::size_t n_small = 0;
  std::size_t n_big = 0;
  std::size_t k = 0;
  std::size_t k_big = 0;
  bool injection_valid = false;  // containment in Restriction, strict in Appended
  bool ordinal_sum = false;      // informational in Restriction
  bool sigma_monotone = false;
  bool no_rip_apart = false;
  std::vector<std::string> witnesses;

  bool passed() const { return injection_valid && sigma_monotone && no_rip_apart; }
};

AugmentReport augment_experiment(std::size_t n_small, std::size_t n_big, std::size_t k,
                                 RngSeed seed, const AugmentOptions& options = {});

}  // namespace rbl
