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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rbl/concordance.hpp"
#include "rbl/io.hpp"
#include "rbl/linkage.hpp"
#include "rbl/ranking.hpp"

namespace rbl {

enum class ComparatorMode { Out, In };

struct LinkConfig {
  ComparatorMode mode = ComparatorMode::Out;
  std::size_t k = 8;
  std::optional<std::uint64_t> t;  // default: critical in-sway + 1
  bool two_core = true;
  int threads = 0;
  bool break_ties = false;
  bool dedupe_max = false;
  bool check_concordance = false;
  bool with_tau = false;
};

/// Everything the link command reports. Object ids are dense over the
/// objects that survived the 2-core.
struct LinkRun {
  LabelMap labels;
  std::vector<std::string> pruned;  // labels, in input order
  OutOrderedDigraph digraph;
  FriendListStats stats;
  LinkageGraph linkage;
  Hierarchy levels;
  std::uint64_t t = 0;
  Partition partition;
  std::size_t links_at_t = 0;
  std::optional<ConcordanceReport> concordance;
};

/// Full system: labels "0".."n-1" and w_i(j) = -r_i(j).
EdgeList edge_list_from_table(const RankingTable& table);

/// Digraph with every list filtered to `kept`, renumbered densely.
OutOrderedDigraph restrict_digraph(const OutOrderedDigraph& d, std::span<const ObjectId> kept);

/// Ingested arcs -> digraph under the comparator mode -> 2-core of the
/// undirected view -> K-truncation -> linkage -> hierarchy -> partition.
LinkRun run_link(const EdgeList& input, const LinkConfig& config);

nlohmann::json link_run_json(const LinkRun& run, const LinkConfig& config, bool all_levels);

/// `label<TAB>block`, the block named by its smallest member; with
/// `all_levels` every line is prefixed by its threshold.
void write_partition_tsv(std::ostream& out, const LinkRun& run, bool all_levels);

}  // namespace rbl
