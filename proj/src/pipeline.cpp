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

#include "rbl/pipeline.hpp"

#include <ostream>

#include "rbl/error.hpp"
#include "rbl/neighbor_graphs.hpp"

namespace rbl {

EdgeList edge_list_from_table(const RankingTable& table) {
  EdgeList list;
  list.labels = LabelMap::identity(table.size());
  const auto n = static_cast<ObjectId>(table.size());
  for (ObjectId i = 0; i < n; ++i) {
    for (ObjectId j = 0; j < n; ++j) {
      if (j != i) list.arcs.push_back({i, j, -static_cast<double>(table.rank(i, j))});
    }
  }
  return list;
}

OutOrderedDigraph restrict_digraph(const OutOrderedDigraph& d, std::span<const ObjectId> kept) {
  std::vector<ObjectId> renumber(d.size(), kNotFriend);
  for (std::size_t i = 0; i < kept.size(); ++i) renumber[kept[i]] = static_cast<ObjectId>(i);
  std::vector<std::vector<ObjectId>> lists(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    for (ObjectId y : d.friends(kept[i])) {
      if (renumber[y] != kNotFriend) lists[i].push_back(renumber[y]);
    }
  }
  return OutOrderedDigraph(kept.size(), lists, d.k_bound());
}

LinkRun run_link(const EdgeList& input, const LinkConfig& config) {
  if (config.k == 0) throw Error(ErrorCode::OutOfRange, "k must be at least 1");
  const std::size_t n = input.labels.size();

  ArcBuildOptions options;
  options.ties = config.break_ties ? TiePolicy::BreakByTarget : TiePolicy::Error;
  options.duplicates = config.dedupe_max ? DuplicatePolicy::KeepMax : DuplicatePolicy::Error;
  const OutOrderedDigraph full =
      config.mode == ComparatorMode::Out
          ? from_weighted_arcs(input.arcs, n, options)
          : from_weighted_arcs(transpose_mode(input.arcs), n, options);

  LinkRun run;
  std::vector<ObjectId> kept;
  if (config.two_core) {
    const TwoCore core = two_core(undirected_neighbor_graph(full).edges(), n);
    kept = core.survivors;
    for (ObjectId x : core.pruned) run.pruned.push_back(input.labels.label(x));
  } else {
    kept.resize(n);
    for (ObjectId x = 0; x < n; ++x) kept[x] = x;
  }
  run.labels = input.labels.subset(kept);
  run.digraph = truncate(restrict_digraph(full, kept), config.k);
  run.stats = friend_list_stats(run.digraph);

  run.linkage = compute_linkage(run.digraph, LinkageOptions{config.with_tau, config.threads});
  run.levels = hierarchy(run.linkage, kept.size());
  run.t = config.t ? *config.t : (run.levels.critical ? *run.levels.critical + 1 : 1);
  run.partition = run.levels.partition_at(run.t);
  run.links_at_t = threshold_links(run.linkage, run.t).size();
  if (config.check_concordance) run.concordance = is_3_concordant_ood(run.digraph);
  return run;
}

nlohmann::json link_run_json(const LinkRun& run, const LinkConfig& config, bool all_levels) {
  nlohmann::json j = {{"schema_version", kSchemaVersion},
                      {"kind", "link"},
                      {"mode", config.mode == ComparatorMode::Out ? "out" : "in"},
                      {"k", config.k},
                      {"objects", run.labels.size() + run.pruned.size()},
                      {"survivors", run.labels.size()},
                      {"pruned", run.pruned},
                      {"t", run.t},
                      {"links_at_t", run.links_at_t},
                      {"friend_list_sizes",
                       {{"min", run.stats.min}, {"max", run.stats.max}, {"mean", run.stats.mean}}},
                      {"linkage", linkage_json(run.linkage, run.labels, run.levels.critical)},
                      {"partition", partition_json(run.partition, run.labels)}};
  j["critical_in_sway"] =
      run.levels.critical ? nlohmann::json(*run.levels.critical) : nlohmann::json(nullptr);
  if (all_levels) {
    nlohmann::json levels = nlohmann::json::array();
    for (std::size_t i = 0; i < run.levels.thresholds.size(); ++i) {
      nlohmann::json level = partition_json(run.levels.partitions[i], run.labels);
      level["t"] = run.levels.thresholds[i];
      levels.push_back(std::move(level));
    }
    j["levels"] = std::move(levels);
  }
  if (run.concordance) j["concordance"] = concordance_json(*run.concordance, run.labels);
  return j;
}

void write_partition_tsv(std::ostream& out, const LinkRun& run, bool all_levels) {
  auto emit = [&](const Partition& p, const std::string& prefix) {
    for (ObjectId x = 0; x < p.n; ++x) {
      out << prefix << run.labels.label(x) << '\t'
          << run.labels.label(p.blocks[p.block_of[x]].front()) << '\n';
    }
  };
  if (!all_levels) {
    emit(run.partition, "");
    return;
  }
  for (std::size_t i = 0; i < run.levels.thresholds.size(); ++i) {
    emit(run.levels.partitions[i], std::to_string(run.levels.thresholds[i]) + '\t');
  }
}

}  // namespace rbl
