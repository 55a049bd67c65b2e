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

#include <iosfwd>
#include <optional>
#include <vector>

#include <json.hpp>

#include "rbl/concordance.hpp"
#include "rbl/functor_props.hpp"
#include "rbl/linkage.hpp"
#include "rbl/ranking.hpp"
#include "rbl/sampling.hpp"

namespace rbl {

inline constexpr int kSchemaVersion = 1;

struct EdgeList {
  LabelMap labels;
  std::vector<WeightedArc> arcs;
};

/// One `x<sep>y<sep>weight` record per line, where <sep> is a tab or a
/// comma (decided by the first record). Blank lines and lines starting with
/// `#` are skipped. With `undirected`, each record also yields (y, x, w).
/// Throws ParseError naming the line.
EdgeList read_edge_list(std::istream& in, bool undirected = false);

/// `label_x<TAB>label_z<TAB>sigma`, the pair and the lines in
/// lexicographic label order.
void write_linkage_tsv(std::ostream& out, const LinkageGraph& lg, const LabelMap& labels);

/// Solid edges for sigma above the critical in-sway, dashed otherwise.
void write_linkage_dot(std::ostream& out, const LinkageGraph& lg, const LabelMap& labels,
                       std::optional<std::uint64_t> critical);

nlohmann::json linkage_json(const LinkageGraph& lg, const LabelMap& labels,
                            std::optional<std::uint64_t> critical);
nlohmann::json partition_json(const Partition& p, const LabelMap& labels);
nlohmann::json concordance_json(const ConcordanceReport& r, const LabelMap& labels);
nlohmann::json augment_json(const AugmentReport& r);
nlohmann::json enumeration_json(const EnumerationResult& r);

}  // namespace rbl
