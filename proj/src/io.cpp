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

#include "rbl/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "rbl/error.hpp"

namespace rbl {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void parse_error(std::size_t line_no, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

EdgeList read_edge_list(std::istream& in, bool undirected) {
  EdgeList list;
  std::string line;
  std::size_t line_no = 0;
  char sep = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    if (sep == 0) sep = content.find('\t') != std::string_view::npos ? '\t' : ',';

    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const auto cut = content.find(sep, start);
      fields.push_back(trim(content.substr(start, cut - start)));
      if (cut == std::string_view::npos) break;
      start = cut + 1;
    }
    if (fields.size() != 3) {
      parse_error(line_no, "expected 3 fields (source, target, weight), found " +
                               std::to_string(fields.size()));
    }
    if (fields[0].empty() || fields[1].empty()) parse_error(line_no, "empty label");

    const std::string_view w = fields[2];
    double weight = 0.0;
    const auto [end, ec] = std::from_chars(w.data(), w.data() + w.size(), weight);
    if (ec != std::errc() || end != w.data() + w.size() || w.empty()) {
      parse_error(line_no, "weight '" + std::string(w) + "' is not a decimal number");
    }
    if (std::isnan(weight)) parse_error(line_no, "weight is NaN");
    if (fields[0] == fields[1]) {
      throw Error(ErrorCode::SelfLoop,
                  "line " + std::to_string(line_no) + ": self-loop on '" + std::string(fields[0]) + "'");
    }

    const ObjectId x = list.labels.intern(fields[0]);
    const ObjectId y = list.labels.intern(fields[1]);
    list.arcs.push_back({x, y, weight});
    if (undirected) list.arcs.push_back({y, x, weight});
  }
  return list;
}

namespace {

struct LabelledLink {
  std::string x;
  std::string z;
  std::size_t index;
};

std::vector<LabelledLink> labelled_links(const LinkageGraph& lg, const LabelMap& labels) {
  std::vector<LabelledLink> out;
  out.reserve(lg.links.size());
  for (std::size_t e = 0; e < lg.links.size(); ++e) {
    std::string a = labels.label(lg.links[e].lo);
    std::string b = labels.label(lg.links[e].hi);
    if (b < a) std::swap(a, b);
    out.push_back({std::move(a), std::move(b), e});
  }
  std::sort(out.begin(), out.end(), [](const LabelledLink& p, const LabelledLink& q) {
    return std::tie(p.x, p.z) < std::tie(q.x, q.z);
  });
  return out;
}

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_linkage_tsv(std::ostream& out, const LinkageGraph& lg, const LabelMap& labels) {
  for (const auto& l : labelled_links(lg, labels)) {
    out << l.x << '\t' << l.z << '\t' << lg.in_sway[l.index] << '\n';
  }
}

void write_linkage_dot(std::ostream& out, const LinkageGraph& lg, const LabelMap& labels,
                       std::optional<std::uint64_t> critical) {
  out << "graph linkage {\n";
  for (ObjectId x = 0; x < lg.n; ++x) out << "  " << dot_quote(labels.label(x)) << ";\n";
  for (const auto& l : labelled_links(lg, labels)) {
    const std::uint64_t sigma = lg.in_sway[l.index];
    const bool solid = critical && sigma > *critical;
    out << "  " << dot_quote(l.x) << " -- " << dot_quote(l.z) << " [label=" << sigma
        << ", style=" << (solid ? "solid" : "dashed") << "];\n";
  }
  out << "}\n";
}

nlohmann::json linkage_json(const LinkageGraph& lg, const LabelMap& labels,
                            std::optional<std::uint64_t> critical) {
  nlohmann::json links = nlohmann::json::array();
  for (const auto& l : labelled_links(lg, labels)) {
    nlohmann::json entry = {{"x", l.x}, {"z", l.z}, {"sigma", lg.in_sway[l.index]}};
    if (lg.with_tau) {
      const Link link = lg.links[l.index];
      entry["tau"] = lg.tau_of(link).value_or(0);
    }
    links.push_back(std::move(entry));
  }
  nlohmann::json j = {{"schema_version", kSchemaVersion},
                      {"kind", "linkage"},
                      {"n", lg.n},
                      {"links", std::move(links)}};
  j["critical_in_sway"] = critical ? nlohmann::json(*critical) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json partition_json(const Partition& p, const LabelMap& labels) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& block : p.blocks) {
    nlohmann::json members = nlohmann::json::array();
    for (ObjectId x : block) members.push_back(labels.label(x));
    blocks.push_back(std::move(members));
  }
  nlohmann::json assignment = nlohmann::json::object();
  for (ObjectId x = 0; x < p.n; ++x) {
    assignment[labels.label(x)] = labels.label(p.blocks[p.block_of[x]].front());
  }
  return {{"blocks", std::move(blocks)}, {"block_of", std::move(assignment)}};
}

nlohmann::json concordance_json(const ConcordanceReport& r, const LabelMap& labels) {
  auto name = [&](ObjectId x) { return labels.label(x); };
  nlohmann::json triangles = nlohmann::json::array();
  for (const auto& t : r.cyclic_voter_triangles) {
    triangles.push_back({name(t[0]), name(t[1]), name(t[2])});
  }
  nlohmann::json loops = nlohmann::json::array();
  for (const auto& loop : r.cyclic_loops) {
    nlohmann::json cells = nlohmann::json::array();
    for (const Link& c : loop) cells.push_back({name(c.lo), name(c.hi)});
    loops.push_back(std::move(cells));
  }
  nlohmann::json j = {{"schema_version", kSchemaVersion},
                      {"kind", "concordance"},
                      {"is_ranking_system", r.is_ranking_system},
                      {"is_3_concordant", r.is_3_concordant},
                      {"cyclic_count", r.cyclic_count},
                      {"pertinent_count", r.pertinent_count},
                      {"cyclic_voter_triangles", std::move(triangles)},
                      {"cyclic_loops", std::move(loops)}};
  j["k_concordant_up_to"] =
      r.k_concordant_up_to ? nlohmann::json(*r.k_concordant_up_to) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json augment_json(const AugmentReport& r) {
  return {{"schema_version", kSchemaVersion},
          {"kind", "augment"},
          {"seed", r.seed},
          {"mode", std::string(to_string(r.mode))},
          {"n_small", r.n_small},
          {"n_big", r.n_big},
          {"k", r.k},
          {"k_big", r.k_big},
          {"injection_valid", r.injection_valid},
          {"ordinal_sum", r.ordinal_sum},
          {"sigma_monotone", r.sigma_monotone},
          {"no_rip_apart", r.no_rip_apart},
          {"passed", r.passed()},
          {"witnesses", r.witnesses}};
}

nlohmann::json enumeration_json(const EnumerationResult& r) {
  return {{"schema_version", kSchemaVersion},
          {"kind", "enumeration"},
          {"n", r.n},
          {"total", r.total},
          {"concordant_3", r.concordant_3},
          {"non_4_concordant", r.non_4_concordant},
          {"loop_cyclic",
           {{"01,12,23,30", r.loop_cyclic[0]},
            {"01,13,32,20", r.loop_cyclic[1]},
            {"02,21,13,30", r.loop_cyclic[2]}}}};
}

}  // namespace rbl
