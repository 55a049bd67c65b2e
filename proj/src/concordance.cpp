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

#include "rbl/concordance.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <string>

#include "rbl/error.hpp"

namespace rbl {

bool is_3_concordant(const RankingTable& t) {
  const auto n = static_cast<ObjectId>(t.size());
  for (ObjectId i = 0; i < n; ++i) {
    for (ObjectId j = i + 1; j < n; ++j) {
      for (ObjectId k = j + 1; k < n; ++k) {
        if (voter_triangle_cyclic(t, i, j, k)) return false;
      }
    }
  }
  return true;
}

std::uint64_t count_cyclic_voter_triangles_serial(const RankingTable& t) {
  const auto n = static_cast<ObjectId>(t.size());
  std::uint64_t count = 0;
  for (ObjectId i = 0; i < n; ++i) {
    for (ObjectId j = i + 1; j < n; ++j) {
      for (ObjectId k = j + 1; k < n; ++k) count += voter_triangle_cyclic(t, i, j, k);
    }
  }
  return count;
}

std::uint64_t count_cyclic_voter_triangles(const RankingTable& t) {
  const auto n = static_cast<std::ptrdiff_t>(t.size());
  std::uint64_t count = 0;
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : count) if (n >= 64)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto a = static_cast<ObjectId>(i);
    for (ObjectId j = a + 1; j < static_cast<ObjectId>(n); ++j) {
      for (ObjectId k = j + 1; k < static_cast<ObjectId>(n); ++k) {
        count += voter_triangle_cyclic(t, a, j, k);
      }
    }
  }
  return count;
}

namespace {

// Pairs {a, b} of 0..n-1 indexed densely in lexicographic order.
struct PairIndex {
  explicit PairIndex(std::size_t n) : n(n), id(n * n, 0) {
    for (ObjectId a = 0; a < n; ++a) {
      for (ObjectId b = a + 1; b < n; ++b) {
        id[a * n + b] = id[b * n + a] = static_cast<std::uint32_t>(pairs.size());
        pairs.push_back({a, b});
      }
    }
  }
  std::uint32_t of(ObjectId a, ObjectId b) const { return id[a * n + b]; }

  std::size_t n;
  std::vector<std::uint32_t> id;
  LinkSet pairs;
};

// Successor lists of the line-graph orientation: for each v, cell vu -> vw
// whenever r_v(u) < r_v(w). With `reduced`, only consecutive ranks are
// linked, which preserves reachability.
std::vector<std::vector<std::uint32_t>> orientation(const RankingTable& t, const PairIndex& idx,
                                                    bool reduced) {
  const std::size_t n = t.size();
  std::vector<std::vector<std::uint32_t>> succ(idx.pairs.size());
  std::vector<ObjectId> by_rank(n);
  for (ObjectId v = 0; v < n; ++v) {
    for (ObjectId u = 0; u < n; ++u) by_rank[t.rank(v, u)] = u;
    for (std::size_t s = 1; s < n; ++s) {
      const std::uint32_t from = idx.of(v, by_rank[s]);
      if (reduced) {
        if (s + 1 < n) succ[from].push_back(idx.of(v, by_rank[s + 1]));
      } else {
        for (std::size_t r = s + 1; r < n; ++r) succ[from].push_back(idx.of(v, by_rank[r]));
      }
    }
  }
  return succ;
}

}  // namespace

bool is_concordant_table(const RankingTable& t) {
  if (t.size() > kMaxConcordantN) {
    throw Error(ErrorCode::NTooLarge, "full concordance check is limited to n <= " +
                                          std::to_string(kMaxConcordantN));
  }
  const PairIndex idx(t.size());
  const auto succ = orientation(t, idx, true);
  std::vector<std::uint32_t> indegree(succ.size(), 0);
  for (const auto& s : succ) {
    for (auto v : s) ++indegree[v];
  }
  std::vector<std::uint32_t> ready;
  for (std::uint32_t v = 0; v < succ.size(); ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::size_t visited = 0;
  while (!ready.empty()) {
    const auto v = ready.back();
    ready.pop_back();
    ++visited;
    for (auto w : succ[v]) {
      if (--indegree[w] == 0) ready.push_back(w);
    }
  }
  return visited == succ.size();
}

namespace {

void check_loop_limits(const RankingTable& t, int k) {
  if (k < 3 || k > kMaxLoopK) {
    throw Error(ErrorCode::KUnsupported,
                "loop length k must be in 3.." + std::to_string(kMaxLoopK));
  }
  if (t.size() > kMaxLoopN) {
    throw Error(ErrorCode::KUnsupported,
                "loop enumeration is limited to n <= " + std::to_string(kMaxLoopN));
  }
}

// Depth-first search along arcs for directed cycles through `start` whose
// other cells all have larger ids, so each cycle is found exactly once.
void find_cycles(const std::vector<std::vector<std::uint32_t>>& succ, std::uint32_t start,
                 int k, std::vector<std::uint32_t>& path, std::vector<bool>& on_path,
                 std::vector<std::vector<std::uint32_t>>& found, std::size_t limit) {
  const std::uint32_t last = path.back();
  for (auto next : succ[last]) {
    if (found.size() >= limit) return;
    if (next == start && path.size() >= 3) {
      found.push_back(path);
      continue;
    }
    if (next <= start || on_path[next] || static_cast<int>(path.size()) >= k) continue;
    on_path[next] = true;
    path.push_back(next);
    find_cycles(succ, start, k, path, on_path, found, limit);
    path.pop_back();
    on_path[next] = false;
  }
}

std::vector<std::vector<std::uint32_t>> directed_cycles(const RankingTable& t, int k,
                                                        std::size_t limit) {
  check_loop_limits(t, k);
  const PairIndex idx(t.size());
  const auto succ = orientation(t, idx, false);
  std::vector<std::vector<std::uint32_t>> found;
  std::vector<bool> on_path(succ.size(), false);
  std::vector<std::uint32_t> path;
  for (std::uint32_t start = 0; start < succ.size() && found.size() < limit; ++start) {
    path.assign(1, start);
    on_path[start] = true;
    find_cycles(succ, start, k, path, on_path, found, limit);
    on_path[start] = false;
  }
  return found;
}

}  // namespace

bool k_loop_check(const RankingTable& t, int k) { return directed_cycles(t, k, 1).empty(); }

std::vector<std::vector<Link>> cyclic_loops(const RankingTable& t, int k, std::size_t limit) {
  const PairIndex idx(t.size());
  std::vector<std::vector<Link>> out;
  for (const auto& cycle : directed_cycles(t, k, limit)) {
    std::vector<Link> loop;
    for (auto c : cycle) loop.push_back(idx.pairs[c]);
    out.push_back(std::move(loop));
  }
  return out;
}

namespace {

ObjectId shared_object(Link a, Link b) {
  if (a.lo == b.lo || a.lo == b.hi) return a.lo;
  return a.hi;
}

ObjectId other(Link l, ObjectId v) { return l.lo == v ? l.hi : l.lo; }

}  // namespace

bool loop_is_cyclic(const RankingTable& t, const std::vector<Link>& loop) {
  bool forward = true;
  bool backward = true;
  for (std::size_t q = 0; q < loop.size(); ++q) {
    const Link a = loop[q];
    const Link b = loop[(q + 1) % loop.size()];
    const ObjectId v = shared_object(a, b);
    const bool a_first = t.rank(v, other(a, v)) < t.rank(v, other(b, v));
    forward = forward && a_first;
    backward = backward && !a_first;
  }
  return forward || backward;
}

ConcordanceReport is_3_concordant_table(const RankingTable& t, std::size_t sample_limit) {
  ConcordanceReport report;
  report.cyclic_count = count_cyclic_voter_triangles(t);
  report.is_3_concordant = report.cyclic_count == 0;
  const auto n = static_cast<ObjectId>(t.size());
  for (ObjectId i = 0; i < n && report.cyclic_voter_triangles.size() < sample_limit; ++i) {
    for (ObjectId j = i + 1; j < n && report.cyclic_voter_triangles.size() < sample_limit; ++j) {
      for (ObjectId k = j + 1; k < n && report.cyclic_voter_triangles.size() < sample_limit;
           ++k) {
        if (voter_triangle_cyclic(t, i, j, k)) report.cyclic_voter_triangles.push_back({i, j, k});
      }
    }
  }
  if (t.size() <= kMaxLoopN) {
    int up_to = 2;
    for (int k = 3; k <= kMaxLoopK; ++k) {
      auto loops = cyclic_loops(t, k, sample_limit);
      if (!loops.empty()) {
        report.cyclic_loops = std::move(loops);
        break;
      }
      up_to = k;
    }
    report.k_concordant_up_to = up_to;
  }
  return report;
}

namespace {

bool points_from(const OutOrderedDigraph& d, ObjectId v, ObjectId u, ObjectId w) {
  const std::uint32_t pu = d.position(v, u);
  const std::uint32_t pw = d.position(v, w);
  if (pu != kNotFriend && pw != kNotFriend) return pu < pw;
  return pu != kNotFriend;
}

}  // namespace

ConcordanceReport is_3_concordant_ood(const OutOrderedDigraph& d, std::size_t sample_limit) {
  ConcordanceReport report;
  const NeighborGraph g = undirected_neighbor_graph(d);
  for (const Link& e : g.edges()) {
    const ObjectId a = e.lo;
    const ObjectId b = e.hi;
    auto na = g.neighbors(a);
    auto nb = g.neighbors(b);
    std::vector<ObjectId> common;
    std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(),
                          std::back_inserter(common));
    for (ObjectId c : common) {
      if (c <= b) continue;
      const bool pertinent = (d.is_friend(a, b) || d.is_friend(a, c)) &&
                             (d.is_friend(b, a) || d.is_friend(b, c)) &&
                             (d.is_friend(c, a) || d.is_friend(c, b));
      if (!pertinent) continue;
      ++report.pertinent_count;
      const bool x = points_from(d, a, b, c);  // ab -> ac
      const bool y = points_from(d, b, c, a);  // bc -> ab
      const bool z = points_from(d, c, a, b);  // ac -> bc
      if (x == y && y == z) {
        ++report.cyclic_count;
        if (report.cyclic_voter_triangles.size() < sample_limit) {
          report.cyclic_voter_triangles.push_back({a, b, c});
        }
      }
    }
  }
  report.is_3_concordant = report.cyclic_count == 0;
  return report;
}

PartialTable PartialTable::from_table(const RankingTable& t, const std::vector<bool>& owned) {
  PartialTable p;
  p.n = t.size();
  p.owned = owned;
  p.flat.assign(p.n * p.n, 0);
  for (ObjectId i = 0; i < p.n; ++i) {
    if (!owned[i]) continue;
    auto r = t.row(i);
    std::copy(r.begin(), r.end(), p.flat.begin() + static_cast<std::ptrdiff_t>(i * p.n));
  }
  return p;
}

PartialTable read_partial_table(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_content_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      ++line_no;
      auto pos = out.find_first_not_of(" \t\r");
      if (pos == std::string::npos || out[pos] == '#') continue;
      return true;
    }
    return false;
  };
  PartialTable p;
  if (!next_content_line(line) || !(std::istringstream(line) >> p.n) || p.n == 0) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) +
                                           ": expected a positive object count");
  }
  p.owned.assign(p.n, false);
  p.flat.assign(p.n * p.n, 0);
  for (std::size_t i = 0; i < p.n; ++i) {
    if (!next_content_line(line)) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected " +
                                             std::to_string(p.n) + " rows");
    }
    std::istringstream fields(line);
    std::string token;
    std::vector<std::uint32_t> row;
    while (fields >> token) {
      if (token == "-") continue;
      try {
        std::size_t used = 0;
        const unsigned long v = std::stoul(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        row.push_back(static_cast<std::uint32_t>(v));
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(line_no) + ": bad rank '" + token + "'");
      }
    }
    if (row.empty()) continue;  // "-" marks an absent row
    if (row.size() != p.n) {
      throw Error(ErrorCode::MalformedTable,
                  "row " + std::to_string(i) + " has " + std::to_string(row.size()) +
                      " entries, expected " + std::to_string(p.n));
    }
    std::vector<bool> seen(p.n, false);
    for (auto v : row) {
      if (v >= p.n || seen[v]) {
        throw Error(ErrorCode::MalformedTable,
                    "row " + std::to_string(i) + " is not a permutation");
      }
      seen[v] = true;
    }
    if (row[i] != 0) {
      throw Error(ErrorCode::MalformedTable, "row " + std::to_string(i) + " must rank itself 0");
    }
    p.owned[i] = true;
    std::copy(row.begin(), row.end(), p.flat.begin() + static_cast<std::ptrdiff_t>(i * p.n));
  }
  return p;
}

GlueResult glue(const PartialTable& a, const PartialTable& b, std::size_t sample_limit) {
  if (a.n != b.n) {
    throw Error(ErrorCode::DimensionMismatch, "tables cover " + std::to_string(a.n) + " and " +
                                                  std::to_string(b.n) + " objects");
  }
  const std::size_t n = a.n;
  std::vector<std::uint32_t> flat(n * n, 0);
  for (ObjectId i = 0; i < n; ++i) {
    const bool in_a = a.owned[i];
    const bool in_b = b.owned[i];
    if (!in_a && !in_b) {
      throw Error(ErrorCode::DimensionMismatch,
                  "row " + std::to_string(i) + " is owned by neither table");
    }
    if (in_a && in_b && !std::ranges::equal(a.row(i), b.row(i))) {
      throw Error(ErrorCode::OverlapRowMismatch,
                  "overlap row " + std::to_string(i) + " differs between the tables");
    }
    auto src = in_a ? a.row(i) : b.row(i);
    std::copy(src.begin(), src.end(), flat.begin() + static_cast<std::ptrdiff_t>(i * n));
  }
  GlueResult result{RankingTable(n, std::move(flat)), {}, {}};
  result.report = is_3_concordant_table(result.table, sample_limit);

  const auto m = static_cast<ObjectId>(n);
  for (ObjectId i = 0; i < m; ++i) {
    for (ObjectId j = i + 1; j < m; ++j) {
      for (ObjectId k = j + 1; k < m; ++k) {
        if (!voter_triangle_cyclic(result.table, i, j, k)) continue;
        const int from_s = a.owned[i] + a.owned[j] + a.owned[k];
        const int from_s_prime = b.owned[i] + b.owned[j] + b.owned[k];
        std::size_t type = 0;
        if (from_s == 3) {
          type = 0;
        } else if (from_s_prime == 3) {
          type = 3;
        } else {
          type = from_s == 2 ? 1 : 2;
        }
        ++result.cyclic_by_type[type];
      }
    }
  }
  return result;
}

}  // namespace rbl
