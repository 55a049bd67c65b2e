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

#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rbl/concordance.hpp"
#include "rbl/error.hpp"
#include "rbl/io.hpp"
#include "rbl/pipeline.hpp"
#include "rbl/sampling.hpp"

namespace rbl::cli {

namespace {

using nlohmann::json;

class Input {
 public:
  Input(const std::string& path, std::istream& stdin_stream) {
    if (path == "-") {
      stream_ = &stdin_stream;
      return;
    }
    file_ = std::make_unique<std::ifstream>(path);
    if (!*file_) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
    stream_ = file_.get();
  }
  std::istream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ifstream> file_;
  std::istream* stream_ = nullptr;
};

class Output {
 public:
  Output(const std::string& path, std::ostream& stdout_stream) {
    if (path == "-") {
      stream_ = &stdout_stream;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
    stream_ = file_.get();
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::MalformedTable:
    case ErrorCode::InvalidDigraph:
      return kParse;
    case ErrorCode::TiedWeights:
    case ErrorCode::DuplicateArc:
    case ErrorCode::SelfLoop:
      return kConstraint;
    case ErrorCode::AttemptsExhausted:
    case ErrorCode::NTooLarge:
    case ErrorCode::KUnsupported:
      return kExhausted;
    case ErrorCode::OverlapRowMismatch:
      return kMismatch;
    default:
      return kFailure;
  }
}

RngSeed seed_or_entropy(const std::optional<std::uint64_t>& seed) {
  return seed ? RngSeed{*seed} : entropy_seed();
}

std::string percent(double fraction) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(3) << 100.0 * fraction << '%';
  return s.str();
}

// ---- link ----------------------------------------------------------------

struct LinkArgs {
  std::string input;
  std::string output = "-";
  std::string format = "edge-list";
  bool undirected = false;
  std::string mode = "out";
  std::size_t k = 8;
  std::optional<std::uint64_t> t;
  bool two_core = true;
  int threads = 0;
  bool break_ties = false;
  std::string dedupe;
  std::string emit = "tsv";
  bool all_levels = false;
  bool check_concordance = false;
  bool tau = false;
  std::string partition_path;
};

int cmd_link(const LinkArgs& a, std::istream& in, std::ostream& out, std::ostream& err) {
  EdgeList input;
  {
    Input source(a.input, in);
    input = a.format == "table" ? edge_list_from_table(read_ranking_table(source.get()))
                                : read_edge_list(source.get(), a.undirected);
  }
  LinkConfig config;
  config.mode = a.mode == "in" ? ComparatorMode::In : ComparatorMode::Out;
  config.k = a.k;
  config.t = a.t;
  config.two_core = a.two_core;
  config.threads = a.threads;
  config.break_ties = a.break_ties;
  config.dedupe_max = a.dedupe == "max";
  config.check_concordance = a.check_concordance;
  config.with_tau = a.tau;
  const LinkRun run = run_link(input, config);

  {
    Output sink(a.output, out);
    if (a.emit == "json") {
      sink.get() << link_run_json(run, config, a.all_levels).dump(2) << '\n';
    } else if (a.emit == "dot") {
      write_linkage_dot(sink.get(), run.linkage, run.labels, run.levels.critical);
    } else {
      write_linkage_tsv(sink.get(), run.linkage, run.labels);
    }
  }
  if (!a.partition_path.empty()) {
    Output sink(a.partition_path, out);
    write_partition_tsv(sink.get(), run, a.all_levels);
  }

  std::vector<std::size_t> sizes;
  for (const auto& b : run.partition.blocks) sizes.push_back(b.size());
  std::sort(sizes.rbegin(), sizes.rend());
  err << "objects " << input.labels.size() << ", in 2-core " << run.labels.size()
      << ", links " << run.linkage.links.size() << ", critical in-sway ";
  if (run.levels.critical) {
    err << *run.levels.critical;
  } else {
    err << "none";
  }
  err << ", t " << run.t << ", links at t " << run.links_at_t << ", blocks "
      << run.partition.blocks.size();
  if (!sizes.empty()) {
    err << " (sizes";
    for (auto s : sizes) err << ' ' << s;
    err << ')';
  }
  err << '\n';
  if (run.concordance && !run.concordance->is_3_concordant) {
    err << "warning: " << run.concordance->cyclic_count << " of "
        << run.concordance->pertinent_count
        << " pertinent voter triangles are cyclic; in-sway may be biased\n";
  }
  return kOk;
}

// ---- check ---------------------------------------------------------------

struct CheckArgs {
  std::string input;
  std::string format = "table";
  bool undirected = false;
  std::string mode = "out";
  std::optional<std::size_t> k;
  bool break_ties = false;
  std::string dedupe;
  std::string emit = "text";
  std::size_t sample = 10;
};

int cmd_check(const CheckArgs& a, std::istream& in, std::ostream& out) {
  Input source(a.input, in);
  ConcordanceReport report;
  LabelMap labels;
  std::optional<bool> concordant;
  std::size_t n = 0;
  if (a.format == "table") {
    const RankingTable t = read_ranking_table(source.get());
    n = t.size();
    labels = LabelMap::identity(n);
    report = is_3_concordant_table(t, a.sample);
    if (n <= kMaxConcordantN) concordant = is_concordant_table(t);
  } else {
    EdgeList list = read_edge_list(source.get(), a.undirected);
    if (a.mode == "in") list.arcs = transpose_mode(list.arcs);
    ArcBuildOptions options;
    options.ties = a.break_ties ? TiePolicy::BreakByTarget : TiePolicy::Error;
    options.duplicates = a.dedupe == "max" ? DuplicatePolicy::KeepMax : DuplicatePolicy::Error;
    OutOrderedDigraph d = from_weighted_arcs(list.arcs, list.labels.size(), options);
    if (a.k) d = truncate(d, *a.k);
    n = d.size();
    labels = list.labels;
    report = is_3_concordant_ood(d, a.sample);
  }

  if (a.emit == "json") {
    json j = concordance_json(report, labels);
    j["objects"] = n;
    j["is_concordant"] = concordant ? json(*concordant) : json(nullptr);
    out << j.dump(2) << '\n';
    return kOk;
  }
  out << "objects: " << n << '\n';
  out << "ranking system: " << std::boolalpha << report.is_ranking_system << '\n';
  out << "3-concordant: " << report.is_3_concordant << '\n';
  if (a.format == "table") {
    out << "concordant: " << (concordant ? (*concordant ? "true" : "false") : "not checked")
        << '\n';
    if (report.k_concordant_up_to) {
      out << "k-concordant up to: " << *report.k_concordant_up_to << '\n';
    }
  } else {
    out << "pertinent voter triangles: " << report.pertinent_count << '\n';
  }
  out << "cyclic voter triangles: " << report.cyclic_count << '\n';
  for (const auto& tri : report.cyclic_voter_triangles) {
    out << "  " << labels.label(tri[0]) << ' ' << labels.label(tri[1]) << ' '
        << labels.label(tri[2]) << '\n';
  }
  for (const auto& loop : report.cyclic_loops) {
    out << "  cyclic loop:";
    for (const Link& c : loop) out << ' ' << labels.label(c.lo) << labels.label(c.hi);
    out << '\n';
  }
  return kOk;
}

// ---- sample --------------------------------------------------------------

struct SampleArgs {
  std::size_t n = 6;
  std::uint64_t trials = 100000;
  std::optional<std::uint64_t> seed;
  std::size_t samples = 0;
  std::uint64_t max_attempts = 10000000;
  std::string tables_path;
  std::string emit = "text";
};

int cmd_sample(const SampleArgs& a, std::ostream& out) {
  const RngSeed seed = seed_or_entropy(a.seed);
  json j = {{"schema_version", kSchemaVersion}, {"kind", "sample"}, {"n", a.n},
            {"seed", seed.value}};
  std::optional<AcceptanceEstimate> estimate;
  if (a.trials > 0) {
    estimate = estimate_acceptance(a.n, a.trials, seed);
    j["attempts"] = estimate->attempts;
    j["accepted"] = estimate->accepted;
    j["acceptance_rate"] = estimate->rate;
    j["ci95"] = {estimate->ci_low, estimate->ci_high};
    j["mean_attempts"] = estimate->accepted ? json(estimate->mean_attempts) : json(nullptr);
  }
  std::optional<double> rate;
  if (a.samples > 0) {
    const auto tables =
        sample_3_concordant(a.n, a.samples, RngSeed{mix_seed(seed.value, 1000)}, a.max_attempts);
    if (a.n >= 4) {
      const std::size_t per_table = a.n * (a.n - 1) * (a.n - 2) * (a.n - 3) / 24;
      Rng rng(RngSeed{mix_seed(seed.value, 1001)});
      double sum = 0.0;
      for (const auto& t : tables) sum += four_cycle_rate(t, per_table, rng);
      rate = sum / static_cast<double>(tables.size());
      j["four_cycle_rate"] = *rate;
    }
    j["samples"] = a.samples;
    if (!a.tables_path.empty()) {
      std::ofstream file(a.tables_path);
      if (!file) throw Error(ErrorCode::ParseError, "cannot write '" + a.tables_path + "'");
      for (const auto& t : tables) {
        write_ranking_table(file, t);
        file << '\n';
      }
    }
  }
  if (a.emit == "json") {
    out << j.dump(2) << '\n';
    return kOk;
  }
  out << "n: " << a.n << "\nseed: " << seed.value << '\n';
  if (estimate) {
    out << "attempts: " << estimate->attempts << "\naccepted: " << estimate->accepted
        << "\nacceptance rate: " << percent(estimate->rate) << " (95% CI "
        << percent(estimate->ci_low) << " - " << percent(estimate->ci_high) << ")\n";
    if (estimate->accepted) out << "mean attempts: " << estimate->mean_attempts << '\n';
  }
  if (rate) out << "4-cycle rate over " << a.samples << " samples: " << percent(*rate) << '\n';
  return kOk;
}

// ---- walk ----------------------------------------------------------------

struct WalkArgs {
  std::size_t n = 8;
  std::uint64_t steps = 10000;
  std::optional<std::uint64_t> seed;
  bool audit = false;
  std::string output;
  std::string emit = "text";
};

int cmd_walk(const WalkArgs& a, std::ostream& out) {
  const RngSeed seed = seed_or_entropy(a.seed);
  const WalkResult r = random_walk(a.n, a.steps, seed, a.audit);
  if (!a.output.empty()) {
    Output sink(a.output, out);
    write_ranking_table(sink.get(), r.state.table);
  }
  const bool final_ok = is_3_concordant(r.state.table);
  if (a.emit == "json") {
    json j = {{"schema_version", kSchemaVersion},
              {"kind", "walk"},
              {"n", a.n},
              {"seed", seed.value},
              {"steps", r.state.steps_taken},
              {"rejections", r.state.rejections},
              {"audited", r.audited},
              {"audit_failures", r.audit_failures},
              {"final_3_concordant", final_ok}};
    out << j.dump(2) << '\n';
  } else if (a.output != "-") {
    out << "n: " << a.n << "\nseed: " << seed.value << "\nsteps: " << r.state.steps_taken
        << "\nrejections: " << r.state.rejections << "\naudited: " << r.audited
        << "\naudit failures: " << r.audit_failures
        << "\nfinal 3-concordant: " << std::boolalpha << final_ok << '\n';
  }
  return r.audit_failures == 0 && final_ok ? kOk : kFailure;
}

// ---- enum ----------------------------------------------------------------

struct EnumArgs {
  std::size_t n = 4;
  bool extensions = false;
  std::string emit = "text";
};

int cmd_enum(const EnumArgs& a, std::ostream& out) {
  const EnumerationResult r = enumerate_3_concordant(a.n);
  json j = enumeration_json(r);
  std::uint64_t ext_all = 0, ext_non4 = 0;
  if (a.extensions) {
    for_each_3_concordant(a.n, [&](const RankingTable& t) {
      const std::uint64_t c = count_extensions(t);
      ext_all += c;
      if (a.n >= 4 && !k_loop_check(t, 4)) ext_non4 += c;
    });
    j["extensions"] = {{"all", ext_all}, {"non_4_concordant", ext_non4}};
  }
  if (a.emit == "json") {
    out << j.dump(2) << '\n';
    return kOk;
  }
  out << "total tables: " << r.total << "\n3-concordant: " << r.concordant_3
      << "\nnot 4-concordant: " << r.non_4_concordant << '\n';
  if (a.n >= 4) {
    out << "cyclic 4-loop (01,12,23,30): " << r.loop_cyclic[0]
        << "\ncyclic 4-loop (01,13,32,20): " << r.loop_cyclic[1]
        << "\ncyclic 4-loop (02,21,13,30): " << r.loop_cyclic[2] << '\n';
  }
  if (a.extensions) {
    out << "extensions, all 3-concordant: " << ext_all
        << "\nextensions, not 4-concordant: " << ext_non4 << '\n';
  }
  return kOk;
}

// ---- glue ----------------------------------------------------------------

struct GlueArgs {
  std::string a;
  std::string b;
  std::vector<ObjectId> overlap;
  bool overlap_given = false;
  std::string output = "-";
  std::string report_path;
  std::size_t sample = 10;
};

int cmd_glue(const GlueArgs& g, std::istream& in, std::ostream& out, std::ostream& err) {
  PartialTable a, b;
  {
    Input src(g.a, in);
    a = read_partial_table(src.get());
  }
  {
    Input src(g.b, in);
    b = read_partial_table(src.get());
  }
  if (g.overlap_given) {
    std::vector<ObjectId> actual;
    for (ObjectId i = 0; i < std::min(a.n, b.n); ++i) {
      if (a.owned[i] && b.owned[i]) actual.push_back(i);
    }
    std::vector<ObjectId> wanted = g.overlap;
    std::sort(wanted.begin(), wanted.end());
    if (wanted != actual) {
      throw Error(ErrorCode::DimensionMismatch,
                  "--overlap does not match the rows present in both tables");
    }
  }
  const GlueResult r = glue(a, b, g.sample);
  {
    Output sink(g.output, out);
    write_ranking_table(sink.get(), r.table);
  }
  json j = concordance_json(r.report, LabelMap::identity(r.table.size()));
  j["kind"] = "glue";
  j["cyclic_by_type"] = {{"all_in_s", r.cyclic_by_type[0]},
                         {"two_in_s", r.cyclic_by_type[1]},
                         {"two_in_s_prime", r.cyclic_by_type[2]},
                         {"all_in_s_prime", r.cyclic_by_type[3]}};
  if (!g.report_path.empty()) {
    Output sink(g.report_path, out);
    sink.get() << j.dump(2) << '\n';
  }
  err << "glued " << r.table.size() << " objects; 3-concordant: " << std::boolalpha
      << r.report.is_3_concordant << "; cyclic triangles by type: " << r.cyclic_by_type[0]
      << ' ' << r.cyclic_by_type[1] << ' ' << r.cyclic_by_type[2] << ' '
      << r.cyclic_by_type[3] << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Rank-based linkage: clustering from ordinal neighbor data"};
  app.name("rbl");
  app.require_subcommand(1);

  LinkArgs link;
  auto* link_cmd = app.add_subcommand("link", "Linkage graph and partition from weighted arcs");
  link_cmd->add_option("input", link.input, "Edge list or ranking table ('-' for stdin)")
      ->required();
  link_cmd->add_option("-o,--output", link.output, "Linkage output ('-' for stdout)");
  link_cmd->add_option("--format", link.format, "Input format")
      ->check(CLI::IsMember({"edge-list", "table"}));
  link_cmd->add_flag("--undirected", link.undirected, "Each record (x,y,w) also adds (y,x,w)");
  link_cmd->add_option("--mode", link.mode, "Comparator: out (whither) or in (whence)")
      ->check(CLI::IsMember({"out", "in"}));
  link_cmd->add_option("--k", link.k, "Friend-list bound K")->check(CLI::PositiveNumber);
  link_cmd->add_option("--t", link.t, "Threshold (default: critical in-sway + 1)");
  link_cmd->add_flag("--two-core,!--no-two-core", link.two_core,
                     "Restrict to the 2-core of the undirected input (default on)");
  link_cmd->add_option("--threads", link.threads, "Linkage worker threads (0: all)");
  link_cmd->add_flag("--break-ties", link.break_ties, "Order tied weights by target");
  link_cmd->add_option("--dedupe", link.dedupe, "Keep the maximum of duplicate arcs")
      ->check(CLI::IsMember({"max"}));
  link_cmd->add_option("--emit", link.emit, "Linkage output format")
      ->check(CLI::IsMember({"tsv", "json", "dot"}));
  link_cmd->add_flag("--all-levels", link.all_levels, "Emit the partition at every level");
  link_cmd->add_flag("--check-concordance", link.check_concordance,
                     "Count cyclic pertinent voter triangles");
  link_cmd->add_flag("--tau", link.tau, "Also compute tau on the K-NN edges (json)");
  link_cmd->add_option("--partition", link.partition_path, "Write the partition as TSV");

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Concordance report for a table or digraph");
  check_cmd->add_option("input", check.input, "Input ('-' for stdin)")->required();
  check_cmd->add_option("--format", check.format, "Input format")
      ->check(CLI::IsMember({"edge-list", "table"}));
  check_cmd->add_flag("--undirected", check.undirected, "Each record also adds (y,x,w)");
  check_cmd->add_option("--mode", check.mode, "Comparator mode")
      ->check(CLI::IsMember({"out", "in"}));
  check_cmd->add_option("--k", check.k, "Truncate friend lists to K")
      ->check(CLI::PositiveNumber);
  check_cmd->add_flag("--break-ties", check.break_ties, "Order tied weights by target");
  check_cmd->add_option("--dedupe", check.dedupe, "Keep the maximum of duplicate arcs")
      ->check(CLI::IsMember({"max"}));
  check_cmd->add_option("--emit", check.emit, "Report format")
      ->check(CLI::IsMember({"text", "json"}));
  check_cmd->add_option("--sample", check.sample, "Cyclic triangles and loops to list");

  SampleArgs sample;
  auto* sample_cmd = app.add_subcommand("sample", "Rejection sampling of 3-concordant tables");
  sample_cmd->add_option("--n", sample.n, "Objects")->check(CLI::Range(2, 64));
  sample_cmd->add_option("--trials", sample.trials, "Uniform tables drawn for the rate");
  sample_cmd->add_option("--seed", sample.seed, "RNG seed (default: OS entropy)");
  sample_cmd->add_option("--samples", sample.samples,
                         "Accepted tables to draw for the 4-cycle rate");
  sample_cmd->add_option("--max-attempts", sample.max_attempts, "Attempts allowed per sample");
  sample_cmd->add_option("--tables", sample.tables_path, "Write the accepted tables here");
  sample_cmd->add_option("--emit", sample.emit, "Summary format")
      ->check(CLI::IsMember({"text", "json"}));

  WalkArgs walk;
  auto* walk_cmd = app.add_subcommand("walk", "Consecutive-transposition random walk");
  walk_cmd->add_option("--n", walk.n, "Objects")->check(CLI::Range(2, 4096));
  walk_cmd->add_option("--steps", walk.steps, "Steps");
  walk_cmd->add_option("--seed", walk.seed, "RNG seed (default: OS entropy)");
  walk_cmd->add_flag("--audit", walk.audit, "Re-check 3-concordance after every step");
  walk_cmd->add_option("-o,--output", walk.output, "Write the final table ('-' for stdout)");
  walk_cmd->add_option("--emit", walk.emit, "Summary format")
      ->check(CLI::IsMember({"text", "json"}));

  EnumArgs enumeration;
  auto* enum_cmd = app.add_subcommand("enum", "Exhaustive census of small ranking systems");
  enum_cmd->add_option("--n", enumeration.n, "Objects (at most 5)")->check(CLI::Range(1, 64));
  enum_cmd->add_flag("--extensions", enumeration.extensions,
                     "Sum one-object extension counts");
  enum_cmd->add_option("--emit", enumeration.emit, "Summary format")
      ->check(CLI::IsMember({"text", "json"}));

  GlueArgs glue_args;
  auto* glue_cmd = app.add_subcommand("glue", "Glue two partial ranking tables");
  glue_cmd->add_option("a", glue_args.a, "Table owning S ('-' rows are absent)")->required();
  glue_cmd->add_option("b", glue_args.b, "Table owning S'")->required();
  auto* overlap_opt = glue_cmd->add_option("--overlap", glue_args.overlap,
                                           "Expected overlap rows")->delimiter(',');
  glue_cmd->add_option("-o,--output", glue_args.output, "Glued table ('-' for stdout)");
  glue_cmd->add_option("--report", glue_args.report_path, "Write the JSON report here");
  glue_cmd->add_option("--sample", glue_args.sample, "Cyclic triangles to list");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "rbl: " << e.what() << '\n';
    return kFailure;
  }

  try {
    if (*link_cmd) return cmd_link(link, in, out, err);
    if (*check_cmd) return cmd_check(check, in, out);
    if (*sample_cmd) return cmd_sample(sample, out);
    if (*walk_cmd) return cmd_walk(walk, out);
    if (*enum_cmd) return cmd_enum(enumeration, out);
    if (*glue_cmd) {
      glue_args.overlap_given = overlap_opt->count() > 0;
      return cmd_glue(glue_args, in, out, err);
    }
  } catch (const Error& e) {
    err << "rbl: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "rbl: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}

}  // namespace rbl::cli
