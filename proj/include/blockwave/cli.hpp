#pragma once

// Command-line front end. run_cli() is the whole program; main() only
// forwards argv, which keeps every subcommand testable in-process.
//
// Exit status: 0 success, 1 internal error, 2 bad input (flags, files, data).

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "blockwave/alignment.hpp"
#include "blockwave/batch_runner.hpp"
#include "blockwave/error.hpp"
#include "blockwave/readsim.hpp"
#include "blockwave/report_io.hpp"
#include "blockwave/seqpack.hpp"

namespace blockwave::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;

struct CommonFlags {
  ScoringScheme scheme;  // defaults 1 / -4 / 6 / 1
  std::string engine = "wavefront";
  int group_size = 16;
  std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
  std::string json_metrics;
};

struct AlignFlags {
  std::string query;
  std::string target;
};

struct BenchFlags {
  std::vector<std::size_t> lengths = {64, 128, 256, 512, 1024, 2048, 4096};
  std::size_t batch = 5000;
  std::size_t reps = 1;
  std::vector<std::string> engines = {"wavefront", "baseline"};
  std::uint64_t seed = 1;
  bool counters_only = false;
};

struct SimulateFlags {
  std::size_t length = 250;
  std::size_t min_length = 0;
  std::size_t max_length = 0;
  long long count = 1000;
  double sub_rate = 0.01;
  double ins_rate = 0.001;
  double del_rate = 0.001;
  std::uint64_t seed = 1;
  std::size_t ref_length = 1000000;
  std::string out;
};

struct StatsFlags {
  std::string query;
  std::string target;
  long long bin = 25;
};

namespace detail {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline EngineKind parse_engine(const std::string& name) {
  if (name == "wavefront") return EngineKind::wavefront;
  if (name == "baseline") return EngineKind::baseline;
  if (name == "oracle") return EngineKind::oracle;
  throw InputError("unknown engine '" + name + "' (expected wavefront, baseline or oracle)");
}

inline std::vector<FastaRecord> load_fasta(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return read_fasta(in);
  } catch (const error& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline std::vector<AlignmentTask> load_pairs(const std::string& query_path, const std::string& target_path) {
  auto queries = load_fasta(query_path);
  auto targets = load_fasta(target_path);
  if (queries.size() != targets.size()) {
    throw InputError("record counts differ: " + query_path + " has " + std::to_string(queries.size()) + ", " +
                     target_path + " has " + std::to_string(targets.size()));
  }
  if (queries.empty()) throw InputError("no records in " + query_path);
  std::vector<AlignmentTask> tasks;
  tasks.reserve(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) {
    tasks.push_back({queries[i].name, std::move(queries[i].sequence), std::move(targets[i].sequence)});
  }
  return tasks;
}

inline EngineConfig make_config(const CommonFlags& f, EngineKind kind) {
  EngineConfig c;
  c.group_size = f.group_size;
  c.engine = kind;
  return c;
}

// Rejects bad scoring/engine flags before any work starts.
inline void check_common(const CommonFlags& f) {
  try {
    validate(f.scheme);
    validate(make_config(f, parse_engine(f.engine)));
  } catch (const error& e) {
    throw InputError(e.what());
  }
  if (f.threads < 1) throw InputError("--threads must be >= 1");
}

inline void write_json(const std::string& path, const nlohmann::json& j) {
  if (path.empty()) return;
  std::ofstream os(path);
  if (!os) throw InputError("cannot write '" + path + "'");
  os << j.dump(2) << '\n';
}

inline void add_common(CLI::App* app, CommonFlags& f, bool with_engine) {
  app->add_option("--match", f.scheme.match_score, "Score for a matching base pair (>= 1)")->capture_default_str();
  app->add_option("--mismatch", f.scheme.mismatch_score, "Score for a mismatch or any N (<= -1)")
      ->capture_default_str();
  app->add_option("--gap-open", f.scheme.gap_open,
                  "Penalty for the first base of a gap (literal; BWA-MEM o=6,e=1 is --gap-open 7)")
      ->capture_default_str();
  app->add_option("--gap-extend", f.scheme.gap_extend, "Penalty for each further gap base")->capture_default_str();
  if (with_engine) {
    app->add_option("--engine", f.engine, "wavefront | baseline | oracle")->capture_default_str();
  }
  app->add_option("--group-size", f.group_size, "Lanes per group: 1, 2, 4, 8, 16 or 32")->capture_default_str();
  app->add_option("--threads", f.threads, "Worker threads")->capture_default_str();
  app->add_option("--json-metrics", f.json_metrics, "Write a JSON report to this path");
}

inline int cmd_align(const CommonFlags& common, const AlignFlags& flags, std::ostream& out) {
  check_common(common);
  const auto tasks = load_pairs(flags.query, flags.target);
  const BatchReport report = run_batch(tasks, common.scheme, make_config(common, parse_engine(common.engine)),
                                       {.worker_count = common.threads});
  write_alignment_tsv(out, report.results);
  if (!common.json_metrics.empty()) {
    nlohmann::json j = to_json(report);
    j["engine"] = common.engine;
    j["group_size"] = common.group_size;
    write_json(common.json_metrics, j);
  }
  return kExitOk;
}

inline int cmd_bench(const CommonFlags& common, const BenchFlags& flags, std::ostream& out) {
  check_common(common);
  if (flags.batch < 1) throw InputError("--batch must be >= 1");
  if (flags.reps < 1) throw InputError("--reps must be >= 1");
  if (flags.lengths.empty()) throw InputError("--lengths is empty");
  std::vector<EngineKind> engines;
  for (const auto& e : flags.engines) engines.push_back(parse_engine(e));
  for (auto len : flags.lengths) {
    if (len < 8) throw InputError("bench lengths must be >= 8, got " + std::to_string(len));
  }

  const std::size_t longest = *std::max_element(flags.lengths.begin(), flags.lengths.end());
  const std::string reference = generate_reference(std::max<std::size_t>(longest * 4, 100000), flags.seed);

  nlohmann::json rows = nlohmann::json::array();
  out << "engine\tlength\tgroup_size\tcells_per_s\twall_ms\tspill_transactions\teager_equiv\tboundary_cells_written\n";
  for (auto len : flags.lengths) {
    SimProfile profile;
    profile.min_length = profile.max_length = len;
    profile.count = flags.batch;
    profile.rng_seed = flags.seed + len;
    // Substitutions only, so every pair is exactly len x len.
    profile.ins_rate = profile.del_rate = 0.0;
    const auto tasks = generate_pairs(reference, profile);

    for (std::size_t e = 0; e < engines.size(); ++e) {
      EngineConfig config = make_config(common, engines[e]);
      config.counters_only = flags.counters_only;
      double wall = 0.0;
      BatchReport report;
      for (std::size_t rep = 0; rep < flags.reps; ++rep) {
        report = run_batch(tasks, common.scheme, config, {.worker_count = common.threads});
        wall += report.wall_seconds;
      }
      wall /= static_cast<double>(flags.reps);
      const double cells_per_s = wall > 0 ? static_cast<double>(report.cells) / wall : 0.0;
      const auto& c = report.counters;

      out << flags.engines[e] << '\t' << len << '\t' << common.group_size << '\t';
      if (flags.counters_only) out << "NA";
      else out << static_cast<std::uint64_t>(cells_per_s);
      out << '\t' << wall * 1e3 << '\t' << c.spill_transactions << '\t' << c.eager_transactions_equiv << '\t'
          << c.boundary_cells_written << '\n';

      rows.push_back({{"engine", flags.engines[e]},
                      {"length", len},
                      {"group_size", common.group_size},
                      {"batch", flags.batch},
                      {"reps", flags.reps},
                      {"counters_only", flags.counters_only},
                      {"cells", report.cells},
                      {"cells_per_s", cells_per_s},
                      {"wall_ms", wall * 1e3},
                      {"counters", to_json(c)}});
    }
  }
  write_json(common.json_metrics, rows);
  return kExitOk;
}

inline int cmd_simulate(const SimulateFlags& flags, std::ostream& out) {
  if (flags.count < 1) throw InputError("--count must be >= 1");
  if (flags.out.empty()) throw InputError("--out is required");
  SimProfile profile;
  if ((flags.min_length == 0) != (flags.max_length == 0)) {
    throw InputError("--min-length and --max-length must be given together");
  }
  profile.min_length = flags.min_length ? flags.min_length : flags.length;
  profile.max_length = flags.max_length ? flags.max_length : flags.length;
  profile.count = static_cast<std::size_t>(flags.count);
  profile.sub_rate = flags.sub_rate;
  profile.ins_rate = flags.ins_rate;
  profile.del_rate = flags.del_rate;
  profile.rng_seed = flags.seed;

  std::vector<SimulatedPair> pairs;
  try {
    validate(profile);
    const std::string reference = generate_reference(std::max(flags.ref_length, profile.max_length), flags.seed);
    pairs = generate_pair_texts(reference, profile);
  } catch (const error& e) {
    throw InputError(e.what());
  }

  const std::string query_path = flags.out + ".query.fa";
  const std::string target_path = flags.out + ".target.fa";
  std::ofstream qf(query_path), tf(target_path);
  if (!qf) throw InputError("cannot write '" + query_path + "'");
  if (!tf) throw InputError("cannot write '" + target_path + "'");
  for (const auto& p : pairs) {
    write_fasta_record(qf, p.id, p.query);
    write_fasta_record(tf, p.id, p.target);
  }
  out << "wrote " << pairs.size() << " pairs to " << query_path << " and " << target_path << '\n';
  return kExitOk;
}

inline int cmd_stats(const StatsFlags& flags, const std::string& json_path, std::ostream& out) {
  if (flags.bin < 1) throw InputError("--bin must be >= 1");
  const auto tasks = load_pairs(flags.query, flags.target);
  const LengthHistogram h = length_histogram(tasks, static_cast<std::size_t>(flags.bin));
  std::vector<std::uint64_t> costs;
  costs.reserve(tasks.size());
  std::size_t q_min = SIZE_MAX, q_max = 0, t_min = SIZE_MAX, t_max = 0;
  for (const auto& t : tasks) {
    costs.push_back(task_cost(t));
    q_min = std::min(q_min, t.query.length());
    q_max = std::max(q_max, t.query.length());
    t_min = std::min(t_min, t.target.length());
    t_max = std::max(t_max, t.target.length());
  }
  write_histogram_tsv(out, h);
  nlohmann::json j = {{"task_count", tasks.size()},
                      {"imbalance", to_json(imbalance_of(costs))},
                      {"query_length", {{"min", q_min}, {"max", q_max}}},
                      {"target_length", {{"min", t_min}, {"max", t_max}}},
                      {"histogram", to_json(h)}};
  write_json(json_path, j);
  return kExitOk;
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Blocked anti-diagonal wavefront local aligner", "blockwave"};
  app.require_subcommand(1);

  CommonFlags common;
  AlignFlags align;
  BenchFlags bench;
  SimulateFlags sim;
  StatsFlags stats;
  std::string stats_json;

  auto* a = app.add_subcommand("align", "Align record i of --query against record i of --target");
  a->add_option("--query", align.query, "Query FASTA")->required();
  a->add_option("--target", align.target, "Target FASTA")->required();
  detail::add_common(a, common, true);

  auto* b = app.add_subcommand("bench", "Throughput and traffic sweep over simulated equal-length batches");
  b->add_option("--lengths", bench.lengths, "Read lengths")->delimiter(',')->capture_default_str();
  b->add_option("--batch", bench.batch, "Pairs per length")->capture_default_str();
  b->add_option("--reps", bench.reps, "Repetitions averaged per length")->capture_default_str();
  b->add_option("--engines", bench.engines, "Engines to run")->delimiter(',')->capture_default_str();
  b->add_option("--seed", bench.seed)->capture_default_str();
  b->add_flag("--counters-only", bench.counters_only, "Run schedules and traffic accounting without DP");
  detail::add_common(b, common, false);

  auto* s = app.add_subcommand("simulate", "Write <out>.query.fa and <out>.target.fa with simulated pairs");
  s->add_option("--length", sim.length, "Fixed read length")->capture_default_str();
  s->add_option("--min-length", sim.min_length, "Lower end of a uniform length range");
  s->add_option("--max-length", sim.max_length, "Upper end of a uniform length range");
  s->add_option("--count", sim.count, "Number of pairs")->capture_default_str();
  s->add_option("--sub-rate", sim.sub_rate)->capture_default_str();
  s->add_option("--ins-rate", sim.ins_rate)->capture_default_str();
  s->add_option("--del-rate", sim.del_rate)->capture_default_str();
  s->add_option("--seed", sim.seed)->capture_default_str();
  s->add_option("--ref-length", sim.ref_length, "Length of the random reference")->capture_default_str();
  s->add_option("--out", sim.out, "Output path prefix")->required();

  auto* st = app.add_subcommand("stats", "Length histogram TSV and workload imbalance JSON");
  st->add_option("--query", stats.query, "Query FASTA")->required();
  st->add_option("--target", stats.target, "Target FASTA")->required();
  st->add_option("--bin", stats.bin, "Histogram bin width in bp")->capture_default_str();
  st->add_option("--json-metrics", stats_json, "Write imbalance JSON to this path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (a->parsed()) return detail::cmd_align(common, align, out);
    if (b->parsed()) return detail::cmd_bench(common, bench, out);
    if (s->parsed()) return detail::cmd_simulate(sim, out);
    if (st->parsed()) return detail::cmd_stats(stats, stats_json, out);
  } catch (const detail::InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == errc::task_failed ? kExitInternal : kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace blockwave::cli
