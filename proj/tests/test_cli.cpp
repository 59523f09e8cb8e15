#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "blockwave/cli.hpp"
#include "json.hpp"

using blockwave::cli::run_cli;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string tmp(const std::string& name) {
  const fs::path dir = fs::path(BLOCKWAVE_TEST_TMP) / "cli_tmp";
  fs::create_directories(dir);
  return (dir / name).string();
}

std::string write_file(const std::string& name, const std::string& body) {
  const std::string path = tmp(name);
  std::ofstream(path) << body;
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, AlignTwoRecords) {
  const auto q = write_file("q2.fa", ">a\nACGT\n>b\nACGT\n");
  const auto t = write_file("t2.fa", ">a\nACGT\n>b\nACGT\n");
  const auto r = cli({"align", "--query", q, "--target", t, "--match", "1"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "a\t4\t3\t3\nb\t4\t3\t3\n");
}

TEST(Cli, AlignRecordCountMismatch) {
  const auto q = write_file("q3.fa", ">a\nACGT\n>b\nACGT\n>c\nA\n");
  const auto t = write_file("t1.fa", ">a\nACGT\n");
  const auto r = cli({"align", "--query", q, "--target", t});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("has 3"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("has 1"), std::string::npos) << r.err;
}

TEST(Cli, AlignInputErrors) {
  const auto good = write_file("good.fa", ">a\nACGT\n");
  const auto bad = write_file("bad.fa", "ACGT\n");
  EXPECT_EQ(cli({"align", "--query", bad, "--target", good}).code, 2);
  const auto r = cli({"align", "--query", good, "--target", tmp("missing.fa")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("missing.fa"), std::string::npos);
  EXPECT_EQ(cli({"align", "--query", good, "--target", good, "--group-size", "3"}).code, 2);
  EXPECT_EQ(cli({"align", "--query", good, "--target", good, "--mismatch", "1"}).code, 2);
  EXPECT_EQ(cli({"align", "--query", good, "--target", good, "--gap-open", "1", "--gap-extend", "2"}).code, 2);
  EXPECT_EQ(cli({"align", "--query", good, "--target", good, "--engine", "gpu"}).code, 2);
  EXPECT_EQ(cli({"align", "--query", good}).code, 2);
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(Cli, NegativeMismatchFlag) {
  const auto q = write_file("qm.fa", ">a\nACGTTACGT\n");
  const auto t = write_file("tm.fa", ">a\nACGTAACGT\n");
  const auto soft = cli({"align", "--query", q, "--target", t, "--mismatch", "-1"});
  const auto hard = cli({"align", "--query", q, "--target", t, "--mismatch=-8"});
  EXPECT_EQ(soft.out, "a\t7\t8\t8\n");
  EXPECT_EQ(hard.out, "a\t4\t3\t3\n");
}

TEST(Cli, SimulateAlignRoundTripAndEngineAgreement) {
  const auto prefix = tmp("sim");
  const auto s = cli({"simulate", "--length", "250", "--count", "200", "--seed", "7", "--out", prefix});
  ASSERT_EQ(s.code, 0) << s.err;
  const auto q = prefix + ".query.fa", t = prefix + ".target.fa";

  const auto wave = cli({"align", "--query", q, "--target", t, "--engine", "wavefront", "--threads", "2",
                         "--json-metrics", tmp("align.json")});
  const auto base = cli({"align", "--query", q, "--target", t, "--engine", "baseline"});
  const auto orac = cli({"align", "--query", q, "--target", t, "--engine", "oracle"});
  ASSERT_EQ(wave.code, 0) << wave.err;
  EXPECT_EQ(wave.out, orac.out);
  EXPECT_EQ(base.out, orac.out);

  std::istringstream rows(wave.out);
  std::string id;
  int score, good = 0, n = 0;
  std::size_t eq, et;
  while (rows >> id >> score >> eq >> et) {
    ++n;
    good += score >= 200;
  }
  EXPECT_EQ(n, 200);
  EXPECT_GE(good, 198);

  const auto j = nlohmann::json::parse(slurp(tmp("align.json")));
  EXPECT_EQ(j["task_count"], 200);
  EXPECT_EQ(j["results"].size(), 200u);
  EXPECT_EQ(j["engine"], "wavefront");
}

TEST(Cli, SimulateIsDeterministic) {
  ASSERT_EQ(cli({"simulate", "--count", "20", "--seed", "3", "--out", tmp("d1")}).code, 0);
  ASSERT_EQ(cli({"simulate", "--count", "20", "--seed", "3", "--out", tmp("d2")}).code, 0);
  EXPECT_EQ(slurp(tmp("d1.query.fa")), slurp(tmp("d2.query.fa")));
  EXPECT_EQ(slurp(tmp("d1.target.fa")), slurp(tmp("d2.target.fa")));
  ASSERT_EQ(cli({"simulate", "--count", "20", "--seed", "4", "--out", tmp("d3")}).code, 0);
  EXPECT_NE(slurp(tmp("d1.query.fa")), slurp(tmp("d3.query.fa")));
}

TEST(Cli, SimulateRejectsBadProfiles) {
  EXPECT_EQ(cli({"simulate", "--count", "0", "--out", tmp("z")}).code, 2);
  EXPECT_EQ(cli({"simulate", "--sub-rate", "0.9", "--ins-rate", "0.2", "--out", tmp("z")}).code, 2);
  EXPECT_EQ(cli({"simulate", "--min-length", "10", "--out", tmp("z")}).code, 2);
}

TEST(Cli, StatsHistogramAndImbalance) {
  const auto q = write_file("sq.fa", ">a\nACGTACGTAC\n");
  const auto t = write_file("st.fa", ">a\nACGTACGTACGTACGTACGTACGTACGTAC\n");
  const auto r = cli({"stats", "--query", q, "--target", t, "--bin", "25", "--json-metrics", tmp("stats.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "bin_start\tquery_count\ttarget_count\n0\t1\t0\n25\t0\t1\n");
  const auto j = nlohmann::json::parse(slurp(tmp("stats.json")));
  EXPECT_DOUBLE_EQ(j["imbalance"]["max_over_mean"].get<double>(), 1.0);
  EXPECT_EQ(cli({"stats", "--query", q, "--target", t, "--bin", "0"}).code, 2);
}

TEST(Cli, StatsOnUniformBatchIsFlat) {
  const auto prefix = tmp("uni");
  ASSERT_EQ(cli({"simulate", "--min-length", "1", "--max-length", "250", "--count", "5000", "--sub-rate", "0",
                 "--ins-rate", "0", "--del-rate", "0", "--out", prefix})
                .code,
            0);
  const auto r = cli({"stats", "--query", prefix + ".query.fa", "--target", prefix + ".target.fa", "--bin", "25"});
  ASSERT_EQ(r.code, 0);
  std::istringstream rows(r.out);
  std::string header;
  std::getline(rows, header);
  std::size_t bin, qc, tc;
  while (rows >> bin >> qc >> tc) {
    if (bin >= 25 && bin < 250) {
      EXPECT_NEAR(double(tc), 500.0, 90.0) << "bin " << bin;
    }
  }
}

TEST(Cli, BenchSmoke) {
  const auto r = cli({"bench", "--lengths", "64,128,256", "--batch", "1", "--group-size", "4", "--threads", "1",
                      "--json-metrics", tmp("bench.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream rows(r.out);
  std::string line;
  std::getline(rows, line);
  EXPECT_EQ(line, "engine\tlength\tgroup_size\tcells_per_s\twall_ms\tspill_transactions\teager_equiv\tboundary_cells_written");
  int n = 0;
  while (std::getline(rows, line)) ++n;
  EXPECT_EQ(n, 6);

  const auto j = nlohmann::json::parse(slurp(tmp("bench.json")));
  for (const auto& row : j) {
    if (row["engine"] != "wavefront") continue;
    const auto& c = row["counters"];
    EXPECT_EQ(c["spill_transactions"].get<std::uint64_t>() * 4, c["eager_transactions_equiv"].get<std::uint64_t>());
  }
  EXPECT_EQ(cli({"bench", "--lengths", "4", "--batch", "1"}).code, 2);
  EXPECT_EQ(cli({"bench", "--lengths", "64", "--batch", "0"}).code, 2);
}
