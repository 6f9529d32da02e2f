#include <filesystem>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "json.hpp"
#include "test_support.hpp"

namespace anx {
namespace {

using testing::jsonl_post;
using testing::read_file;
using testing::run_command;
using testing::TempDir;
using testing::write_file;

const std::string kBin = ANXSCOPE_BIN;
const std::string kLexicon = std::string(ANX_DATA_DIR) + "/sample/lexicon.tsv";

std::string q(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    std::ostringstream os;
    for (int i = 0; i < 20; ++i) {
      os << jsonl_post(std::to_string(i), i % 2 ? "i panic at work" : "calm day at home",
                       "2021-03-0" + std::to_string(1 + i % 7) + "T08:" + (i < 10 ? "0" : "") +
                           std::to_string(i) + ":00Z",
                       "UTC")
         << '\n';
    }
    write_file(dir / "hour8.jsonl", os.str());
  }

  int run(const std::string& args) { return run_command(kBin + " " + args); }
  std::string base(const std::string& sub) {
    return sub + " --lexicon " + q(kLexicon) + " --corpus " + q(dir / "hour8.jsonl") + " --out " +
           q(dir / "out");
  }

  TempDir dir;
};

TEST_F(Cli, HelpAndVersionSucceed) {
  EXPECT_EQ(run("--help"), 0);
  EXPECT_EQ(run("--version"), 0);
  EXPECT_EQ(run("analyze-hour --help"), 0);
}

TEST_F(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(run(""), 1);
  EXPECT_EQ(run("frobnicate"), 1);
  EXPECT_EQ(run("analyze-hour --corpus x.jsonl"), 1);  // --lexicon missing
  EXPECT_EQ(run(base("analyze-hour") + " --bogus"), 1);
  EXPECT_EQ(run(base("analyze-hour") + " --format xml"), 1);
  EXPECT_EQ(run(base("analyze-hour") + " --workers 0"), 1);
}

TEST_F(Cli, ConfigErrorsExitOne) {
  EXPECT_EQ(run(base("analyze-hour") + " --tau-anx -0.5"), 1);
  EXPECT_EQ(run(base("analyze-hour") + " --tau-calm 0.5"), 1);
  EXPECT_EQ(run(base("analyze-hour") + " --alpha 1.5"), 1);
  EXPECT_EQ(run(base("compare") + " --slice-a hour:25 --slice-b all"), 1);
}

TEST_F(Cli, DataErrorsExitTwo) {
  EXPECT_EQ(run("analyze-hour --lexicon " + q(kLexicon) + " --corpus " + q(dir / "missing.jsonl")), 2);
  write_file(dir / "bad.tsv", "panic\tlots\n");
  EXPECT_EQ(run("analyze-hour --lexicon " + q(dir / "bad.tsv") + " --corpus " + q(dir / "hour8.jsonl") +
                " --out " + q(dir / "out")),
            2);
  write_file(dir / "junk.jsonl", "nope\nnope\n");
  EXPECT_EQ(run("analyze-hour --lexicon " + q(kLexicon) + " --corpus " + q(dir / "junk.jsonl") +
                " --out " + q(dir / "out")),
            2);
  EXPECT_EQ(run(base("compare") + " --slice-a hour:3 --slice-b all"), 2);  // empty slice
}

TEST_F(Cli, HourEightOnlyCorpus) {
  ASSERT_EQ(run(base("analyze-hour")), 0);
  const auto csv = read_file(dir / "out" / "hour.csv");
  std::istringstream lines(csv);
  std::string line;
  int rows = 0, empty = 0;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#' || line.starts_with("hour,") || line.starts_with("all,")) {
      continue;
    }
    ++rows;
    if (line.ends_with(",1")) {
      ++empty;
      EXPECT_TRUE(line.find(",0,0,0,0,,,1") != std::string::npos) << line;
    } else {
      EXPECT_TRUE(line.starts_with("8,20,")) << line;
    }
  }
  EXPECT_EQ(rows, 24);
  EXPECT_EQ(empty, 23);
}

TEST_F(Cli, CompareSelfHasPOne) {
  ASSERT_EQ(run(base("compare") + " --slice-a hour:8 --slice-b hour:8 --out-format json"), 0);
  const auto j = nlohmann::json::parse(read_file(dir / "out" / "compare.json"));
  EXPECT_EQ(j["p"], 1.0);
  EXPECT_EQ(j["significant"], false);
}

TEST_F(Cli, AnalyzeAllWritesFourTables) {
  ASSERT_EQ(run(base("analyze-all") + " --out-format json"), 0);
  for (auto name : {"hour", "weekday", "tense", "pronoun"}) {
    const auto path = dir / "out" / (std::string(name) + ".json");
    ASSERT_TRUE(std::filesystem::exists(path)) << path;
    EXPECT_EQ(nlohmann::json::parse(read_file(path))["report"], name);
  }
}

TEST_F(Cli, EnvironmentVariablesSupplyOptions) {
  const std::string env = "ANXSCOPE_LEXICON=" + q(kLexicon) + " ANXSCOPE_CORPUS=" +
                          q(dir / "hour8.jsonl") + " ANXSCOPE_OUT=" + q(dir / "envout") + " ";
  ASSERT_EQ(run_command(env + kBin + " analyze-weekday"), 0);
  EXPECT_TRUE(std::filesystem::exists(dir / "envout" / "weekday.csv"));
}

TEST_F(Cli, ReportsIdenticalAcrossWorkerCounts) {
  const auto args = "analyze-all --lexicon " + q(kLexicon) + " --corpus " + q(dir / "hour8.jsonl");
  ASSERT_EQ(run(args + " --workers 1 --out " + q(dir / "w1")), 0);
  ASSERT_EQ(run(args + " --workers 4 --out " + q(dir / "w4")), 0);
  for (auto name : {"hour.csv", "weekday.csv", "tense.csv", "pronoun.csv"}) {
    EXPECT_EQ(read_file(dir / "w1" / name), read_file(dir / "w4" / name)) << name;
  }
}

TEST_F(Cli, SynthThenEvalArc) {
  write_file(dir / "spec.json",
             R"({"bin_kind":"hour","p_anx":[0.05,0.1,0.15,0.2,0.25,0.2,0.15,0.1,0.05,0.05,0.05,0.05,
                 0.05,0.05,0.05,0.05,0.05,0.05,0.05,0.05,0.05,0.05,0.05,0.05],
                 "p_calm":0.1,"posts_per_bin":200,"tokens_per_post":[10,30],"seed":5})");
  ASSERT_EQ(run("synth --lexicon " + q(kLexicon) + " --spec " + q(dir / "spec.json") + " --output " +
                q(dir / "synth.jsonl")),
            0);
  ASSERT_EQ(run("synth --lexicon " + q(kLexicon) + " --spec " + q(dir / "spec.json") + " --output " +
                q(dir / "synth2.jsonl")),
            0);
  EXPECT_EQ(read_file(dir / "synth.jsonl"), read_file(dir / "synth2.jsonl"));
  ASSERT_EQ(run("eval-arc --lexicon " + q(kLexicon) + " --spec " + q(dir / "spec.json") +
                " --corpus " + q(dir / "synth.jsonl") + " --out " + q(dir / "out")),
            0);
  const auto j = nlohmann::json::parse(read_file(dir / "out" / "arc.json"));
  EXPECT_EQ(j["rows"].size(), 24u);
  EXPECT_GT(j["pearson_r"].get<double>(), 0.8);
}

TEST_F(Cli, SynthSpecErrors) {
  write_file(dir / "bad.json", R"({"p_anx":0.7,"p_calm":0.7,"posts_per_bin":1,"tokens_per_post":[1,2]})");
  EXPECT_EQ(run("synth --lexicon " + q(kLexicon) + " --spec " + q(dir / "bad.json")), 1);
  write_file(dir / "notjson.json", "{");
  EXPECT_EQ(run("synth --lexicon " + q(kLexicon) + " --spec " + q(dir / "notjson.json")), 1);
}

TEST_F(Cli, LexiconStats) {
  ASSERT_EQ(run("lexicon-stats --lexicon " + q(kLexicon) + " --out " + q(dir / "out") +
                " --out-format json"),
            0);
  const auto j = nlohmann::json::parse(read_file(dir / "out" / "lexicon.json"));
  EXPECT_EQ(j["total"].get<int>(), j["anxiety"].get<int>() + j["calm"].get<int>() + j["neutral"].get<int>());
}

}  // namespace
}  // namespace anx
