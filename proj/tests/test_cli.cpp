#include <gtest/gtest.h>

#include <sstream>

#include "oddbal/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "oddbal");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = oddbal::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Cli, ExpandCsv) {
  const auto r = run({"expand", "--n-max", "10", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("n,m,count\n0,0,1\n", 0), 0u);
  EXPECT_GE(lines(r.out), 42u);
  EXPECT_NE(r.out.find("\n10,"), std::string::npos);
  EXPECT_EQ(r.out.find("\n11,"), std::string::npos);
}

TEST(Cli, ExpandJson) {
  const auto r = run({"expand", "--n-max", "3", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["max_n"], 3);
  EXPECT_EQ(j["rows"][2]["total"], "5");
}

TEST(Cli, EnumerateDefaultsToJsonLines) {
  const auto r = run({"enumerate", "--n", "5"});
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::vector<std::vector<int>> seqs;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_EQ(j["size"], 12);
    seqs.push_back(j["sequence"].get<std::vector<int>>());
  }
  EXPECT_EQ(seqs.size(), oddbal::expand_V_scalar(5)[5]);
  for (const std::vector<int>& want : {std::vector<int>{1, 1, 2, 4, 2, 1, 1}, std::vector<int>{1, 3, 4, 3, 1},
                                       std::vector<int>{12}, std::vector<int>{1, 8, 2, 1}}) {
    EXPECT_NE(std::find(seqs.begin(), seqs.end(), want), seqs.end());
  }
}

TEST(Cli, EnumerateCsv) {
  const auto r = run({"enumerate", "--n", "1", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("size,rank,sequence\n", 0), 0u);
  EXPECT_EQ(lines(r.out), 3u);
}

TEST(Cli, VerifyDecompositionPassesAndFailsOnThreshold) {
  const auto ok = run({"verify-decomposition"});
  EXPECT_EQ(ok.code, 0) << ok.err;
  EXPECT_EQ(lines(ok.out), 13u);
  EXPECT_NE(ok.err.find("sign of T1"), std::string::npos);

  const auto bad = run({"verify-decomposition", "--threshold", "1e-30"});
  EXPECT_EQ(bad.code, 1);
  const auto rec = nlohmann::json::parse(bad.err.substr(bad.err.find("{\"status\"")));
  EXPECT_EQ(rec["status"], "check_failed");
  EXPECT_EQ(rec["subcommand"], "verify-decomposition");
}

TEST(Cli, VerifyTransformsJson) {
  const auto r = run({"verify-transforms", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_FALSE(j.empty());
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"expand", "--n-max", "-3"}).code, 2);
  EXPECT_EQ(run({"expand", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"asym-report", "--precision", "10"}).code, 2);
  EXPECT_EQ(run({"asym-report", "--a", "3", "--c", "3"}).code, 2);
  EXPECT_EQ(run({"asym-report", "--c", "4", "--checkpoints", "10"}).code, 2);
  EXPECT_EQ(run({"equidistribution", "--c", "1"}).code, 2);
  EXPECT_EQ(run({"lemma-ratios", "--form", "other"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, AsymReport) {
  const auto r = run({"asym-report", "--checkpoints", "100,400", "--precision", "30"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out), 3u);
  const auto even = run({"asym-report", "--c", "2", "--checkpoints", "50", "--allow-even"});
  EXPECT_EQ(even.code, 0) << even.err;
  EXPECT_NE(even.out.find("50,0,2,"), std::string::npos);
}

TEST(Cli, EquidistributionAndScan) {
  EXPECT_EQ(run({"equidistribution", "--c", "3", "--checkpoints", "50,200"}).code, 0);
  const auto s = run({"logconcavity-scan", "--n-max", "80"});
  EXPECT_EQ(s.code, 0) << s.err;
  EXPECT_NE(s.err.find("finding:"), std::string::npos);
}

TEST(Cli, ByteStableOutput) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"expand", "--n-max", "12", "--format", "json"},
        std::vector<std::string>{"verify-transforms"}, std::vector<std::string>{"asym-report", "--checkpoints", "20,40"}}) {
    EXPECT_EQ(run(args).out, run(args).out);
  }
}
