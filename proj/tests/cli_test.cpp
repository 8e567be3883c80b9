#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

// per-test names keep parallel ctest runs apart
std::string temp_path(const std::string& name) {
  return ::testing::TempDir() + "signed_spectra_cli_" + name;
}

CliRun run(const std::string& args) {
  const std::string out =
      temp_path(std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()) + "_stdout.txt");
  const std::string cmd = std::string(SIGNED_SPECTRA_CLI) + " " + args + " > " + out + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  CliRun r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out);
  std::stringstream buf;
  buf << in.rdbuf();
  r.out = buf.str();
  return r;
}

std::string without_header(const std::string& text) {
  if (text.rfind("# ", 0) == 0) return text.substr(text.find('\n') + 1);
  return text;
}

}  // namespace

TEST(Cli, VerifyC4Succeeds) {
  const CliRun r = run("verify-c4 --n 5..6 --format json --no-header --threads 2");
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["reports"].size(), 2u);
  EXPECT_EQ(j["reports"][0]["verdict"], "unique-gamma1");
  EXPECT_EQ(j["reports"][1]["verdict"], "unique-gamma1");
  EXPECT_FALSE(j.contains("generated"));
}

TEST(Cli, VerifyC4RangeErrors) {
  EXPECT_EQ(run("verify-c4 --n 8").code, 2);
  EXPECT_EQ(run("verify-c4 --n 4").code, 2);
  EXPECT_EQ(run("verify-c4 --n 7..5").code, 2);
  EXPECT_EQ(run("verify-c4 --n five").code, 2);
}

TEST(Cli, VerifyC4CsvStreamsClasses) {
  const CliRun r = run("verify-c4 --n 5 --no-header");
  EXPECT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "provenance,n,e,lambda1,unbalanced,crfree_r");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 193);
}

TEST(Cli, SearchSucceedsAndIsDeterministic) {
  const std::string args = "search --n 12 --r 5 --seed 7 --iters 2000 --restarts 2 --no-header";
  const CliRun a = run(args + " --threads 1");
  const CliRun b = run(args + " --threads 2");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["n"], 12);
  EXPECT_NE(j["verdict"], "counterexample");
}

TEST(Cli, SearchRangeErrors) {
  EXPECT_EQ(run("search --n 12 --r 3").code, 2);
  EXPECT_EQ(run("search --n 12 --r 6").code, 2);
  EXPECT_EQ(run("search --n 8 --r 4 --strict-range").code, 2);
  EXPECT_EQ(run("search --n 12").code, 2);
}

TEST(Cli, BoundsAudit) {
  const CliRun r = run("bounds-audit --classes-up-to 5 --gamma1 5..20 --random 50 --seed 3 --no-header");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "graph_id,lambda1,hong,stanic,slack_hong,slack_stanic");
  EXPECT_NE(r.out.find("gamma1_20,"), std::string::npos);
}

TEST(Cli, BoundsAuditCorpusFile) {
  const std::string path = temp_path("corpus.g6");
  {
    std::ofstream out(path);
    out << "Bw\nC~\nCr\n";
  }
  const CliRun r = run("bounds-audit --corpus " + path + " --format json --no-header");
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["violations"], 0);
  EXPECT_GT(j["graphs"].get<int>(), 0);
}

TEST(Cli, BoundsAuditEmptyCorpus) {
  const std::string path = temp_path("empty.g6");
  { std::ofstream out(path); }
  EXPECT_EQ(run("bounds-audit --corpus " + path).code, 2);
  EXPECT_EQ(run("bounds-audit").code, 2);
  EXPECT_EQ(run("bounds-audit --corpus /nonexistent.g6").code, 2);
}

TEST(Cli, Gamma1Table) {
  const CliRun r = run("gamma1-table --n 5..40 --no-header");
  EXPECT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "n,lambda1,margin_over_n_minus_3,frustration,negative_girth");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::stringstream fields(line);
    std::string n, lambda, margin, eps, girth;
    std::getline(fields, n, ',');
    std::getline(fields, lambda, ',');
    std::getline(fields, margin, ',');
    std::getline(fields, eps, ',');
    std::getline(fields, girth, ',');
    EXPECT_GT(std::stod(margin), 0.0) << line;
    EXPECT_EQ(eps, "1");
    EXPECT_EQ(girth, "3");
  }
  EXPECT_EQ(rows, 36);
  EXPECT_EQ(run("gamma1-table --n 4").code, 2);
}

TEST(Cli, HeaderLineIsTheOnlyDifference) {
  const CliRun with = run("gamma1-table --n 5..8");
  const CliRun without = run("gamma1-table --n 5..8 --no-header");
  EXPECT_EQ(with.out.rfind("# signed-spectra gamma1-table ", 0), 0u);
  EXPECT_EQ(without_header(with.out), without.out);
}

TEST(Cli, OutputFile) {
  const std::string path = temp_path("table.csv");
  std::remove(path.c_str());
  const CliRun r = run("gamma1-table --n 5 --no-header --output " + path);
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string first, second;
  std::getline(in, first);
  std::getline(in, second);
  EXPECT_EQ(second, "5,2.2360679775,0.2360679775,1,3");
}

TEST(Cli, SingleGraphUtilities) {
  EXPECT_EQ(run("frustration '3 3 0 1 - 0 2 + 1 2 +'").out, "1\n");
  EXPECT_EQ(run("girth '5 5 0 1 - 1 2 + 2 3 + 3 4 + 0 4 +'").out, "5\n");
  EXPECT_EQ(run("girth '3 3 0 1 + 0 2 + 1 2 +'").out, "none\n");
  EXPECT_EQ(run("index --graph6 C~ --signs ++++++").out, "3\n");
  EXPECT_EQ(run("index --graph6 Bw --signs -++").out, "1\n");
  const auto j = nlohmann::json::parse(run("index '3 3 0 1 - 0 2 + 1 2 +' --format json --no-header").out);
  EXPECT_EQ(j["spectrum"].size(), 3u);
  EXPECT_EQ(run("index '3 1 0 1 x'").code, 2);
  EXPECT_EQ(run("index").code, 2);
  EXPECT_EQ(run("frustration '25 0'").code, 2);
}

TEST(Cli, GenerateCorpus) {
  const CliRun r = run("generate-corpus --n 5");
  EXPECT_EQ(r.code, 0);
  int lines = 0;
  std::istringstream in(r.out);
  std::string line;
  while (std::getline(in, line)) ++lines;
  EXPECT_EQ(lines, 21);
  EXPECT_EQ(run("generate-corpus --n 8").code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("no-such-command").code, 2);
  EXPECT_EQ(run("gamma1-table --format xml").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}
