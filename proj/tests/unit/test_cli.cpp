#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

const std::filesystem::path kTmp = std::filesystem::temp_directory_path() / "bflow_cli_test";

int run(const std::string& args) {
  std::filesystem::create_directories(kTmp);
  const std::string cmd = std::string(BFLOW_CLI) + " " + args + " > " + (kTmp / "stdout").string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, CatalogAndClassify) {
  EXPECT_EQ(run("catalog"), 0);
  EXPECT_NE(slurp(kTmp / "stdout").find("heisenberg"), std::string::npos);
  EXPECT_EQ(run("classify s3"), 0);
  EXPECT_NE(slurp(kTmp / "stdout").find("RealType"), std::string::npos);
}

TEST(Cli, ValidationExitCodes) {
  EXPECT_EQ(run("classify no-such-group"), 2);
  EXPECT_EQ(run("flow h3 --variant sideways"), 2);
  EXPECT_EQ(run("flow h3 --t-end"), 2);
  EXPECT_EQ(run("linearize s3"), 2);
  EXPECT_EQ(run("catalog s3,lambda --lambda 4"), 2);
}

TEST(Cli, FileInput) {
  const auto f = kTmp / "h3.json";
  EXPECT_EQ(run("catalog h3 --out " + f.string()), 0);
  EXPECT_EQ(run("soliton-check " + f.string()), 0);
  EXPECT_NE(slurp(kTmp / "stdout").find("NontrivialSoliton"), std::string::npos);
}

TEST(Cli, FlowIsByteIdentical) {
  const std::string base = "--seed 7 flow s3 --variant scalstar-normalized --t-end 5 --gauge-spread 0.3 ";
  ASSERT_EQ(run(base + "--out " + (kTmp / "a.csv").string() + " --snapshots " + (kTmp / "a.jsonl").string()), 0);
  ASSERT_EQ(run(base + "--out " + (kTmp / "b.csv").string()), 0);
  const std::string a = slurp(kTmp / "a.csv");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(kTmp / "b.csv"));
  EXPECT_FALSE(slurp(kTmp / "a.jsonl").empty());
  ASSERT_EQ(run("--seed 8 flow s3 --variant scalstar-normalized --t-end 5 --gauge-spread 0.3 --out " +
                (kTmp / "c.csv").string()),
            0);
  EXPECT_NE(a, slurp(kTmp / "c.csv"));
}

TEST(Cli, OtherSubcommands) {
  EXPECT_EQ(run("stratum h3"), 0);
  EXPECT_EQ(run("linearize \"s3,lambda?lambda=0.5\""), 0);
  EXPECT_EQ(run("compare h3 s3"), 0);
  EXPECT_EQ(run("uniqueness h3 --seeds 2 --t-end 10"), 0);
  EXPECT_EQ(run("collapse h3 --t-end 20"), 0);
}
