#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"
#include "regseq/report.hpp"

namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "regseq");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = regseq::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("regseq_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    std::ofstream(p) << text << '\n';
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(Cli, RunExamples) {
  const auto pis0_2 = cli({"gen", "parity", "--variant", "pis0", "-n", "2"}).out;
  auto r = cli({"run", file("pis0_2.seq", pis0_2), "--inputs", "10"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "terminated out=1\n");

  r = cli({"run", file("halt.seq", "!"), "--inputs", ""});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "terminated out=0\n");

  r = cli({"run", file("jump0.seq", "#0 ; !"), "--inputs", ""});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(r.out, "inaction\n");

  r = cli({"run", file("foreign.seq", "in:2.get ; !"), "--inputs", "1"});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(r.out, "invalid-access position=1 register=in:2\n");
}

TEST_F(Cli, RunTraceAndReport) {
  auto r = cli({"run", file("p.seq", "+in:1.get ; aux:1.neg ; +aux:1.get ; out.set:t ; !"), "--inputs", "0",
                "--trace", "--report", path("run.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "step 1 +in:1.get reply=0\n"
            "step 3 +aux:1.get reply=0\n"
            "step 5 ! reply=-\n"
            "terminated out=0\n");
  std::ifstream in(path("run.json"));
  std::stringstream ss;
  ss << in.rdbuf();
  auto rep = regseq::report::run_report_from_json(ss.str());
  EXPECT_EQ(rep.trace->entries.size(), 3U);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({"run", file("bad.seq", "out.get ; !"), "--inputs", ""}).code, 2);
  EXPECT_EQ(cli({"run", file("h.seq", "!"), "--inputs", "12"}).code, 2);
  EXPECT_EQ(cli({"run", path("missing.seq"), "--inputs", ""}).code, 2);
  EXPECT_EQ(cli({"gen", "parity", "--variant", "pis7", "-n", "2"}).code, 2);
  EXPECT_EQ(cli({"gen", "majority", "--variant", "pis0", "-n", "2"}).code, 2);
  EXPECT_EQ(cli({"transform", "complement", file("a.seq", "aux:1.neg ; !"), "-n", "1"}).code, 2);
  EXPECT_EQ(cli({"transform", "eliminate", file("e.seq", "!")}).code, 2);
  EXPECT_EQ(cli({"min", "-n", "1", "--max-len", "2", "--prune", "bogus"}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST_F(Cli, TableExamples) {
  const auto pis1_3 = cli({"gen", "parity", "--variant", "pis1", "-n", "3"}).out;
  auto r = cli({"table", file("pis1_3.seq", pis1_3), "-n", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "n=3 bits=01101001\n");

  r = cli({"table", file("halt.seq", "!"), "-n", "2"});
  EXPECT_EQ(r.out, "n=2 bits=0000\n");

  r = cli({"table", file("sett.seq", "out.set:t"), "-n", "0"});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(r.out.rfind("not-total input=", 0), 0U);
}

TEST_F(Cli, GenExamples) {
  EXPECT_EQ(cli({"gen", "parity", "--variant", "pis1", "-n", "2"}).out,
            "+in:1.get ; aux:1.neg ; +in:2.get ; aux:1.neg ; +aux:1.get ; out.set:t ; !\n");
  EXPECT_EQ(cli({"gen", "parity", "--variant", "pis0", "-n", "0"}).out, "!\n");
  const auto four = cli({"gen", "parity", "--variant", "pis0", "-n", "4"}).out;
  EXPECT_EQ(std::count(four.begin(), four.end(), ';'), 17);
}

TEST_F(Cli, MinExamples) {
  auto r = cli({"min", "--function", "parity", "-n", "1", "--aux", "0", "--max-len", "3", "--out", path("m.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("minimal_length=3 witness=+in:1.get ; out.set:t ; !"), std::string::npos);
  std::ifstream in(path("m.json"));
  std::stringstream ss;
  ss << in.rdbuf();
  const auto j = nlohmann::json::parse(ss.str());
  EXPECT_EQ(j["minimal_length"], 3);
  EXPECT_EQ(j["kind"], "minimality_profile");

  r = cli({"min", "-n", "2", "--max-len", "4", "--prune", "all", "--jobs", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("minimal_length=none max_len=4"), std::string::npos);

  r = cli({"min", "-n", "2", "--aux", "1", "--no-neg", "--max-len", "3"});
  EXPECT_EQ(r.code, 0);
}

TEST_F(Cli, MinBudgetAbort) {
  ::setenv("REGSEQ_STEP_BUDGET", "100", 1);
  auto r = cli({"min", "-n", "2", "--max-len", "6"});
  ::unsetenv("REGSEQ_STEP_BUDGET");
  EXPECT_EQ(r.code, 4);
}

TEST_F(Cli, TransformExamples) {
  const auto pis0_1 = file("pis0_1.seq", "+in:1.get ; out.set:t ; !");
  auto r = cli({"transform", "complement", pis0_1, "-n", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "-in:1.get ; out.set:t ; !\n");

  r = cli({"transform", "strip", file("skip_demo.seq", "#2 ; #1 ; +in:1.get ; #1 ; out.set:t ; !")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "in:1.get ; out.set:t ; !\n");

  r = cli({"transform", "eliminate", pis0_1, "--input", "1", "--value", "0"});
  EXPECT_EQ(r.out, "#2 ; out.set:t ; !\n");
}

}  // namespace
