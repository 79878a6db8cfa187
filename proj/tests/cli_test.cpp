#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "json.hpp"

namespace {

struct Result {
  int status;
  std::string out;
};

// Runs the built tool through the shell; stderr is discarded.
Result run(const std::string& args, const std::string& stdin_file = "") {
  std::string cmd = std::string(FANOBOTT_CLI) + " " + args;
  if (!stdin_file.empty()) cmd += " < " + std::string(FANOBOTT_FIXTURE_DIR) + "/" + stdin_file;
  cmd += " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, {}};
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string fixture(const std::string& name) { return std::string(FANOBOTT_FIXTURE_DIR) + "/" + name; }

nlohmann::json machine(const Result& r) { return nlohmann::json::parse(r.out); }

TEST(Cli, CheckFourStage) {
  const Result r = run("check --format machine --verify --input " + fixture("four_stage_fano.json"));
  ASSERT_EQ(r.status, 0);
  const auto j = machine(r);
  EXPECT_EQ(j["verdict"], "fano");
  EXPECT_EQ(j["nu_sums"], nlohmann::json::parse("[3, 2, 1]"));
  EXPECT_EQ(j["verified"], true);
}

TEST(Cli, CheckReadsStdin) {
  const Result r = run("check --format machine", "three_stage_not_weak_fano.json");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(machine(r)["verdict"], "not_weak_fano");
  EXPECT_EQ(machine(run("check --format machine --input -", "projective_plane.json"))["verdict"], "fano");
}

TEST(Cli, CheckHumanOutput) {
  const Result r = run("check --input " + fixture("hirzebruch_1.json"));
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("verdict: fano"), std::string::npos);
}

TEST(Cli, Fan) {
  const Result h = run("fan --format machine --input " + fixture("hirzebruch_1.json"));
  ASSERT_EQ(h.status, 0);
  EXPECT_EQ(machine(h)["fan"]["rays"].size(), 4u);

  const auto cube = machine(run("fan --format machine --input " + fixture("p1_cubed.json")));
  EXPECT_EQ(cube["fan"]["rays"].size(), 6u);
  EXPECT_EQ(cube["fan"]["max_cones"].size(), 8u);
  EXPECT_EQ(cube["degrees"], nlohmann::json::parse("[2, 2, 2]"));

  const auto four = machine(run("relations --format machine --input " + fixture("four_stage_fano.json")));
  EXPECT_EQ(four["degrees"], nlohmann::json::parse("[1, 1, 2, 3]"));
  EXPECT_FALSE(four.contains("fan"));
  EXPECT_EQ(machine(run("fan --relations-only --format machine --input " + fixture("four_stage_fano.json"))), four);
}

TEST(Cli, EnumerateTable) {
  const Result r = run("enumerate --stages 1,1,1 --range -1:1 --mode fano --expect-table1 --format machine --labels " +
                    fixture("table1_labels.json"));
  ASSERT_EQ(r.status, 0);
  const auto j = machine(r);
  EXPECT_EQ(j["sweep"]["hits"].size(), 15u);
  EXPECT_EQ(j["sweep"]["expectation_met"], true);
  EXPECT_EQ(j["sweep"]["hit_labels"].size(), 15u);

  EXPECT_EQ(run("enumerate --stages 1,1,1 --range -1:1 --mode weak_fano --expect-table1").status, 3);
}

TEST(Cli, EnumerateCensusAndThreads) {
  const auto j = machine(run("enumerate --stages 1,1 --range -2:2 --mode census --format machine"));
  EXPECT_EQ(j["sweep"]["counts"]["fano"], 3);
  EXPECT_EQ(j["sweep"]["counts"]["weak_fano_not_fano"], 2);
  EXPECT_EQ(j["sweep"]["counts"]["not_weak_fano"], 0);
  EXPECT_EQ(run("enumerate --stages 1,2,1 --range -2:2 --mode census --threads 4 --format machine").out,
            run("enumerate --stages 1,2,1 --range -2:2 --mode census --format machine").out);
}

TEST(Cli, CharyCompare) {
  const Result r = run("chary-compare --r 3 --range -1:1 --format machine");
  ASSERT_EQ(r.status, 0);
  const auto j = machine(r);
  EXPECT_TRUE(j["sweep"]["violations"].empty() || !j["sweep"].contains("violations"));
  EXPECT_NE(j["sweep"]["hits"].dump().find("[1,1,1]"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("--help").status, 0);
  EXPECT_EQ(run("").status, 1);
  EXPECT_EQ(run("frobnicate").status, 1);
  EXPECT_EQ(run("check --input " + fixture("bad_entry.json")).status, 1);
  EXPECT_EQ(run("check --input /nonexistent/tower.json").status, 1);
  EXPECT_EQ(run("check --format yaml --input " + fixture("p1_cubed.json")).status, 1);
  EXPECT_EQ(run("enumerate --stages 1,1 --range 2").status, 1);
  EXPECT_EQ(run("check --input " + fixture("bad_length.json")).status, 2);
  EXPECT_EQ(run("enumerate --stages 1,1,1,1 --range -2:2 --cap 10").status, 2);
  EXPECT_EQ(run("enumerate --stages 1,1 --range 3:1").status, 2);
}

TEST(Cli, OutputFile) {
  const std::string path = ::testing::TempDir() + "fanobott_cli_out.json";
  std::remove(path.c_str());
  ASSERT_EQ(run("check --format machine --output " + path + " --input " + fixture("p1_cubed.json")).status, 0);
  FILE* f = std::fopen(path.c_str(), "r");
  ASSERT_NE(f, nullptr);
  std::string text;
  int c;
  while ((c = std::fgetc(f)) != EOF) text.push_back(static_cast<char>(c));
  std::fclose(f);
  EXPECT_EQ(nlohmann::json::parse(text)["verdict"], "fano");
}

}  // namespace
