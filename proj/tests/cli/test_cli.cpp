#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "json.hpp"

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args, const std::string& env = {}) {
  const std::string cmd = env + (env.empty() ? "" : " ") + CPC_EXE + std::string(" ") + args + " 2>/dev/null";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (p == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_path(const std::string& leaf) {
  return (std::filesystem::temp_directory_path() / ("cpc_cli_" + std::to_string(::getpid()) + "_" + leaf)).string();
}

}  // namespace

TEST(Cli, ZooListFormat) {
  const CliRun r = run("zoo list");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("s3_x_s1 (dim 4, type (1,0))"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("sphere2 (dim 2)"), std::string::npos) << r.out;
  const CliRun j = run("zoo list --json");
  ASSERT_EQ(j.code, 0);
  const auto arr = nlohmann::json::parse(j.out);
  ASSERT_EQ(arr.size(), 9u);
  EXPECT_EQ(arr[0]["name"], "euclidean4");
  EXPECT_TRUE(arr[0]["type"].is_null());
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("verify zoo:s3_x_s1 --samples 10").code, 0);
  EXPECT_EQ(run("verify zoo:flat_pair4 --samples 10").code, 1);
  EXPECT_EQ(run("verify zoo:no_such_thing").code, 2);
  EXPECT_EQ(run("verify /nonexistent.spec").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("flatness zoo:flat_torus4 --tensor conformal --samples 10").code, 0);
  EXPECT_EQ(run("flatness zoo:sphere4 --tensor concircular --samples 10").code, 0);
  EXPECT_EQ(run("flatness zoo:s3_x_s1 --tensor concircular --samples 10").code, 1);
  EXPECT_EQ(run("audit zoo:s3_x_s1 --theorem identities --samples 10").code, 0);
  EXPECT_EQ(run("audit zoo:s3_x_s1 --theorem conformal --samples 10").code, 0);
  EXPECT_EQ(run("curvature zoo:sphere4 --samples 10").code, 0);
  EXPECT_EQ(run("curvature zoo:sphere2 --at 1.0").code, 2);
}

TEST(Cli, DeterministicOutput) {
  const std::string args = "curvature zoo:s3_x_s1 --samples 20 --json";
  const CliRun a = run(args);
  const CliRun b = run(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const CliRun c = run("curvature zoo:s3_x_s1 --samples 20 --json --seed 5");
  EXPECT_NE(a.out, c.out);
}

TEST(Cli, SeedFromEnvironment) {
  const CliRun env = run("verify zoo:s3_x_s1 --samples 5 --json", "CPC_SEED=9");
  const auto j = nlohmann::json::parse(env.out);
  EXPECT_EQ(j["seed"], 9);
  const CliRun both = run("verify zoo:s3_x_s1 --samples 5 --json --seed 3", "CPC_SEED=9");
  EXPECT_EQ(nlohmann::json::parse(both.out)["seed"], 3);
  EXPECT_EQ(nlohmann::json::parse(run("verify zoo:s3_x_s1 --samples 5 --json").out)["seed"], 42);
}

TEST(Cli, JsonReportKeys) {
  const CliRun r = run("verify zoo:s3_x_s3 --samples 5 --json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  for (const char* k : {"tool", "command", "manifold", "seed", "samples", "flags", "title", "passed", "notes", "entries"})
    EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(j["command"], "verify");
  EXPECT_EQ(j["samples"], 5);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_GT(j["entries"].size(), 10u);
}

TEST(Cli, ExportThenVerifyIsIdentical) {
  const CliRun spec = run("zoo export s3_x_s1");
  ASSERT_EQ(spec.code, 0);
  const std::string path = temp_path("s3_x_s1.spec");
  std::ofstream(path) << spec.out;
  const CliRun from_zoo = run("verify zoo:s3_x_s1 --samples 10");
  const CliRun from_file = run("verify " + path + " --samples 10");
  std::filesystem::remove(path);
  EXPECT_EQ(from_zoo.code, 0);
  EXPECT_EQ(from_zoo.out, from_file.out);
}

TEST(Cli, MissingPairSectionIsNoted) {
  const CliRun r = run("verify zoo:euclidean4 --samples 5");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("no contact pair structure: structure checks skipped"), std::string::npos) << r.out;
}
