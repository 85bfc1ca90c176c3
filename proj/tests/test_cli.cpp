#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(RRSURF_CLI_PATH) + " " + args + " 2>&1";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("rrsurf_cli_" + name + "_" + std::to_string(::getpid()) + ".json")).string();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

nlohmann::ordered_json report(const std::string& args, int expect_code) {
  const std::string path = temp_path("report");
  const Result r = run(args + " --json " + path);
  EXPECT_EQ(r.code, expect_code) << r.out;
  auto j = nlohmann::ordered_json::parse(slurp(path));
  std::filesystem::remove(path);
  return j;
}

}  // namespace

TEST(Cli, IntersectLineConic) {
  const Result r = run("intersect --surface P2 --q 3 --curves line:Y,conic:YZ-X^2");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "2\n");
}

TEST(Cli, IntersectOnProductSurface) {
  const Result r = run("--surface P1xP1 --q 2 intersect --curves a:X0Y0+X1Y1,b:X0");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1\n");
}

TEST(Cli, ChiAtClassZero) {
  const auto j = report("verify --q 4 --range 0:0 --suites chi", 0);
  ASSERT_EQ(j["checks"].size(), 1u);
  EXPECT_EQ(j["checks"][0]["lhs"]["chi"], 1);
  EXPECT_EQ(j["checks"][0]["rhs"]["chi"], 1);
  EXPECT_EQ(j["summary"]["failed"], 0);
}

TEST(Cli, RiemannRochSuite) {
  const auto j = report("verify --surface P2 --q 5 --range -6:6 --suites rr", 0);
  EXPECT_EQ(j["checks"].size(), 13u);
  EXPECT_EQ(j["summary"]["passed"], 13);
  const auto& line = j["checks"][7];  // class 1
  EXPECT_EQ(line["inputs"]["C"][0], 1);
  EXPECT_EQ(line["lhs"]["twice"], 6);
  EXPECT_EQ(line["rhs"]["twice"], 6);
}

TEST(Cli, ReportSchemaKeyOrder) {
  const auto j = report("verify --q 2 --range 0:1 --suites oracles", 0);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"config", "checks", "summary"}));
  std::vector<std::string> check_keys;
  for (const auto& [k, v] : j["checks"][0].items()) check_keys.push_back(k);
  EXPECT_EQ(check_keys, (std::vector<std::string>{"name", "inputs", "lhs", "rhs", "pass", "micros"}));
}

TEST(Cli, EmptySuiteReport) {
  const auto j = report("verify --suites \"\"", 0);
  EXPECT_TRUE(j["checks"].is_array());
  EXPECT_TRUE(j["checks"].empty());
  EXPECT_EQ(j["summary"]["passed"], 0);
  EXPECT_EQ(j["summary"]["failed"], 0);
}

TEST(Cli, InjectedFaultFails) {
  const std::string path = temp_path("fault");
  const Result r = run("verify --q 3 --range -1:1 --suites rr --inject-fault h0 --json " + path);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("first counterexample: rr {\"C\":[0]}"), std::string::npos) << r.out;
  const auto j = nlohmann::ordered_json::parse(slurp(path));
  std::filesystem::remove(path);
  EXPECT_EQ(j["summary"]["failed"], 1);
  EXPECT_EQ(j["checks"][1]["pass"], false);
  EXPECT_EQ(j["checks"][0]["pass"], true);
}

TEST(Cli, DeterministicJson) {
  const std::string a = temp_path("a"), b = temp_path("b");
  const std::string args = "--surface P1xP1 --q 3 --range -1:1 --seed 7 verify --suites reciprocity,bezout,windows --json ";
  EXPECT_EQ(run(args + a).code, 0);
  EXPECT_EQ(run(args + b).code, 0);
  const std::string ja = slurp(a), jb = slurp(b);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
  EXPECT_FALSE(ja.empty());
  EXPECT_EQ(ja, jb);
}

TEST(Cli, SeedChangesCorpus) {
  const auto a = report("verify --q 3 --seed 1 --suites reciprocity", 0);
  const auto b = report("verify --q 3 --seed 2 --suites reciprocity", 0);
  EXPECT_NE(a["checks"].dump(), b["checks"].dump());
}

TEST(Cli, InvalidConfigExitsTwo) {
  for (const std::string args :
       {"verify --surface P3", "verify --q 6", "verify --q 11", "verify --range 2:1", "verify --range 0:1,0:1",
        "verify --suites bogus", "verify --precision 0", "verify --inject-fault nope", "cohomology --class 1,2",
        "intersect --curves a:X", "intersect --curves a:X,b:X+", "expand --function X/Z --curve X --point 1:0:1",
        "frobnicate", ""})
    EXPECT_EQ(run(args).code, 2) << args;
}

TEST(Cli, LargeQNeedsOverride) {
  EXPECT_EQ(run("verify --q 11 --range 0:0 --suites oracles").code, 2);
  EXPECT_EQ(run("verify --q 11 --range 0:0 --suites oracles --allow-large-q").code, 0);
}

TEST(Cli, Cohomology) {
  const Result r = run("cohomology --class -5");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "h0 = 0\nh1 = 0\nh2 = 6\nchi = 6\n");
  const auto j = report("--surface P1xP1 cohomology --class 2,-3", 0);
  EXPECT_EQ(j["result"]["h1"], 6);
  EXPECT_EQ(j["result"]["chi"], -6);
}

TEST(Cli, ResidueAlongAndAround) {
  const auto along = report("residue --function \"Z^3/(XY(X+Y+Z))\" --curve X", 0);
  EXPECT_EQ(along["result"]["sum"], "0");
  EXPECT_EQ(along["checks"][0]["pass"], true);
  const auto around = report("residue --function \"Z^3/(XY(X+Y+Z))\" --point 0:0:1", 0);
  EXPECT_EQ(around["result"]["curves"], 2);
  EXPECT_EQ(around["result"]["sum"], "0");
  // t = x, u = y: dx^dy / (x y (1 + x + y)) = -du^dt / (t u (1 + t + u)), residue -1
  const auto local = report("residue --function \"Z^3/(XY(X+Y+Z))\" --curve X --point 0:0:1", 0);
  EXPECT_EQ(local["result"]["residue"], "2");
}

TEST(Cli, ExpandAndSymbol) {
  const auto e = report("expand --function X/Z --curve YZ-X^2 --point 0:0:1", 0);
  EXPECT_EQ(e["result"]["series"], "t^0*u^1: 1\n");
  const auto s = report("symbol --f X/Z --g Y/Z --curve X --point 0:0:1", 0);
  EXPECT_EQ(s["result"]["bisymbol"], -1);
  EXPECT_EQ(s["result"]["tame"], "1*u^-1");
}
