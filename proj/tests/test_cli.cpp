#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + std::string(CHEVFLAG_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

json parse(const Run& r) { return json::parse(r.out); }

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("chevflag_cli_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Cli, RootsysReport) {
  auto r = run("rootsys report --type A --rank 2");
  ASSERT_EQ(r.code, 0);
  auto j = parse(r);
  EXPECT_EQ(j["positive_roots"].size(), 3u);
  EXPECT_EQ(j["weyl_group"].size(), 6u);
  EXPECT_EQ(j["parabolics"].size(), 4u);
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_EQ(j["version"], CHEVFLAG_VERSION);
  EXPECT_FALSE(j.contains("repro"));
  std::size_t total = 0;
  for (const auto& p : j["parabolics"]) total += p["Y_J"].size();
  EXPECT_EQ(total, 6u);
}

TEST(Cli, FlagmodBuildDimensions) {
  auto r = run("flagmod build --type A2 --q 2 --coeff F5 --J all --mode both");
  ASSERT_EQ(r.code, 0);
  auto j = parse(r);
  std::vector<std::size_t> dims;
  for (const auto& m : j["modules"]) dims.push_back(m["E_J_dim"]);
  EXPECT_EQ(dims, (std::vector<std::size_t>{1, 6, 6, 8}));
  EXPECT_EQ(j["partition_total"], 21);
  EXPECT_EQ(j["flag_dim"], 21);
}

TEST(Cli, ReportsAreByteIdenticalOnRerun) {
  for (const std::string args : {"charp pipeline --type A2 --p 2 --J all --trials 10 --seed 5",
                                 "augment search --type A2 --q 2 --coeff F5 --J 1 --trials 20 --seed 8",
                                 "flagmod build --type A2 --q 2 --coeff F3 --J all"}) {
    auto a = run(args), b = run(args);
    EXPECT_EQ(a.code, 0) << args;
    EXPECT_EQ(a.out, b.out) << args;
  }
}

TEST(Cli, CacheDirectoryDoesNotChangeReports) {
  auto dir = scratch("cache");
  const std::string args = "chevalley selfcheck --type A3 --q 2 --trials 50";
  auto plain = run(args);
  auto cold = run(args, "CHEVFLAG_CACHE_DIR=" + dir.string());
  auto warm = run(args, "CHEVFLAG_CACHE_DIR=" + dir.string());
  EXPECT_EQ(plain.code, 0);
  EXPECT_EQ(plain.out, cold.out);
  EXPECT_EQ(cold.out, warm.out);
  EXPECT_TRUE(std::filesystem::exists(dir / "structure_A3.json"));
  std::filesystem::remove_all(dir);
}

TEST(Cli, ExitCodesForBadConfiguration) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("flagmod build --type B2").code, 2);
  EXPECT_EQ(run("flagmod build --type A2 --q 6").code, 2);
  EXPECT_EQ(run("flagmod build --type A2 --coeff F4").code, 2);
  EXPECT_EQ(run("flagmod build --type A2 --J 3").code, 2);
  EXPECT_EQ(run("flagmod build --type A2 --mode sideways").code, 2);
  EXPECT_EQ(run("selfenc closure --type A2 --q 2 --gens 1,0").code, 2);
  EXPECT_EQ(run("modengine factors --input /nonexistent/module.json").code, 2);
  EXPECT_EQ(run("rootsys report --no-such-flag").code, 2);
}

TEST(Cli, ModuleExportRoundTripsThroughFactors) {
  auto dir = scratch("module");
  auto exp = run("modengine export --type A2 --q 2 --coeff F5 --J flag");
  ASSERT_EQ(exp.code, 0);
  {
    std::ofstream f(dir / "m.json");
    f << parse(exp)["module"].dump();
  }
  auto r = run("modengine factors --input " + (dir / "m.json").string());
  ASSERT_EQ(r.code, 0);
  auto j = parse(r);
  auto dims = j["checks"][0]["data"]["dims"].get<std::vector<std::size_t>>();
  std::sort(dims.begin(), dims.end());
  EXPECT_EQ(dims, (std::vector<std::size_t>{1, 6, 6, 8}));
  {
    std::ofstream f(dir / "bad.json");
    f << "{\"dim\": 2";
  }
  EXPECT_EQ(run("modengine factors --input " + (dir / "bad.json").string()).code, 2);
  std::filesystem::remove_all(dir);
}

TEST(Cli, FailingCheckGivesExitOneAndRepro) {
  auto dir = scratch("fail");
  auto exp = run("modengine export --type A1 --q 4 --coeff F5 --J flag");
  ASSERT_EQ(exp.code, 0);
  {
    std::ofstream f(dir / "m.json");
    f << parse(exp)["module"].dump();
  }
  const std::string in = " --input " + (dir / "m.json").string();
  auto good = run("modengine factors --expect 1,1,3" + in);
  EXPECT_EQ(good.code, 0);
  auto bad = run("modengine factors --expect 1,4" + in);
  EXPECT_EQ(bad.code, 1);
  auto j = parse(bad);
  EXPECT_EQ(j["verdict"], "fail");
  EXPECT_NE(j["repro"].get<std::string>().find("--expect 1,4"), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(Cli, SelfEnclosedClosure) {
  auto r = run("selfenc closure --type A2 --q 2 --gens '1,0,0;0,1,0'");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(parse(r)["closure_size"], 8);
  auto single = run("selfenc closure --type A2 --q 4 --gens '0,0,1' --orders sample:3");
  ASSERT_EQ(single.code, 0);
  EXPECT_EQ(parse(single)["closure_size"], 2);
}

TEST(Cli, OutputFile) {
  auto dir = scratch("out");
  auto r = run("rootsys report --type A1 --out " + (dir / "r.json").string());
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(dir / "r.json");
  auto j = json::parse(f);
  EXPECT_EQ(j["positive_roots"].size(), 1u);
  std::filesystem::remove_all(dir);
}
