// Copyright the glwedge authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "glwedge/cli.hpp"
#include "glwedge/io.hpp"

namespace glwedge
{
namespace
{

namespace fs = std::filesystem;

struct Outcome
{
  int code = 0;
  std::string out;
  std::string err;
};

Outcome Invoke(std::vector<std::string> args)
{
  args.insert(args.begin(), "glwedge");
  std::vector<const char *> argv;
  for (const std::string &a : args)
  {
    argv.push_back(a.c_str());
  }
  std::ostringstream out, err;
  Outcome o;
  o.code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::string Slurp(const fs::path &p)
{
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test
{
protected:
  void SetUp() override
  {
    dir_ = fs::temp_directory_path() /
           ("glwedge_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string Path(const std::string &name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

TEST_F(CliTest, UnknownFlagIsUsageError)
{
  const Outcome o = Invoke({"profile1d", "--bogus", "1"});
  EXPECT_EQ(o.code, kExitUsage);
  EXPECT_NE(o.err.find("Usage"), std::string::npos);
}

TEST_F(CliTest, MissingSubcommandIsUsageError)
{
  EXPECT_EQ(Invoke({}).code, kExitUsage);
}

TEST_F(CliTest, InvalidParametersExitTwo)
{
  EXPECT_EQ(Invoke({"profile1d", "--n", "8", "--no-cache", "--out", Path("p.csv")}).code,
            kExitValidation);
  EXPECT_EQ(Invoke({"strip", "--variant", "sideways"}).code, kExitValidation);
  EXPECT_EQ(Invoke({"--tol", "-1", "profile1d", "--out", Path("p.csv")}).code, kExitValidation);
}

TEST_F(CliTest, LowCouplingWarnsButRuns)
{
  const Outcome o = Invoke({"profile1d", "--b", "0.5", "--n", "401", "--no-cache", "--out", Path("p.csv")});
  EXPECT_EQ(o.code, kExitOk);
  EXPECT_NE(o.err.find("b outside surface regime"), std::string::npos);
  const std::string csv = Slurp(Path("p.csv"));
  EXPECT_EQ(csv.rfind("t,f,F,K\n", 0), 0u);
  const Json summary = ReadJsonFile(Path("p.json"));
  for (const char *key : {"b", "k", "eps", "ell", "n", "alpha", "energy", "residual",
                          "e_corr_integral", "e_corr_closed", "ell_bar", "t_m", "K_min"})
  {
    EXPECT_TRUE(summary.contains(key)) << key;
  }
}

TEST_F(CliTest, WarmCacheGivesIdenticalOutputFaster)
{
  ::setenv("GLWEDGE_CACHE", Path("cache").c_str(), 1);
  auto timed = [&](const std::string &out) {
    const auto t0 = std::chrono::steady_clock::now();
    EXPECT_EQ(Invoke({"profile1d", "--b", "1.3", "--ell", "12", "--n", "2401", "--out", out}).code,
              kExitOk);
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };
  const double cold = timed(Path("a.csv"));
  const double warm = timed(Path("b.csv"));
  ::unsetenv("GLWEDGE_CACHE");
  EXPECT_EQ(Slurp(Path("a.csv")), Slurp(Path("b.csv")));
  EXPECT_EQ(Slurp(Path("a.json")), Slurp(Path("b.json")));
  EXPECT_GT(cold, 5.0 * warm) << "cold " << cold << " s, warm " << warm << " s";
}

TEST_F(CliTest, TomlConfigAndFlagOverride)
{
  {
    std::ofstream cfg(Path("run.toml"));
    cfg << "[profile1d]\nb = 0.5\nn = 401\nno-cache = true\n";
  }
  const Outcome from_file =
      Invoke({"--config", Path("run.toml"), "profile1d", "--out", Path("p.csv")});
  EXPECT_EQ(from_file.code, kExitOk);
  EXPECT_EQ(ReadJsonFile(Path("p.json")).at("b"), 0.5);
  const Outcome overridden =
      Invoke({"--config", Path("run.toml"), "profile1d", "--b", "1.4", "--out", Path("q.csv")});
  EXPECT_EQ(overridden.code, kExitOk);
  EXPECT_EQ(ReadJsonFile(Path("q.json")).at("b"), 1.4);
  EXPECT_EQ(ReadJsonFile(Path("q.json")).at("n"), 401);
}

TEST_F(CliTest, StripWritesResultAndField)
{
  const Outcome o = Invoke({"strip", "--h", "0.25", "--out", Path("s.json")});
  EXPECT_EQ(o.code, kExitOk);
  const Json j = ReadJsonFile(Path("s.json"));
  EXPECT_TRUE(j.contains("mesh_hash"));
  EXPECT_EQ(Slurp(Path("s_field.csv")).rfind("x,y,re,im,abs\n", 0), 0u);
}

TEST_F(CliTest, AssembleSquareWithConjectureValues)
{
  {
    std::ofstream d(Path("square.json"));
    d << R"({"arcs": [)";
    for (int i = 0; i < 4; i++)
    {
      d << (i ? "," : "") << R"({"length": 1, "curvature": {"kind": "const", "value": 0}})";
    }
    d << R"(], "corners": [1.5707963267948966, 1.5707963267948966, 1.5707963267948966, 1.5707963267948966]})";
  }
  const Outcome o = Invoke({"assemble", "--domain", Path("square.json"), "--out", Path("r.json")});
  EXPECT_EQ(o.code, kExitOk);
  const Json r = ReadJsonFile(Path("r.json"));
  EXPECT_NEAR(r.at("order_one").get<double>(), r.at("smooth_equivalent").get<double>(), 1e-10);
}

TEST_F(CliTest, AssembleRejectsNonClosingDomain)
{
  {
    std::ofstream d(Path("bad.json"));
    d << R"({"arcs": [{"length": 1, "curvature": {"kind": "const", "value": 0}}], "corners": [1.0]})";
  }
  EXPECT_EQ(Invoke({"assemble", "--domain", Path("bad.json"), "--out", Path("r.json")}).code,
            kExitValidation);
}

TEST_F(CliTest, SelftestSingleCriterion)
{
  const Outcome o = Invoke({"selftest", "--only", "8", "--out-dir", Path("st")});
  EXPECT_EQ(o.code, kExitOk);
  EXPECT_NE(o.out.find("PASS criterion 8"), std::string::npos);
  EXPECT_TRUE(fs::exists(Path("st/criterion_8.json")));
}

TEST(CliBinary, QuickSelftestExitsZero)
{
  const std::string cmd = std::string("\"") + GLWEDGE_EXE + "\" selftest --quick > /dev/null 2>&1";
  EXPECT_EQ(std::system(cmd.c_str()), 0);
}

}  // namespace
}  // namespace glwedge
