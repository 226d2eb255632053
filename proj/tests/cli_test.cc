#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "walras/cli.h"

namespace walras {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("walras_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  std::string UdFile() {
    return Write("ud.txt", "market 2 2\nagent 1 unit-demand 2 1\nagent 2 unit-demand 1 2\n");
  }
  std::string NoWeFile() {
    return Write("nowe.txt", "market 2 2\nagent 1 single-minded 3 : 1 2\nagent 2 unit-demand 2 2\n");
  }

  fs::path dir_;
};

TEST_F(CliTest, SolveUnitDemand) {
  const CliRun r = Cli({"solve", UdFile()});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "welfare 4\n"
            "allocation 1:1;2:2\n"
            "algorithm unit-demand-matching\n"
            "pricing difference-constraints\n"
            "prices 0,0\n"
            "WE\n");
  EXPECT_EQ(r.err, "");
}

TEST_F(CliTest, SolveNoEquilibrium) {
  const CliRun r = Cli({"solve", NoWeFile()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("welfare 3\n"), std::string::npos);
  EXPECT_NE(r.out.find("witness "), std::string::npos);
  EXPECT_TRUE(r.out.ends_with("NO-WE\n"));
}

TEST_F(CliTest, DecimalPricesAreMarked) {
  const std::string f = Write("half.txt", "market 1 1\nagent 1 additive 1\n");
  const CliRun r = Cli({"price", f, "--allocation=1:1", "--decimal"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("prices-approx"), std::string::npos);
  EXPECT_NE(r.out.find("approximate"), std::string::npos);
}

TEST_F(CliTest, Winner) {
  const CliRun r = Cli({"winner", NoWeFile(), "--algo=bruteforce"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "welfare 3\nallocation 1:1,2\nalgorithm bruteforce\n");
  EXPECT_EQ(Cli({"winner", NoWeFile(), "--algo=unit-demand-matching"}).code, 1);
  EXPECT_EQ(Cli({"winner", NoWeFile(), "--algo=magic"}).code, 1);
}

TEST_F(CliTest, Price) {
  const CliRun ok = Cli({"price", UdFile(), "--allocation=1:1;2:2"});
  EXPECT_EQ(ok.code, 0);
  EXPECT_TRUE(ok.out.ends_with("feasible\n"));
  const CliRun bad = Cli({"price", NoWeFile(), "--allocation=1:1,2"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_TRUE(bad.out.ends_with("infeasible\n"));
}

TEST_F(CliTest, Verify) {
  EXPECT_EQ(Cli({"verify", UdFile(), "--allocation=1:1;2:2", "--prices=0,0"}).code, 0);
  const CliRun r = Cli({"verify", UdFile(), "--allocation=1:1;2:2", "--prices=0,3"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.out, "reject agent 2 prefers bundle {} (utility 0) to {2} (utility -1)\n");
  const CliRun pool = Cli({"verify", UdFile(), "--allocation=1:1", "--prices=0,1/2"});
  EXPECT_EQ(pool.code, 2);
  EXPECT_NE(pool.out.find("item 2"), std::string::npos);
}

TEST_F(CliTest, GenerateIsDeterministicAndReparses) {
  const std::vector<std::vector<std::string>> commands = {
      {"generate", "random-ud", "3", "4", "10", "--seed=1"},
      {"generate", "random-kdemand", "2", "4", "10", "2", "--seed=7"},
      {"generate", "random-xos", "2", "3", "10", "2", "--seed=3"},
      {"generate", "3dm3", "3", "6", "--seed=4", "--planted"},
      {"generate", "3partition", "2", "6", "--seed=5"},
  };
  for (const auto& cmd : commands) {
    const CliRun a = Cli(cmd);
    const CliRun b = Cli(cmd);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_TRUE(a.out.starts_with("format 1\nprng mt19937_64 "));
  }
  const std::string market = Write("gen.txt", Cli(commands[1]).out);
  EXPECT_EQ(Cli({"winner", market}).code, 0);
  const std::string dm = Write("dm.txt", Cli(commands[3]).out);
  const CliRun reduced = Cli({"reduce", "3dm3", dm});
  EXPECT_EQ(reduced.code, 0);
  const CliRun solved = Cli({"solve", Write("dm_market.txt", reduced.out)});
  EXPECT_NE(solved.out.find("welfare 6\n"), std::string::npos);
  const std::string part = Write("p.txt", Cli(commands[4]).out);
  EXPECT_EQ(Cli({"reduce", "3partition", part}).code, 0);
}

TEST_F(CliTest, ReduceTriviallyUnsatisfiable) {
  const std::string f = Write("t.txt", "3dm3 2 1\ntriple 1 1 1\n");
  const CliRun r = Cli({"reduce", "3dm3", f});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.out, "trivially-unsatisfiable x 2\n");
}

TEST_F(CliTest, ExitCodeMatrix) {
  const std::string ud = UdFile();
  const std::string nowe = NoWeFile();
  const std::string broken = Write("broken.txt", "market 1 2\nagent 1 budget-additive 4\n");
  struct Case {
    std::vector<std::string> args;
    int code;
  };
  const std::vector<Case> cases = {
      {{"solve", ud}, 0},
      {{"solve", nowe}, 2},
      {{"solve", broken}, 1},
      {{"solve", (dir_ / "missing.txt").string()}, 1},
      {{"winner", ud}, 0},
      {{"price", ud, "--allocation=1:1;2:2"}, 0},
      {{"price", ud, "--allocation=1:2;2:1"}, 2},
      {{"price", ud, "--allocation=1:1;2:1"}, 1},
      {{"verify", ud, "--allocation=1:1;2:2", "--prices=0,0"}, 0},
      {{"verify", ud, "--allocation=1:1;2:2", "--prices=0,3"}, 2},
      {{"verify", ud, "--allocation=1:1;2:2", "--prices=0"}, 1},
      {{"verify", ud, "--allocation=1:1;2:2"}, 1},
      {{"generate", "random-ud", "2", "2", "5"}, 0},
      {{"generate", "random-ud", "2", "2"}, 1},
      {{"generate", "nonsense", "1"}, 1},
      {{"generate", "random-kdemand", "4", "40", "10", "3", "--seed=1"}, 1},
      {{"generate", "random-kdemand", "4", "40", "10", "3", "--seed=1", "--force"}, 0},
      {{"reduce", "sat", ud}, 1},
      {{"reduce", "3dm3", ud}, 1},
      {{}, 1},
      {{"frobnicate"}, 1},
  };
  for (const Case& c : cases) {
    const CliRun r = Cli(c.args);
    std::string joined;
    for (const auto& a : c.args) joined += a + " ";
    EXPECT_EQ(r.code, c.code) << joined << "\n" << r.out << r.err;
    if (r.code == 1) {
      EXPECT_TRUE(r.err.starts_with("error: ")) << joined;
      EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1) << r.err;
    }
  }
}

TEST_F(CliTest, ParseErrorNamesLine) {
  const std::string broken = Write("broken.txt", "market 1 2\nagent 1 budget-additive 4\n");
  const CliRun r = Cli({"solve", broken});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(r.err.starts_with("error: line 2")) << r.err;
}

}  // namespace
}  // namespace walras
