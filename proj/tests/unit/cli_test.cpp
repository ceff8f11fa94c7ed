#ifdef MARKEDPOINTS_HAVE_CLI

#include "markedpoints/cli.hpp"
#include "markedpoints/io.hpp"
#include "markedpoints/simulate.hpp"

#include "json.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <map>
#include <sstream>

using namespace markedpoints;
namespace fs = std::filesystem;

namespace {

struct Result
{
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args)
{
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::map<std::string, std::string> csvs(const fs::path& dir)
{
  std::map<std::string, std::string> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".csv")
      files[e.path().filename().string()] = read_text_file(e.path());
  return files;
}

class Cli : public ::testing::Test
{
protected:
  fs::path dir = fs::temp_directory_path() / ("markedpoints_cli_" + std::string(
                     ::testing::UnitTest::GetInstance()->current_test_info()->name()));

  void SetUp() override
  {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  std::string network_pattern()
  {
    const auto r = run({"simulate", "--model", "modelIII", "--seed", "3", "--out", (dir / "sim").string()});
    EXPECT_EQ(r.code, 0) << r.err;
    return (dir / "sim" / "simulated.csv").string();
  }
};

} // namespace

TEST_F(Cli, UsageErrors)
{
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"summary", "--bins", "many"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"envelope", "--nsim", "10", "--out", dir.string()}).code, 2);
}

TEST_F(Cli, MissingNetworkIsDataError)
{
  const auto r = run({"markcorr", "--pattern", "p.csv", "--network", "/no/such/net.json", "--out", dir.string()});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("/no/such/net.json"), std::string::npos) << r.err;
}

TEST_F(Cli, NumericalFailureExitCode)
{
  auto rng = make_rng({1, 0});
  auto p = poisson_planar(50.0, PlanarWindow::unit_square(), rng);
  for (auto& q : p.points())
    q.mark = 1.0;
  write_text_file(dir / "flat.csv", pattern_to_csv(p));
  const auto r = run({"summary", "--pattern", (dir / "flat.csv").string(), "--stat", "kweighted", "--tf", "vario",
                      "--out", (dir / "o").string()});
  EXPECT_EQ(r.code, 4) << r.err;
}

TEST_F(Cli, MarkcorrSuiteOutputs)
{
  const auto pattern = network_pattern();
  const auto out = dir / "mc";
  const auto r = run({"markcorr", "--pattern", pattern, "--network", "builtin:tree", "--tf", "suite", "--out",
                      out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* f : {"markcorr_stoyan.csv", "markcorr_bk.csv", "markcorr_vario.csv", "markcorr_shimantani.csv",
                        "markcorr_suite.svg", "metadata.json"})
    EXPECT_TRUE(fs::exists(out / f)) << f;
}

TEST_F(Cli, EnvelopeRecordsRank)
{
  const auto out = dir / "env";
  const auto r = run({"envelope", "--model", "modelIII", "--nsim", "199", "--level", "0.95", "--bins", "64",
                      "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto meta = nlohmann::json::parse(read_text_file(out / "metadata.json"));
  EXPECT_EQ(meta["resolved"]["rank"], 5);
  EXPECT_FALSE(csvs(out).empty());
  EXPECT_TRUE(fs::exists(out / "envelope.svg"));
}

TEST_F(Cli, RepeatAndReplayAreByteIdentical)
{
  const auto pattern = network_pattern();
  const std::vector<std::vector<std::string>> commands{
      {"markcorr", "--pattern", pattern, "--network", "builtin:tree", "--tf", "stoyan"},
      {"summary", "--pattern", pattern, "--network", "builtin:tree", "--stat", "k"},
      {"simulate", "--model", "lgcp", "--network", "builtin:tree", "--seed", "4"},
      {"envelope", "--model", "modelI", "--nsim", "39", "--bins", "32", "--threads", "2"},
  };
  int c = 0;
  for (auto args : commands) {
    const auto a = dir / ("a" + std::to_string(c));
    const auto b = dir / ("b" + std::to_string(c));
    const auto replay = dir / ("r" + std::to_string(c++));
    auto first = args, second = args;
    first.insert(first.end(), {"--out", a.string()});
    second.insert(second.end(), {"--out", b.string()});
    ASSERT_EQ(run(first).code, 0) << args[0];
    ASSERT_EQ(run(second).code, 0) << args[0];
    EXPECT_EQ(csvs(a), csvs(b)) << args[0];
    ASSERT_EQ(run({"replay", "--metadata", (a / "metadata.json").string(), "--out", replay.string()}).code, 0);
    EXPECT_EQ(csvs(a), csvs(replay)) << args[0];
  }
}

TEST_F(Cli, PlanarSubcommands)
{
  auto rng = make_rng({2, 0});
  auto p = poisson_planar(120.0, PlanarWindow::unit_square(), rng);
  for (auto& q : p.points()) {
    q.type = uniform01(rng) < 0.5 ? "1" : "2";
    q.mark = uniform01(rng);
  }
  const auto file = (dir / "planar.csv").string();
  write_text_file(file, pattern_to_csv(p));
  for (const char* stat : {"kcross", "kdot", "hcross", "f", "jcross", "kweighted", "k"}) {
    const auto r = run({"summary", "--pattern", file, "--stat", stat, "--out", (dir / stat).string()});
    EXPECT_EQ(r.code, 0) << stat << ": " << r.err;
  }
  for (const char* method : {"uniform", "jd", "heat"}) {
    const auto r = run({"intensity", "--pattern", file, "--method", method, "--sigma", "0.1", "--out",
                        (dir / method).string()});
    EXPECT_EQ(r.code, 0) << method << ": " << r.err;
    EXPECT_TRUE(fs::exists(dir / method / "intensity.csv"));
  }
  EXPECT_EQ(run({"intensity", "--pattern", file, "--sigma", "cvl", "--out", (dir / "cvl").string()}).code, 0);
  for (const char* model : {"poisson", "linked", "balanced"})
    EXPECT_EQ(run({"simulate", "--model", model, "--out", (dir / model).string()}).code, 0) << model;
}

#endif
