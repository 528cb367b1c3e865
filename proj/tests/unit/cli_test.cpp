#include <gtest/gtest.h>

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "cli/commands.hpp"
#include "morpho/grid.hpp"
#include "morpho/morphospace.hpp"
#include "morpho/raster_io.hpp"
#include "support/oracles.hpp"

namespace morpho {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::initializer_list<std::string> args) {
  std::vector<std::string> owned{"morpho"};
  owned.insert(owned.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : owned) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> result;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) result.push_back(line);
  return result;
}

TEST(CliMeasure, HullModeOnSingleCell) {
  const auto dir = oracle::scratch_dir("cli_hull");
  Grid g(10, 10);
  g.set(4, 5, 1);
  save_raster(g, dir / "dot.pgm", RasterFormat::kPgmBinary);
  const auto r = invoke({"measure", "--mode", "hull", (dir / "dot.pgm").string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], std::string(kCsvHeader));
  EXPECT_EQ(rows[1].rfind("dot,,1,", 0), 0u) << rows[1];
}

TEST(CliMeasure, AllWhitePgm) {
  const auto dir = oracle::scratch_dir("cli_white");
  {
    std::ofstream f(dir / "white.pgm", std::ios::binary);
    f << "P2\n8 8\n255\n";
    for (int i = 0; i < 64; ++i) f << "255 ";
  }
  const auto r = invoke({"measure", (dir / "white.pgm").string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(lines(r.out)[1], "white,,0,1,1,," + (dir / "white.pgm").string());
}

TEST(CliMeasure, MissingInputStillEmitsOthers) {
  const auto dir = oracle::scratch_dir("cli_missing");
  save_raster(oracle::checkerboard(8, 8), dir / "a.txt", RasterFormat::kText);
  const auto r = invoke({"measure", (dir / "a.txt").string(), (dir / "nope.pgm").string()});
  EXPECT_NE(r.code, cli::kExitOk);
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1].rfind("a,,0.5,", 0), 0u);
  EXPECT_NE(r.err.find("nope.pgm"), std::string::npos);
}

TEST(CliMeasure, TooSmallGridFails) {
  const auto dir = oracle::scratch_dir("cli_small");
  save_raster(Grid(3, 3), dir / "tiny.txt", RasterFormat::kText);
  const auto r = invoke({"measure", (dir / "tiny.txt").string()});
  EXPECT_EQ(r.code, cli::kExitFailure);
  EXPECT_NE(r.err.find("too small"), std::string::npos);
}

TEST(CliMeasure, WorkerCountDoesNotChangeOutput) {
  const auto dir = oracle::scratch_dir("cli_workers");
  std::vector<std::string> inputs;
  for (int i = 0; i < 5; ++i) {
    const auto p = dir / ("g" + std::to_string(i) + ".pgm");
    save_raster(oracle::random_grid(90 + i, 70, 0.3 + 0.1 * i, 100 + i), p, RasterFormat::kPgmBinary);
    inputs.push_back(p.string());
  }
  auto run_with = [&](const std::string& workers) {
    std::vector<std::string> owned{"morpho", "measure", "--workers", workers};
    owned.insert(owned.end(), inputs.begin(), inputs.end());
    std::vector<const char*> argv;
    for (const auto& a : owned) argv.push_back(a.c_str());
    std::ostringstream out, err;
    EXPECT_EQ(cli::run(static_cast<int>(argv.size()), argv.data(), out, err), 0) << err.str();
    return out.str();
  };
  const std::string one = run_with("1");
  EXPECT_EQ(run_with("2"), one);
  EXPECT_EQ(run_with("8"), one);

  // Single input: the scan itself is split.
  const auto single1 = invoke({"measure", "--workers", "1", inputs[0]});
  const auto single8 = invoke({"measure", "--workers", "8", inputs[0]});
  EXPECT_EQ(single1.out, single8.out);
}

TEST(CliMeasure, AppendsToDataset) {
  const auto dir = oracle::scratch_dir("cli_append");
  save_raster(oracle::checkerboard(8, 8), dir / "board.txt", RasterFormat::kText);
  const auto ds = (dir / "points.csv").string();
  auto r = invoke({"measure", "--out", ds, "--category", "city", "--population", "1200",
                   (dir / "board.txt").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto loaded = load_csv(ds);
  ASSERT_EQ(loaded.size(), 1u);
  EXPECT_EQ(loaded.points()[0].category, "city");
  EXPECT_EQ(loaded.points()[0].population, 1200u);
  // Same label again is rejected, the file is kept.
  r = invoke({"measure", "--out", ds, (dir / "board.txt").string()});
  EXPECT_EQ(r.code, cli::kExitFailure);
  EXPECT_EQ(load_csv(ds).size(), 1u);
}

TEST(CliGenerate, SameSeedSameBytes) {
  const auto dir = oracle::scratch_dir("cli_gen");
  for (const char* name : {"a.pgm", "b.pgm"}) {
    const auto r = invoke({"generate", "--kind", "random", "--size", "64", "--seed", "11", "--out",
                           (dir / name).string()});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  EXPECT_EQ(oracle::slurp(dir / "a.pgm"), oracle::slurp(dir / "b.pgm"));
  invoke({"generate", "--kind", "random", "--size", "64", "--seed", "12", "--out", (dir / "c.pgm").string()});
  EXPECT_NE(oracle::slurp(dir / "a.pgm"), oracle::slurp(dir / "c.pgm"));
}

TEST(CliGenerate, OrderedUnitIsCheckerboard) {
  const auto dir = oracle::scratch_dir("cli_ordered");
  const auto r = invoke({"generate", "--kind", "ordered", "--size", "8", "--block", "1", "--street", "1", "--out",
                         (dir / "o.txt").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(load_raster(dir / "o.txt"), oracle::checkerboard(8, 8));
}

TEST(CliGenerate, SingleParticleDla) {
  const auto dir = oracle::scratch_dir("cli_dla");
  const auto r = invoke({"generate", "--kind", "dla", "--size", "101", "--particles", "1", "--out",
                         (dir / "d.pgm").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const Grid g = load_raster(dir / "d.pgm");
  EXPECT_EQ(g.built_count(), 1u);
  EXPECT_TRUE(g.built(50, 50));
}

TEST(CliGenerate, MeasureAndTrace) {
  const auto dir = oracle::scratch_dir("cli_gen_measure");
  const auto ds = (dir / "ds.csv").string();
  const auto r = invoke({"generate", "--kind", "anneal", "--size", "24", "--steps", "300", "--out",
                         (dir / "a.pgm").string(), "--measure", ds, "--label", "annealed", "--trace",
                         (dir / "trace.csv").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto loaded = load_csv(ds);
  ASSERT_EQ(loaded.size(), 1u);
  EXPECT_EQ(loaded.points()[0].label, "annealed");
  EXPECT_EQ(loaded.points()[0].category, "theoretical");
  EXPECT_EQ(loaded.sources()[0].rfind("gen:", 0), 0u);
  const auto trace = lines(oracle::slurp(dir / "trace.csv"));
  EXPECT_EQ(trace.front(), "step,H,accepted");
  EXPECT_EQ(trace.size(), 301u);
}

TEST(CliGenerate, BadArguments) {
  const auto dir = oracle::scratch_dir("cli_gen_bad");
  EXPECT_EQ(invoke({"generate", "--kind", "nope", "--out", (dir / "x.pgm").string()}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"generate", "--kind", "random", "--size", "8"}).code, cli::kExitUsage);
  EXPECT_NE(invoke({"generate", "--kind", "random", "--p", "1.5", "--out", (dir / "x.pgm").string()}).code, 0);
  EXPECT_EQ(invoke({}).code, cli::kExitUsage);
}

std::string write_dataset(const std::filesystem::path& dir, const std::string& body) {
  const auto path = dir / "ds.csv";
  std::ofstream(path, std::ios::binary) << kCsvHeader << "\n" << body;
  return path.string();
}

TEST(CliPlot, EmptyDatasetWritesThreeFiles) {
  const auto dir = oracle::scratch_dir("cli_plot_empty");
  const auto ds = write_dataset(dir, "");
  const auto r = invoke({"plot", ds, "--out", (dir / "svg").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* name : {"De_iPe.svg", "De_I.svg", "iPe_I.svg"}) {
    const std::string svg = oracle::slurp(dir / "svg" / name);
    EXPECT_EQ(svg.rfind("<?xml", 0), 0u) << name;
    EXPECT_NE(svg.find("</svg>"), std::string::npos) << name;
  }
}

TEST(CliPlot, MalformedRowNamesLine) {
  const auto dir = oracle::scratch_dir("cli_plot_bad");
  const auto ds = write_dataset(dir, "a,,0.1,0.2,0.3,,s\nb,,0.1,oops,0.3,,s\n");
  const auto r = invoke({"plot", ds, "--out", (dir / "svg").string()});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
}

TEST(CliPlot, Deterministic) {
  const auto dir = oracle::scratch_dir("cli_plot_det");
  const auto ds = write_dataset(dir, "a,city,0.1,0.2,0.3,100,s\nb,,0.5,0.5,0.5,,s\n");
  ASSERT_EQ(invoke({"plot", ds, "--out", (dir / "one").string()}).code, 0);
  ASSERT_EQ(invoke({"plot", ds, "--out", (dir / "two").string()}).code, 0);
  for (const char* name : {"De_iPe.svg", "De_I.svg", "iPe_I.svg"}) {
    EXPECT_EQ(oracle::slurp(dir / "one" / name), oracle::slurp(dir / "two" / name));
  }
}

TEST(CliClassify, DefaultAndCustomBands) {
  const auto dir = oracle::scratch_dir("cli_classify");
  const auto ds = write_dataset(dir, "mid,,0.45,0.5,0.3,,s\nodd,,0.95,0.01,0.95,,s\n");
  auto r = invoke({"classify", ds});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "label,band\nmid,urban-band\nodd,unoccupied\n");

  std::ofstream(dir / "all.json") << R"([{"name": "all", "De": [0, 1], "iPe": [0, 1], "I": [0, 1]}])";
  r = invoke({"classify", ds, "--bands", (dir / "all.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "label,band\nmid,all\nodd,all\n");

  std::ofstream(dir / "bad.json") << "[{";
  EXPECT_NE(invoke({"classify", ds, "--bands", (dir / "bad.json").string()}).code, 0);
}

TEST(CliCluster, TwoGroups) {
  const auto dir = oracle::scratch_dir("cli_cluster");
  const auto ds = write_dataset(dir, "a,,0.01,0.02,0.03,,s\nb,,0.98,0.97,0.99,,s\nc,,0.02,0.01,0.02,,s\n");
  const auto r = invoke({"cluster", ds, "--k", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "label,cluster\na,0\nb,1\nc,0\n");
  EXPECT_NE(invoke({"cluster", ds, "--k", "4"}).code, 0);
}

}  // namespace
}  // namespace morpho
