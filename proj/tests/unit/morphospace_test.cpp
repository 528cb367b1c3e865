#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "morpho/error.hpp"
#include "morpho/morphospace.hpp"
#include "support/oracles.hpp"

namespace morpho {
namespace {

MorphoPoint point(std::string label, double de, double ipe, double i) {
  MorphoPoint p;
  p.label = std::move(label);
  p.density = de;
  p.permeability = ipe;
  p.information = i;
  return p;
}

TEST(Classify, DefaultBands) {
  const auto bands = default_bands();
  EXPECT_EQ(classify(point("a", 0.45, 0.50, 0.30), bands), "urban-band");
  EXPECT_EQ(classify(point("b", 0.05, 0.95, 0.30), bands), "non-urban");
  EXPECT_EQ(classify(point("c", 0.95, 0.01, 0.95), bands), "unoccupied");
  // Closed intervals.
  EXPECT_EQ(classify(point("d", 0.35, 0.25, 0.2), bands), "urban-band");
  EXPECT_EQ(classify(point("e", 0.6, 0.75, 0.4), bands), "urban-band");
  EXPECT_TRUE(overlapping_bands(bands).empty());
}

TEST(Classify, FirstMatchWins) {
  const std::vector<BandSpec> bands{{"inner", {0.4, 0.6}, {0.4, 0.6}, {0.4, 0.6}}, {"all", {}, {}, {}}};
  EXPECT_EQ(classify(point("a", 0.5, 0.5, 0.5), bands), "inner");
  EXPECT_EQ(classify(point("b", 0.9, 0.5, 0.5), bands), "all");
  const auto overlaps = overlapping_bands(bands);
  ASSERT_EQ(overlaps.size(), 1u);
  EXPECT_EQ(overlaps[0], (std::pair<std::size_t, std::size_t>{0, 1}));
}

TEST(Bands, ParseJson) {
  const auto bands = parse_bands_json(R"({"bands": [{"name": "all", "De": [0, 1], "iPe": [0, 1], "I": [0, 1]},
                                                     {"name": "dense", "De": [0.8, 1]}]})");
  ASSERT_EQ(bands.size(), 2u);
  EXPECT_EQ(bands[0].name, "all");
  EXPECT_EQ(bands[1].density, (Interval{0.8, 1.0}));
  EXPECT_EQ(bands[1].information, (Interval{0.0, 1.0}));
  EXPECT_EQ(parse_bands_json(R"([{"name": "x"}])").size(), 1u);
}

TEST(Bands, MalformedJson) {
  for (const char* text : {"{", R"({"bands": 3})", R"([{"De": [0, 1]}])", R"([{"name": "x", "De": [0.7, 0.2]}])",
                           R"([{"name": "x", "I": [0, 2]}])", R"([{"name": "x", "iPe": [0]}])"}) {
    try {
      parse_bands_json(text);
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kMalformedData) << text;
    }
  }
}

TEST(Dataset, RejectsDuplicatesAndOutOfRange) {
  MorphoDataset ds;
  ds.add(point("a", 0.1, 0.2, 0.3), "a.pgm");
  EXPECT_THROW(ds.add(point("a", 0.1, 0.2, 0.3), "b.pgm"), Error);
  EXPECT_THROW(ds.add(point("b", 1.1, 0.2, 0.3), "b.pgm"), Error);
  EXPECT_THROW(ds.add(point("c\nd", 0.1, 0.2, 0.3), "c.pgm"), Error);
  EXPECT_EQ(ds.size(), 1u);
}

TEST(Csv, EmptyDatasetIsHeaderOnly) {
  EXPECT_EQ(to_csv(MorphoDataset{}), "label,category,De,iPe,I,population,source\n");
}

TEST(Csv, FormatAndOrder) {
  MorphoDataset ds;
  MorphoPoint lagos = point("lagos", 0.123456789012, 0.5, 1.0 / 3.0);
  lagos.population = 15000000;
  lagos.category = "city";
  ds.add(lagos, "maps/lagos.pgm");
  ds.add(point("b, quoted \"name\"", 0, 1, 0.25), "x.txt");
  ds.add(point("c", 0.75, 0.125, 1e-12), "");
  EXPECT_EQ(to_csv(ds),
            "label,category,De,iPe,I,population,source\n"
            "lagos,city,0.123456789,0.5,0.333333333,15000000,maps/lagos.pgm\n"
            "\"b, quoted \"\"name\"\"\",,0,1,0.25,,x.txt\n"
            "c,,0.75,0.125,1e-12,,\n");
}

TEST(Csv, RoundTripIsCanonical) {
  MorphoDataset ds;
  for (int i = 0; i < 50; ++i) {
    MorphoPoint p = point("p" + std::to_string(i), i / 49.0, std::fmod(i * 0.618033988749, 1.0), 1.0 / (i + 1));
    if (i % 3 == 0) p.population = static_cast<std::uint64_t>(i) * 1000;
    if (i % 4 == 0) p.category = "theoretical";
    ds.add(p, "src," + std::to_string(i));
  }
  const std::string first = to_csv(ds);
  const MorphoDataset parsed = parse_csv(first);
  ASSERT_EQ(parsed.size(), ds.size());
  EXPECT_EQ(to_csv(parsed), first);
  EXPECT_EQ(parsed.points()[3].population, 3000u);
  EXPECT_EQ(parsed.sources()[7], "src,7");
  EXPECT_NEAR(parsed.points()[10].permeability, ds.points()[10].permeability, 1e-9);
}

TEST(Csv, OnePointFile) {
  const auto dir = oracle::scratch_dir("csv");
  MorphoDataset ds;
  ds.add(point("only", 0.4, 0.6, 0.8), "in.pgm");
  emit_csv(ds, dir / "one.csv");
  const std::string text = oracle::slurp(dir / "one.csv");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
  EXPECT_EQ(load_csv(dir / "one.csv"), ds);
  EXPECT_THROW(emit_csv(ds, dir / "missing" / "x.csv"), Error);
}

TEST(Csv, MalformedRowsNameTheLine) {
  const std::string header = "label,category,De,iPe,I,population,source\n";
  auto message = [](const std::string& text) {
    try {
      parse_csv(text);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kMalformedData);
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_EQ(message("label,De\n").rfind("line 1:", 0), 0u);
  EXPECT_EQ(message(header + "a,,0.1,0.2,0.3,,s\nb,,0.1,x,0.3,,s\n").rfind("line 3:", 0), 0u);
  EXPECT_EQ(message(header + "a,,0.1,0.2\n").rfind("line 2:", 0), 0u);
  EXPECT_EQ(message(header + "a,,0.1,0.2,1.3,,s\n").rfind("line 2:", 0), 0u);
  EXPECT_EQ(message(header + "a,,0.1,0.2,0.3,-4,s\n").rfind("line 2:", 0), 0u);
  EXPECT_EQ(message(header + "\"a,,0.1,0.2,0.3,,s\n").rfind("line 2:", 0), 0u);
  EXPECT_EQ(message(header + "a,,0.1,0.2,0.3,,s\na,,0.1,0.2,0.3,,s\n").rfind("line 3:", 0), 0u);
  EXPECT_EQ(message(""), "line 1: missing header");
}

MorphoDataset two_groups(std::size_t per_group) {
  MorphoDataset ds;
  for (std::size_t i = 0; i < per_group; ++i) {
    const double e = 0.01 * static_cast<double>(i % 5);
    ds.add(point("low" + std::to_string(i), 0.02 + e, 0.03 + e / 2, 0.01 + e), "");
    ds.add(point("high" + std::to_string(i), 0.97 - e, 0.95 - e / 2, 0.99 - e), "");
  }
  return ds;
}

TEST(Cluster, SeparatesTwoGroups) {
  const MorphoDataset ds = two_groups(10);
  const auto r = cluster(ds, 2, 1);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const bool low = ds.points()[i].label.rfind("low", 0) == 0;
    EXPECT_EQ(r.assignment[i], low ? 0u : 1u);
  }
  ASSERT_EQ(r.centroids.size(), 2u);
  EXPECT_LT(r.centroids[0][0], 0.1);
  EXPECT_GT(r.centroids[1][0], 0.9);
}

TEST(Cluster, KEqualsCountGivesSingletons) {
  MorphoDataset ds;
  for (int i = 0; i < 7; ++i) ds.add(point("p" + std::to_string(i), i / 7.0, 1 - i / 7.0, (i * 3 % 7) / 7.0), "");
  const auto r = cluster(ds, 7, 42);
  std::vector<std::size_t> ids = r.assignment;
  std::sort(ids.begin(), ids.end());
  EXPECT_EQ(std::unique(ids.begin(), ids.end()), ids.end());
}

TEST(Cluster, RangeErrors) {
  const MorphoDataset ds = two_groups(2);
  EXPECT_THROW(cluster(ds, 0, 1), Error);
  EXPECT_THROW(cluster(ds, 5, 1), Error);
  EXPECT_THROW(cluster(MorphoDataset{}, 1, 1), Error);
}

TEST(Cluster, DeterministicAndPermutationStable) {
  MorphoDataset ds;
  for (int i = 0; i < 24; ++i) {
    ds.add(point("q" + std::to_string(i), std::fmod(i * 0.37, 1.0), std::fmod(i * 0.73, 1.0),
                 std::fmod(i * 0.19, 1.0)),
           "");
  }
  const auto a = cluster(ds, 4, 9);
  EXPECT_EQ(a.assignment, cluster(ds, 4, 9).assignment);

  // Reverse and rotate the input; partitions must match up to relabelling.
  MorphoDataset shuffled;
  for (int i = 0; i < 24; ++i) {
    const auto idx = static_cast<std::size_t>((23 - i + 5) % 24);
    shuffled.add(ds.points()[idx], "");
  }
  const auto b = cluster(shuffled, 4, 9);
  std::map<std::string, std::size_t> by_label;
  for (std::size_t i = 0; i < shuffled.size(); ++i) by_label[shuffled.points()[i].label] = b.assignment[i];
  std::map<std::size_t, std::size_t> relabel;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto other = by_label.at(ds.points()[i].label);
    auto [it, inserted] = relabel.emplace(a.assignment[i], other);
    EXPECT_EQ(it->second, other);
  }
}

TEST(Svg, IdenticalAxesRejected) {
  EXPECT_THROW(svg_scatter(MorphoDataset{}, Axis::kDensity, Axis::kDensity), Error);
}

TEST(Svg, EmptyDatasetHasAxesOnly) {
  const std::string svg = svg_scatter(MorphoDataset{}, Axis::kDensity, Axis::kInformation);
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\""), std::string::npos);
  EXPECT_NE(svg.find(">0.25</text>"), std::string::npos);
  EXPECT_NE(svg.find(">0.75</text>"), std::string::npos);
  EXPECT_NE(svg.find("De (density)"), std::string::npos);
  EXPECT_NE(svg.find("I (information)"), std::string::npos);
  EXPECT_NE(svg.find("<g id=\"points\" stroke=\"black\" stroke-width=\"0.5\" fill-opacity=\"0.8\">\n</g>"),
            std::string::npos);
  EXPECT_NE(svg.find("</svg>\n"), std::string::npos);
}

TEST(Svg, MidpointAndRadius) {
  MorphoDataset ds;
  MorphoPoint mid = point("mid", 0.5, 0.5, 0.5);
  mid.category = "city";
  ds.add(mid, "");
  MorphoPoint big = point("big <city>", 0.0, 1.0, 0.0);
  big.population = 400;
  ds.add(big, "");
  MorphoPoint small = point("small", 1.0, 0.0, 1.0);
  small.population = 100;
  ds.add(small, "");
  const std::string svg = svg_scatter(ds, Axis::kDensity, Axis::kPermeability);
  char expected[128];
  std::snprintf(expected, sizeof expected, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3.00\" fill=\"#7b3294\">",
                PlotFrame::kLeft + PlotFrame::kSide / 2, PlotFrame::kTop + PlotFrame::kSide / 2);
  EXPECT_NE(svg.find(expected), std::string::npos) << svg;
  EXPECT_NE(svg.find("r=\"15.00\""), std::string::npos);  // max population
  EXPECT_NE(svg.find("r=\"9.00\""), std::string::npos);   // a quarter of it: half the scale
  EXPECT_NE(svg.find("big &lt;city&gt;"), std::string::npos);
  EXPECT_EQ(svg, svg_scatter(ds, Axis::kDensity, Axis::kPermeability));
}

}  // namespace
}  // namespace morpho
