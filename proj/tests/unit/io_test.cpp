#include "markedpoints/errors.hpp"
#include "markedpoints/io.hpp"
#include "markedpoints/svg.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

using namespace markedpoints;

TEST(Io, NumberFormat)
{
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(format_number(2.0), "2");
  EXPECT_EQ(format_number(std::nan("")), "nan");
}

TEST(Io, NetworkRoundTrip)
{
  const LinearNetwork net({{0, 0}, {1, 0}, {1, 2.5}}, {{0, 1}, {1, 2}});
  const auto back = parse_network_json(network_to_json(net));
  EXPECT_EQ(back.vertices(), net.vertices());
  EXPECT_EQ(back.segment_count(), 2u);
  EXPECT_EQ(back.total_length(), net.total_length());
  EXPECT_THROW(parse_network_json("{\"vertices\": [[0,0]]"), Error);
  try {
    read_network_json("/nonexistent/net.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::data);
    EXPECT_NE(std::string(e.what()).find("/nonexistent/net.json"), std::string::npos);
  }
}

TEST(Io, PatternCsvRoundTrip)
{
  const auto w = PlanarWindow::unit_square();
  MarkedPointPattern p(w, {{Point2{0.1, 0.2}, "a", 1.5}, {Point2{0.3, 0.4}, std::nullopt, std::nullopt},
                           {Point2{0.9, 0.25}, "b", -2.0}});
  const auto back = parse_pattern_csv(pattern_to_csv(p), w);
  ASSERT_EQ(back.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(std::get<Point2>(back.points()[i].location), std::get<Point2>(p.points()[i].location));
    EXPECT_EQ(back.points()[i].type, p.points()[i].type);
    EXPECT_EQ(back.points()[i].mark, p.points()[i].mark);
  }
  const auto reordered = parse_pattern_csv("# comment\nmark,y,x\n3,0.5,0.25\n", w);
  EXPECT_EQ(std::get<Point2>(reordered.points()[0].location), (Point2{0.25, 0.5}));
  EXPECT_EQ(reordered.points()[0].mark, 3.0);
  EXPECT_THROW(parse_pattern_csv("x,y\n1.5,0.5\n", w), Error);
  EXPECT_THROW(parse_pattern_csv("x,y\nabc,0.5\n", w), Error);

  auto net = std::make_shared<const LinearNetwork>(std::vector<Point2>{{0, 0}, {4, 0}}, std::vector<Segment>{{0, 1}});
  MarkedPointPattern q(net, {{NetworkLocation{0, 0.25}, {}, 2.0}});
  const auto nback = parse_pattern_csv(pattern_to_csv(q), net);
  EXPECT_EQ(std::get<NetworkLocation>(nback.points()[0].location), (NetworkLocation{0, 0.25}));
}

TEST(Io, CurveAndBandCsv)
{
  SummaryCurve c{"kcross", {0, 0.5}, {0, std::nan("")}, std::vector<double>{0, 0.78}, {{"edge_correction", "none"}}};
  const auto text = curve_to_csv(c);
  EXPECT_NE(text.find("# statistic=kcross"), std::string::npos);
  EXPECT_NE(text.find("# edge_correction=none"), std::string::npos);
  EXPECT_NE(text.find("r,value,theoretical\n0,0,0\n0.5,nan,0.78000000000000003\n"), std::string::npos);

  EnvelopeBand b;
  b.statistic = "stoyan";
  b.r = {0, 1};
  b.lo = {0.5, 0.6};
  b.hi = {1.5, 1.6};
  b.mean = {1, 1.1};
  b.n_effective = {39, 38};
  b.nsim = 39;
  b.rank = 1;
  const auto band = band_to_csv(b);
  EXPECT_NE(band.find("r,lo,mean,hi,n_effective\n0,0.5,1,1.5,39\n"), std::string::npos);
  EXPECT_NE(band.find("# rank=1"), std::string::npos);
}

TEST(Svg, RendersPanels)
{
  SummaryCurve c{"stoyan", {0, 1, 2, 3}, {1, std::nan(""), 1.2, 0.9}, std::vector<double>{1, 1, 1, 1}, {}};
  EnvelopeBand b;
  b.statistic = "vario";
  b.r = {0, 1, 2};
  b.lo = {0, 1, 2};
  b.hi = {1, 2, 3};
  b.mean = {0.5, 1.5, 2.5};
  b.observed = std::vector<double>{0.4, 1.8, 2.2};
  const std::vector<PlotPanel> panels{curve_panel(c), band_panel(b)};
  const auto svg = render_svg(panels);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_NE(svg.find("<polygon"), std::string::npos);
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
  EXPECT_NE(svg.find("stoyan"), std::string::npos);
  EXPECT_EQ(svg.find("nan"), std::string::npos);
}
