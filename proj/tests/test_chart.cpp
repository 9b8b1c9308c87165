#include <filesystem>
#include <fstream>
#include <sstream>

#include <catch_amalgamated.hpp>

#include "tsrkit/cli/chart.hpp"

using namespace tsrkit;
using namespace tsrkit::cli;

namespace {

Sample chart_sample(std::size_t channels) {
  Sample s;
  s.id = "chart-" + std::to_string(channels);
  s.domain = "IoT-Sensors";
  s.context = "ambient";
  for (std::size_t c = 0; c < channels; ++c) {
    std::vector<double> values;
    for (int t = 0; t < 48; ++t) values.push_back(std::sin(0.2 * t + c) + 0.1 * c);
    s.segment.channels.push_back({"sensor" + std::to_string(c + 1), values});
  }
  return s;
}

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
  std::size_t count = 0, pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    ++count;
    pos += needle.size();
  }
  return count;
}

}  // namespace

TEST_CASE("a univariate chart has exactly one polyline") {
  const auto svg = render_chart_svg(chart_sample(1));
  REQUIRE(count_occurrences(svg, "<polyline") == 1);
  REQUIRE(svg.find("width=\"800\"") != std::string::npos);
  REQUIRE(svg.find("height=\"300\"") != std::string::npos);
}

TEST_CASE("a three-channel chart has three polylines and a three-entry legend") {
  const auto svg = render_chart_svg(chart_sample(3));
  REQUIRE(count_occurrences(svg, "<polyline") == 3);
  REQUIRE(count_occurrences(svg, "class=\"legend\"") == 3);
  for (const char* name : {"sensor1", "sensor2", "sensor3"})
    REQUIRE(svg.find(name) != std::string::npos);
}

TEST_CASE("rendering the same sample twice produces identical bytes") {
  const auto dir = std::filesystem::temp_directory_path() / "tsrkit_tests" / "charts";
  std::filesystem::remove_all(dir);
  const auto sample = chart_sample(2);
  const auto path1 = render_chart(sample, dir / "a");
  const auto path2 = render_chart(sample, dir / "b");
  std::ifstream f1(path1, std::ios::binary), f2(path2, std::ios::binary);
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  REQUIRE(s1.str() == s2.str());
  REQUIRE_FALSE(s1.str().empty());
}

TEST_CASE("flat series still render with a non-degenerate value range") {
  Sample s = chart_sample(1);
  for (auto& v : s.segment.channels[0].values) v = 3.0;
  const auto svg = render_chart_svg(s);
  REQUIRE(svg.find("nan") == std::string::npos);
  REQUIRE(svg.find("inf") == std::string::npos);
}
