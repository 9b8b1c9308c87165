#include <random>

#include <catch_amalgamated.hpp>

#include "helpers.hpp"
#include "tsrkit/prompt/serialize.hpp"

using namespace tsrkit;
using tsrkit::prompt::format_value;
using tsrkit::prompt::serialize_observation;

namespace {

TimeSeriesSegment uni_segment(std::vector<double> values) {
  TimeSeriesSegment seg;
  seg.channels.push_back({"value", std::move(values)});
  return seg;
}

}  // namespace

TEST_CASE("univariate observations are comma-space separated") {
  REQUIRE(serialize_observation(uni_segment({-0.04, -0.05, -0.09})) == "-0.04, -0.05, -0.09");
}

TEST_CASE("multivariate observations use quoted channel blocks") {
  TimeSeriesSegment seg;
  seg.channels.push_back({"A", {0.0}});
  seg.channels.push_back({"B", {1.0}});
  REQUIRE(serialize_observation(seg) == "\"A\": [0.0]; \"B\": [1.0]");
}

TEST_CASE("half-even rounding at two decimals") {
  REQUIRE(format_value(0.125) == "0.12");
  REQUIRE(format_value(0.125) == testing_oracles::decimal_round_2dp(0.125));
  REQUIRE(format_value(0.0) == "0.0");
  REQUIRE(format_value(-0.001) == "0.0");
  REQUIRE(format_value(1.0) == "1.0");
  REQUIRE(format_value(1.25) == "1.25");
  REQUIRE(format_value(1.2) == "1.2");
  REQUIRE(format_value(-1.555) == testing_oracles::decimal_round_2dp(-1.555));
}

TEST_CASE("formatting agrees with the decimal-arithmetic oracle on random values") {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> val(-100.0, 100.0);
  for (int i = 0; i < 2000; ++i) {
    const double v = val(gen);
    REQUIRE(format_value(v) == testing_oracles::decimal_round_2dp(v));
  }
  // adversarial values near .xx5 boundaries
  for (int i = 0; i < 2000; ++i) {
    const double v = (static_cast<double>(gen() % 20001) - 10000.0) / 200.0 + 0.005;
    REQUIRE(format_value(v) == testing_oracles::decimal_round_2dp(v));
  }
}

TEST_CASE("serialized output re-parses to the rounded input") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> val(-50.0, 50.0);
  std::vector<double> values;
  for (int i = 0; i < 40; ++i) values.push_back(val(gen));
  const auto text = serialize_observation(uni_segment(values));

  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(", ", start);
    parts.push_back(text.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 2;
  }
  REQUIRE(parts.size() == values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    REQUIRE(parts[i] == format_value(values[i]));
    const double reparsed = std::stod(parts[i]);
    REQUIRE(format_value(reparsed) == parts[i]);
  }
}

TEST_CASE("empty channels cannot be serialized") {
  TimeSeriesSegment seg;
  seg.channels.push_back({"value", {}});
  REQUIRE_THROWS_AS(serialize_observation(seg), std::invalid_argument);
}
