#include <filesystem>
#include <fstream>
#include <random>

#include <catch_amalgamated.hpp>

#include "tsrkit/cli/ingest.hpp"

using namespace tsrkit;
using namespace tsrkit::cli;

namespace {

std::filesystem::path write_table(const char* name, const std::string& contents) {
  const auto dir = std::filesystem::temp_directory_path() / "tsrkit_tests";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream out(path);
  out << contents;
  return path;
}

IngestOptions options() {
  IngestOptions opts;
  opts.domain = "Traffic-Speed";
  opts.context = "highway sensor";
  opts.seed = 77;
  return opts;
}

}  // namespace

TEST_CASE("a 300-row table splits into in-range segments covering every row in order") {
  std::string body;
  for (int i = 0; i < 300; ++i) body += std::to_string(0.5 + 0.001 * i) + "\n";
  const auto path = write_table("table300.csv", body);
  const auto samples = ingest(path.string(), options());

  std::vector<double> reassembled;
  for (const auto& s : samples) {
    REQUIRE(s.segment.length() >= 16);
    REQUIRE(s.segment.length() <= 128);
    REQUIRE(s.domain == "Traffic-Speed");
    REQUIRE(s.context == "highway sensor");
    REQUIRE_FALSE(s.gold_category.has_value());
    const auto& vals = s.segment.channels[0].values;
    reassembled.insert(reassembled.end(), vals.begin(), vals.end());
  }
  REQUIRE(reassembled.size() == 300);
  for (int i = 0; i < 300; ++i) REQUIRE(reassembled[static_cast<std::size_t>(i)] == 0.5 + 0.001 * i);
}

TEST_CASE("a label column marks a segment anomalous when any row is positive") {
  std::string body = "value,label\n";
  for (int i = 0; i < 200; ++i) body += std::to_string(0.1 * (i % 7)) + (i == 150 ? ",1\n" : ",0\n");
  const auto path = write_table("labeled.csv", body);
  const auto samples = ingest(path.string(), options());

  std::size_t offset = 0;
  bool saw_anomalous = false;
  for (const auto& s : samples) {
    const bool expected = 150 >= offset && 150 < offset + s.segment.length();
    REQUIRE(s.is_anomaly == expected);
    saw_anomalous = saw_anomalous || s.is_anomaly;
    offset += s.segment.length();
    REQUIRE(s.segment.channels[0].name == "value");
  }
  REQUIRE(saw_anomalous);
}

TEST_CASE("short and malformed tables are rejected with a location") {
  const auto tiny = write_table("tiny.csv", "1\n2\n3\n");
  REQUIRE_THROWS_AS(ingest(tiny.string(), options()), std::runtime_error);

  const auto bad = write_table("bad.csv", "1\n2\npotato\n4\n5\n6\n7\n8\n9\n10\n11\n12\n13\n14\n15\n16\n");
  try {
    ingest(bad.string(), options());
    FAIL("expected an error naming the bad cell");
  } catch (const std::runtime_error& e) {
    REQUIRE(std::string(e.what()).find(":3") != std::string::npos);
    REQUIRE(std::string(e.what()).find("potato") != std::string::npos);
  }
}

TEST_CASE("multichannel tables keep header names and channel counts") {
  std::string body = "flow,occupancy\n";
  for (int i = 0; i < 64; ++i)
    body += std::to_string(1.0 + i) + "," + std::to_string(2.0 * i) + "\n";
  const auto path = write_table("multi.csv", body);
  const auto samples = ingest(path.string(), options());
  REQUIRE_FALSE(samples.empty());
  for (const auto& s : samples) {
    REQUIRE(s.segment.channels.size() == 2);
    REQUIRE(s.segment.channels[0].name == "flow");
    REQUIRE(s.segment.channels[1].name == "occupancy");
  }
}

TEST_CASE("segmentation is deterministic per seed") {
  std::string body;
  for (int i = 0; i < 500; ++i) body += std::to_string(i) + "\n";
  const auto path = write_table("det.csv", body);
  const auto a = ingest(path.string(), options());
  const auto b = ingest(path.string(), options());
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(a[i].segment == b[i].segment);
}
