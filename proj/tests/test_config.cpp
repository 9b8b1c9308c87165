#include <random>

#include <catch_amalgamated.hpp>

#include "tsrkit/cli/config.hpp"

using namespace tsrkit;
using namespace tsrkit::cli;

TEST_CASE("the default config validates") {
  REQUIRE(validate_config(default_config()).empty());
}

TEST_CASE("config round-trips through json") {
  auto cfg = default_config();
  cfg.seed = 99;
  cfg.anomaly_ratio = 0.5;
  cfg.paths.input = "data.csv";
  cfg.embedder_endpoint = "http://localhost:9999/embed";
  const auto back = config_from_json(to_json(cfg));
  REQUIRE(back == cfg);
}

TEST_CASE("randomized configs survive the round trip") {
  std::mt19937_64 gen(5);
  for (int i = 0; i < 50; ++i) {
    auto cfg = default_config();
    cfg.seed = gen();
    cfg.anomaly_ratio = (gen() % 1000) / 1000.0;
    cfg.multivariate_fraction = (gen() % 1000) / 1000.0;
    cfg.sample_count = 1 + gen() % 5000;
    cfg.lengths = {16 + gen() % 32, 64 + gen() % 64};
    cfg.channels = {2 + gen() % 3, 5 + gen() % 5};
    cfg.mock_providers = gen() % 2 == 0;
    cfg.strict_quarantine = gen() % 2 == 0;
    cfg.pool[0].max_in_flight = static_cast<int>(1 + gen() % 8);
    cfg.pool[1].retries = static_cast<int>(gen() % 5);
    cfg.pool[2].timeout_s = 1.0 + static_cast<double>(gen() % 100);
    REQUIRE(config_from_json(to_json(cfg)) == cfg);
  }
}

TEST_CASE("validation reports field paths before any work") {
  auto cfg = default_config();
  cfg.anomaly_ratio = 1.5;
  cfg.channels = {9, 2};
  cfg.judge.likert_max = 7;
  cfg.pool[1].model_id = cfg.pool[0].model_id;
  const auto errors = validate_config(cfg);
  REQUIRE(errors.size() >= 4);
  bool ratio = false, channels = false, judge = false, dup = false;
  for (const auto& e : errors) {
    ratio = ratio || e.rfind("anomaly_ratio:", 0) == 0;
    channels = channels || e.rfind("channels:", 0) == 0;
    judge = judge || e.rfind("judge:", 0) == 0;
    dup = dup || e.find("duplicate") != std::string::npos;
  }
  REQUIRE(ratio);
  REQUIRE(channels);
  REQUIRE(judge);
  REQUIRE(dup);
}

TEST_CASE("model ids may not contain ranking separators") {
  auto cfg = default_config();
  cfg.pool[0].model_id = "bad>id";
  REQUIRE_FALSE(validate_config(cfg).empty());
}
