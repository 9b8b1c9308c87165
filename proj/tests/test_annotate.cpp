#include <thread>

#include <catch_amalgamated.hpp>

#include "tsrkit/annotate/mock.hpp"
#include "tsrkit/annotate/pool.hpp"

using namespace tsrkit;
using namespace tsrkit::annotate;

namespace {

Sample sample_with_id(const std::string& id, bool anomalous = true) {
  Sample s;
  s.id = id;
  s.domain = "Server-Metrics";
  s.context = "cpu load";
  std::vector<double> values;
  for (int t = 0; t < 24; ++t) values.push_back(0.4 + 0.01 * (t % 5));
  s.segment.channels.push_back({"value", values});
  s.is_anomaly = anomalous;
  return s;
}

ProviderConfig config_for(const std::string& id, int retries = 2) {
  ProviderConfig cfg;
  cfg.model_id = id;
  cfg.endpoint = "mock://local";
  cfg.model_name = id;
  cfg.retries = retries;
  return cfg;
}

ProviderPool make_mock_pool(const std::vector<std::string>& ids,
                            std::vector<std::shared_ptr<MockProvider>>* out_providers = nullptr,
                            int retries = 2) {
  ProviderPool pool;
  for (const auto& id : ids) {
    auto provider = std::make_shared<MockProvider>(id);
    if (out_providers) out_providers->push_back(provider);
    pool.add(config_for(id, retries), provider);
  }
  return pool;
}

}  // namespace

TEST_CASE("a four-model pool yields four completions in pool order") {
  auto pool = make_mock_pool({"m1", "m2", "m3", "m4"});
  const auto& templates = prompt::TemplateSet::builtin();
  const auto result = sample_completions(sample_with_id("s-7"), pool, templates,
                                         templates.exemplars_for(Arity::Univariate));
  REQUIRE(result.completions.size() == 4);
  REQUIRE(result.failures.empty());
  for (std::size_t i = 0; i < 4; ++i)
    REQUIRE(result.completions[i].model_id == "m" + std::to_string(i + 1));
  for (const auto& c : result.completions) {
    REQUIRE(c.sample_id == "s-7");
    REQUIRE(c.action.arity == Arity::Univariate);
    REQUIRE_FALSE(c.action.is_normal());  // prompt declares an anomalous sequence
    REQUIRE_FALSE(c.thought.empty());
  }
}

TEST_CASE("mock completions are deterministic per model and sample") {
  const auto& templates = prompt::TemplateSet::builtin();
  auto run = [&templates] {
    auto pool = make_mock_pool({"m1", "m2"});
    return sample_completions(sample_with_id("s-9"), pool, templates,
                              templates.exemplars_for(Arity::Univariate));
  };
  const auto a = run();
  const auto b = run();
  REQUIRE(a.completions.size() == b.completions.size());
  for (std::size_t i = 0; i < a.completions.size(); ++i) {
    REQUIRE(a.completions[i].raw_response == b.completions[i].raw_response);
    REQUIRE(a.completions[i].thought == b.completions[i].thought);
    REQUIRE(a.completions[i].action == b.completions[i].action);
  }
  // different models disagree at least somewhere across samples
  bool any_diff = false;
  for (int s = 0; s < 10 && !any_diff; ++s) {
    auto pool = make_mock_pool({"m1", "m2"});
    const auto r = sample_completions(sample_with_id("diverge-" + std::to_string(s)), pool,
                                      templates, templates.exemplars_for(Arity::Univariate));
    any_diff = !(r.completions[0].action == r.completions[1].action);
  }
  REQUIRE(any_diff);
}

TEST_CASE("normal samples come back with the normal action") {
  auto pool = make_mock_pool({"m1", "m2"});
  const auto& templates = prompt::TemplateSet::builtin();
  const auto result = sample_completions(sample_with_id("s-n", false), pool, templates,
                                         templates.exemplars_for(Arity::Univariate));
  for (const auto& c : result.completions) REQUIRE(c.action.is_normal());
}

TEST_CASE("one failing provider with no retries leaves a recorded failure") {
  std::vector<std::shared_ptr<MockProvider>> providers;
  auto pool = make_mock_pool({"m1", "m2", "m3", "m4"}, &providers, /*retries=*/0);
  providers[2]->fail_when([](const ChatRequest&) { return true; });
  const auto& templates = prompt::TemplateSet::builtin();
  const auto result = sample_completions(sample_with_id("s-13"), pool, templates,
                                         templates.exemplars_for(Arity::Univariate));
  REQUIRE(result.completions.size() == 3);
  REQUIRE(result.failures.size() == 1);
  REQUIRE(result.failures[0].model_id == "m3");
  REQUIRE(result.failures[0].error.find("simulated failure") != std::string::npos);
}

TEST_CASE("retries recover a provider that fails only once") {
  std::vector<std::shared_ptr<MockProvider>> providers;
  auto pool = make_mock_pool({"m1"}, &providers, /*retries=*/2);
  auto failures_left = std::make_shared<std::atomic<int>>(1);
  providers[0]->fail_when([failures_left](const ChatRequest&) {
    return failures_left->fetch_sub(1) > 0;
  });
  const auto& templates = prompt::TemplateSet::builtin();
  const auto result = sample_completions(sample_with_id("s-14"), pool, templates,
                                         templates.exemplars_for(Arity::Univariate));
  REQUIRE(result.completions.size() == 1);
}

TEST_CASE("a sample with every provider down is reported as failed") {
  std::vector<std::shared_ptr<MockProvider>> providers;
  auto pool = make_mock_pool({"m1", "m2"}, &providers, /*retries=*/0);
  providers[0]->fail_when([](const ChatRequest&) { return true; });
  providers[1]->fail_when([](const ChatRequest&) { return true; });
  const auto& templates = prompt::TemplateSet::builtin();
  REQUIRE_THROWS_AS(sample_completions(sample_with_id("s-15"), pool, templates,
                                       templates.exemplars_for(Arity::Univariate)),
                    AllProvidersFailed);
}

TEST_CASE("per-provider in-flight requests never exceed max_in_flight") {
  auto stats = std::make_shared<MockStats>();
  ProviderPool pool;
  auto cfg = config_for("gated");
  cfg.max_in_flight = 2;
  pool.add(cfg, std::make_shared<MockProvider>("gated", stats, std::chrono::milliseconds(3)));

  const auto& templates = prompt::TemplateSet::builtin();
  const auto shots = templates.exemplars_for(Arity::Univariate);
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&pool, &templates, &shots, t] {
      for (int i = 0; i < 4; ++i) {
        sample_completions(sample_with_id("load-" + std::to_string(t) + "-" + std::to_string(i)),
                           pool, templates, shots);
      }
    });
  }
  for (auto& th : threads) th.join();
  REQUIRE(stats->calls.load() == 32);
  REQUIRE(stats->max_in_flight.load() <= 2);
  REQUIRE(stats->max_in_flight.load() >= 1);
}
