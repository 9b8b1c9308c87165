#include <filesystem>
#include <fstream>
#include <sstream>

#include <catch_amalgamated.hpp>

#include "tsrkit/cli/pipeline.hpp"

using namespace tsrkit;
using namespace tsrkit::cli;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PipelineConfig test_config(const std::string& dir_name, std::size_t count = 30) {
  auto cfg = default_config();
  cfg.sample_count = count;
  cfg.seed = 20240817;
  cfg.paths.out_dir =
      (std::filesystem::temp_directory_path() / "tsrkit_tests" / dir_name).string();
  std::filesystem::remove_all(cfg.paths.out_dir);
  return cfg;
}

}  // namespace

TEST_CASE("offline pipeline runs clean end to end") {
  auto cfg = test_config("pipe_e2e");
  REQUIRE(run_synth(cfg).exit_code == 0);
  REQUIRE(run_render(cfg).exit_code == 0);
  REQUIRE(run_annotate(cfg).exit_code == 0);
  const auto judged = run_judge(cfg);
  REQUIRE(judged.exit_code == 0);
  REQUIRE(judged.quarantined == 0);

  const auto dataset = read_records(paths::dataset(cfg));
  REQUIRE(dataset.size() == cfg.sample_count);
  for (const auto& rec : dataset) {
    const auto res = validate(rec);
    INFO(rec.sample.id << (res.ok() ? "" : (": " + res.violations.front().path)));
    REQUIRE(res.ok());
    REQUIRE(rec.provenance.has_value());
    REQUIRE(rec.provenance->ranking.size() == cfg.pool.size());
    REQUIRE(rec.final_action.has_value());
    REQUIRE_FALSE(rec.final_thought.empty());
    REQUIRE(rec.sample.image_ref.has_value());
  }

  // evaluate the dataset against itself: everything is 1.0
  const auto eval = run_evaluate(cfg, paths::dataset(cfg));
  REQUIRE(eval.exit_code == 0);
  nlohmann::ordered_json metrics;
  std::ifstream(paths::metrics_file(cfg)) >> metrics;
  REQUIRE(metrics.at("label").at("f1").get<double>() == 1.0);
  REQUIRE(metrics.at("action").at("f1").get<double>() == 1.0);
  REQUIRE(metrics.at("thought").at("avg").get<double>() == 1.0);

  const auto report = run_report(cfg);
  REQUIRE(report.exit_code == 0);
  REQUIRE(slurp(paths::report_file(cfg)).find("per-category counts") != std::string::npos);
}

TEST_CASE("stages are idempotent and never mutate prior artifacts") {
  auto cfg = test_config("pipe_idem", 12);
  run_synth(cfg);
  const auto samples_once = slurp(paths::samples(cfg));
  run_synth(cfg);
  REQUIRE(slurp(paths::samples(cfg)) == samples_once);

  run_render(cfg);
  REQUIRE(slurp(paths::samples(cfg)) == samples_once);  // render writes its own file
  const auto rendered_once = slurp(paths::rendered(cfg));
  run_render(cfg);
  REQUIRE(slurp(paths::rendered(cfg)) == rendered_once);

  run_annotate(cfg);
  const auto completions_once = slurp(paths::completions(cfg));
  REQUIRE(slurp(paths::rendered(cfg)) == rendered_once);
  run_annotate(cfg);
  REQUIRE(slurp(paths::completions(cfg)) == completions_once);

  run_judge(cfg);
  const auto dataset_once = slurp(paths::dataset(cfg));
  REQUIRE(slurp(paths::completions(cfg)) == completions_once);
  run_judge(cfg);
  REQUIRE(slurp(paths::dataset(cfg)) == dataset_once);
}

TEST_CASE("two runs with the same seed are byte-identical, a different seed is not") {
  auto cfg_a = test_config("pipe_det_a", 15);
  auto cfg_b = test_config("pipe_det_b", 15);
  cfg_b.seed = cfg_a.seed;
  run_synth(cfg_a);
  run_synth(cfg_b);
  REQUIRE(slurp(paths::samples(cfg_a)) == slurp(paths::samples(cfg_b)));

  auto cfg_c = test_config("pipe_det_c", 15);
  cfg_c.seed = cfg_a.seed + 1;
  run_synth(cfg_c);
  REQUIRE_FALSE(slurp(paths::samples(cfg_c)) == slurp(paths::samples(cfg_a)));
}

TEST_CASE("judge quarantines samples without enough completions") {
  auto cfg = test_config("pipe_quarantine", 8);
  run_synth(cfg);
  run_annotate(cfg);

  // Strip one sample's completions down to a single model and drop another's
  // entirely; both must land in quarantine and the counts must add up.
  auto completions = read_completions(paths::completions(cfg));
  const auto records = read_records(paths::samples(cfg));
  const std::string starved = records[0].sample.id;
  const std::string dropped = records[1].sample.id;
  std::vector<Completion> kept;
  bool one_kept = false;
  for (auto& c : completions) {
    if (c.sample_id == dropped) continue;
    if (c.sample_id == starved) {
      if (one_kept) continue;
      one_kept = true;
    }
    kept.push_back(std::move(c));
  }
  write_completions(kept, paths::completions(cfg));

  cfg.strict_quarantine = false;
  const auto judged = run_judge(cfg);
  REQUIRE(judged.quarantined == 2);
  const auto dataset = read_records(paths::dataset(cfg));
  const auto quarantine = read_records(paths::quarantine(cfg));
  REQUIRE(dataset.size() + quarantine.size() == cfg.sample_count);
  for (const auto& rec : dataset) {
    REQUIRE(rec.sample.id != starved);
    REQUIRE(rec.sample.id != dropped);
  }

  cfg.strict_quarantine = true;
  REQUIRE(run_judge(cfg).exit_code == 1);
}

TEST_CASE("the output directory lock rejects a second pipeline") {
  auto cfg = test_config("pipe_lock", 5);
  std::filesystem::create_directories(cfg.paths.out_dir);
  PipelineLock held(cfg.paths.out_dir);
  REQUIRE_THROWS_AS(run_synth(cfg), std::runtime_error);
}

TEST_CASE("invalid configs are rejected with field paths before running") {
  auto cfg = test_config("pipe_badcfg", 5);
  cfg.anomaly_ratio = 2.0;
  try {
    run_synth(cfg);
    FAIL("expected config rejection");
  } catch (const std::invalid_argument& e) {
    REQUIRE(std::string(e.what()).find("anomaly_ratio") != std::string::npos);
  }
}
