#pragma once
// Stage runners. Each stage reads and writes only the line-delimited record
// files in the output directory, never mutating a prior stage's artifacts:
//
//   synth / ingest  -> samples.jsonl
//   render          -> rendered.jsonl + images/*.svg
//   annotate        -> completions.jsonl, annotate_failures.jsonl
//   judge           -> dataset.jsonl, quarantine.jsonl
//   evaluate        -> metrics.json
//   report          -> report.txt
//
// Reruns with identical inputs, config and seed produce byte-identical
// artifacts. A lockfile serializes pipelines per output directory.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "tsrkit/annotate/judge.hpp"
#include "tsrkit/annotate/mock.hpp"
#include "tsrkit/annotate/pool.hpp"
#include "tsrkit/cli/chart.hpp"
#include "tsrkit/cli/config.hpp"
#include "tsrkit/cli/ingest.hpp"
#include "tsrkit/core/records_io.hpp"
#include "tsrkit/core/validate.hpp"
#include "tsrkit/metrics/report.hpp"
#include "tsrkit/synth/defaults.hpp"
#include "tsrkit/synth/inject.hpp"

#ifdef _WIN32
#error "the pipeline lockfile uses POSIX flock"
#endif
#include <sys/file.h>
#include <unistd.h>

#include <fcntl.h>

namespace tsrkit::cli {

// flock-based guard: one pipeline instance per output directory.
class PipelineLock {
 public:
  explicit PipelineLock(const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    path_ = out_dir / ".lock";
    fd_ = ::open(path_.c_str(), O_CREAT | O_RDWR, 0644);
    if (fd_ < 0) throw std::runtime_error("cannot open lockfile: " + path_.string());
    if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
      ::close(fd_);
      fd_ = -1;
      throw std::runtime_error("output directory is locked by another pipeline: " + path_.string());
    }
  }
  ~PipelineLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  PipelineLock(const PipelineLock&) = delete;
  PipelineLock& operator=(const PipelineLock&) = delete;

 private:
  std::filesystem::path path_;
  int fd_ = -1;
};

struct StageResult {
  int exit_code = 0;
  std::size_t processed = 0;
  std::size_t quarantined = 0;
  std::string summary;
};

namespace paths {

inline std::string samples(const PipelineConfig& c) {
  return (std::filesystem::path(c.paths.out_dir) / "samples.jsonl").string();
}
inline std::string rendered(const PipelineConfig& c) {
  return (std::filesystem::path(c.paths.out_dir) / "rendered.jsonl").string();
}
inline std::string completions(const PipelineConfig& c) {
  return (std::filesystem::path(c.paths.out_dir) / "completions.jsonl").string();
}
inline std::string annotate_failures(const PipelineConfig& c) {
  return (std::filesystem::path(c.paths.out_dir) / "annotate_failures.jsonl").string();
}
inline std::string dataset(const PipelineConfig& c) {
  return (std::filesystem::path(c.paths.out_dir) / "dataset.jsonl").string();
}
inline std::string quarantine(const PipelineConfig& c) {
  return (std::filesystem::path(c.paths.out_dir) / "quarantine.jsonl").string();
}
inline std::string metrics_file(const PipelineConfig& c) {
  return (std::filesystem::path(c.paths.out_dir) / "metrics.json").string();
}
inline std::string report_file(const PipelineConfig& c) {
  return (std::filesystem::path(c.paths.out_dir) / "report.txt").string();
}

// Stages read the most annotated sample file available.
inline std::string best_samples(const PipelineConfig& c) {
  if (std::filesystem::exists(rendered(c))) return rendered(c);
  return samples(c);
}

}  // namespace paths

namespace detail {

inline std::uint64_t sample_seed(std::uint64_t master, std::size_t index) {
  return synth::detail::mix_seed(master, 0xA0000 + index);
}

// Deterministic synthetic context line.
inline std::string synth_context(const synth::BaseSignalSpec& spec) {
  std::string text = "Synthetic ";
  text += synth::to_string(spec.kind);
  text += " signal with ";
  text += std::to_string(spec.channels);
  text += spec.channels == 1 ? " channel" : " channels";
  text += " sampled at unit intervals; values are dimensionless.";
  return text;
}

inline prompt::TemplateSet templates_for(const PipelineConfig& cfg) {
  if (!cfg.templates_dir.empty()) return prompt::TemplateSet::load(cfg.templates_dir);
  return prompt::TemplateSet::builtin();
}

inline std::shared_ptr<annotate::Provider> make_provider(const annotate::ProviderConfig& pc,
                                                         bool mock,
                                                         std::shared_ptr<annotate::MockStats> stats) {
  if (mock) return std::make_shared<annotate::MockProvider>(pc.model_id, std::move(stats));
  return std::make_shared<annotate::HttpProvider>(pc);
}

}  // namespace detail

inline void require_valid_config(const PipelineConfig& cfg) {
  const auto errors = validate_config(cfg);
  if (!errors.empty()) {
    std::string what = "invalid config:";
    for (const auto& e : errors) what += "\n  " + e;
    throw std::invalid_argument(what);
  }
}

// ---------------------------------------------------------------------------
// synth: generate samples with the configured anomaly ratio. The anomalous
// count is exact (round(ratio * n)) with a seeded assignment shuffle, so the
// observed fraction never wanders from the configured one.
inline StageResult run_synth(const PipelineConfig& cfg) {
  require_valid_config(cfg);
  PipelineLock lock(cfg.paths.out_dir);

  const std::size_t n = cfg.sample_count;
  std::mt19937_64 rng(synth::detail::mix_seed(cfg.seed, 0x5A17));

  std::vector<bool> anomalous(n, false);
  const auto anomaly_count =
      static_cast<std::size_t>(std::llround(cfg.anomaly_ratio * static_cast<double>(n)));
  for (std::size_t i = 0; i < std::min(anomaly_count, n); ++i) anomalous[i] = true;
  std::shuffle(anomalous.begin(), anomalous.end(), rng);

  std::vector<DatasetRecord> records;
  records.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t seed = detail::sample_seed(cfg.seed, i);
    std::mt19937_64 srng(seed);
    const bool multivariate =
        std::uniform_real_distribution<double>(0.0, 1.0)(srng) < cfg.multivariate_fraction;
    const Arity arity = multivariate ? Arity::Multivariate : Arity::Univariate;
    const std::size_t length =
        std::uniform_int_distribution<std::size_t>(cfg.lengths.min, cfg.lengths.max)(srng);

    const auto& cats = catalog(arity);
    AnomalyCategory category = cats[0];
    if (anomalous[i])
      category = cats[1 + srng() % (cats.size() - 1)];

    std::size_t channels = 1;
    if (multivariate) {
      const std::size_t lo = std::max<std::size_t>(
          std::max<std::size_t>(2, cfg.channels.min), synth::defaults::min_channels(category));
      const std::size_t hi = std::max(lo, cfg.channels.max);
      channels = std::uniform_int_distribution<std::size_t>(lo, hi)(srng);
    }

    synth::BaseSignalSpec base_spec =
        synth::defaults::base_recipe(category, length, channels, seed);
    if (!anomalous[i]) {
      // Normal samples draw any base kind with generic parameters.
      static const synth::BaseKind kinds[] = {synth::BaseKind::Sine, synth::BaseKind::TrendPlusNoise,
                                              synth::BaseKind::Ar1, synth::BaseKind::RandomWalk};
      base_spec.kind = kinds[srng() % 4];
      base_spec.params.clear();
      switch (base_spec.kind) {
        case synth::BaseKind::Sine:
          base_spec.params = {{"period", static_cast<double>(length) / 4.0},
                              {"amplitude", 1.0},
                              {"noise_std", 0.25}};
          break;
        case synth::BaseKind::TrendPlusNoise:
          base_spec.params = {{"slope", 4.0 / static_cast<double>(length)}, {"noise_std", 1.0}};
          break;
        default:
          base_spec.params = {{"phi", 0.4}, {"innovation_std", 1.0}};
          break;
      }
    }

    Sample sample;
    char idbuf[32];
    std::snprintf(idbuf, sizeof(idbuf), "synth-%06zu", i);
    sample.id = idbuf;
    sample.domain = std::string("Synthetic-") + synth::to_string(base_spec.kind);
    sample.context = detail::synth_context(base_spec);
    sample.is_anomaly = anomalous[i];

    TimeSeriesSegment segment = synth::gen_base(base_spec);
    if (anomalous[i]) {
      synth::InjectionSpec ispec;
      ispec.category = category;
      ispec.severity = cfg.severity;
      segment = synth::inject(segment, ispec);
    }
    sample.segment = std::move(segment);
    sample.gold_category = category;

    DatasetRecord rec = make_record(std::move(sample));
    const auto validation = validate(rec);
    if (!validation.ok())
      throw std::runtime_error("generated record failed validation: " +
                               validation.violations.front().path);
    records.push_back(std::move(rec));
  }

  write_records(records, paths::samples(cfg));
  StageResult res;
  res.processed = records.size();
  res.summary = "wrote " + std::to_string(records.size()) + " samples";
  return res;
}

// ---------------------------------------------------------------------------
// ingest: delimited table -> samples.jsonl
inline StageResult run_ingest(const PipelineConfig& cfg, const IngestOptions& opts) {
  require_valid_config(cfg);
  PipelineLock lock(cfg.paths.out_dir);
  const auto samples = ingest(cfg.paths.input, opts);
  std::vector<DatasetRecord> records;
  records.reserve(samples.size());
  for (const auto& s : samples) records.push_back(make_record(s));
  write_records(records, paths::samples(cfg));
  StageResult res;
  res.processed = records.size();
  res.summary = "ingested " + std::to_string(records.size()) + " segments";
  return res;
}

// ---------------------------------------------------------------------------
// render: charts for every sample.
inline StageResult run_render(const PipelineConfig& cfg) {
  require_valid_config(cfg);
  PipelineLock lock(cfg.paths.out_dir);
  auto records = read_records(paths::samples(cfg));
  const std::filesystem::path images(cfg.paths.images());
  for (auto& rec : records) rec.sample.image_ref = render_chart(rec.sample, images);
  write_records(records, paths::rendered(cfg));
  StageResult res;
  res.processed = records.size();
  res.summary = "rendered " + std::to_string(records.size()) + " charts";
  return res;
}

inline void write_failures(const std::vector<CompletionFailure>& failures,
                           const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (const auto& f : failures) {
    nlohmann::ordered_json j;
    j["sample_id"] = f.sample_id;
    j["model_id"] = f.model_id;
    j["error"] = f.error;
    out << j.dump() << '\n';
  }
}

// ---------------------------------------------------------------------------
// annotate: fan samples out to the pool.
inline StageResult run_annotate(const PipelineConfig& cfg) {
  require_valid_config(cfg);
  PipelineLock lock(cfg.paths.out_dir);
  const auto records = read_records(paths::best_samples(cfg));
  const auto templates = detail::templates_for(cfg);

  annotate::ProviderPool pool;
  auto stats = std::make_shared<annotate::MockStats>();
  for (const auto& pc : cfg.pool)
    pool.add(pc, detail::make_provider(pc, cfg.mock_providers, stats));

  // Samples are independent; process them across a small worker pool. The
  // per-provider semaphores inside ProviderPool cap in-flight requests across
  // all workers, and results are merged in sample order for determinism.
  std::vector<annotate::PoolResult> slots(records.size());
  std::vector<char> sample_failed(records.size(), 0);  // char: distinct slots are thread-safe
  std::atomic<std::size_t> next{0};
  const std::size_t workers =
      std::min<std::size_t>(records.size(), std::max(2u, std::thread::hardware_concurrency()));
  std::vector<std::thread> threads;
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= records.size()) return;
        const auto& rec = records[i];
        const auto few_shots = templates.exemplars_for(rec.sample.segment.arity());
        try {
          slots[i] = annotate::sample_completions(rec.sample, pool, templates, few_shots,
                                                  cfg.judge.include_image);
        } catch (const annotate::AllProvidersFailed&) {
          sample_failed[i] = 1;
        }
      }
    });
  }
  for (auto& t : threads) t.join();

  std::vector<Completion> completions;
  std::vector<CompletionFailure> failures;
  std::size_t quarantined = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (sample_failed[i]) {
      ++quarantined;
      for (const auto& pc : cfg.pool)
        failures.push_back({records[i].sample.id, pc.model_id, "all providers failed"});
      continue;
    }
    completions.insert(completions.end(), slots[i].completions.begin(), slots[i].completions.end());
    failures.insert(failures.end(), slots[i].failures.begin(), slots[i].failures.end());
  }

  write_completions(completions, paths::completions(cfg));
  write_failures(failures, paths::annotate_failures(cfg));

  StageResult res;
  res.processed = records.size();
  res.quarantined = quarantined;
  res.summary = std::to_string(completions.size()) + " completions, " +
                std::to_string(failures.size()) + " failures";
  if (cfg.strict_quarantine && quarantined > 0) res.exit_code = 1;
  return res;
}

// ---------------------------------------------------------------------------
// judge: rank, select, critique, merge; emit the final dataset.
inline StageResult run_judge(const PipelineConfig& cfg) {
  require_valid_config(cfg);
  PipelineLock lock(cfg.paths.out_dir);
  auto records = read_records(paths::best_samples(cfg));
  const auto completions = read_completions(paths::completions(cfg));
  const auto templates = detail::templates_for(cfg);

  std::map<std::string, std::vector<Completion>> by_sample;
  for (const auto& c : completions) by_sample[c.sample_id].push_back(c);

  auto judge_provider =
      detail::make_provider(cfg.judge.provider, cfg.mock_providers, nullptr);

  std::vector<DatasetRecord> dataset;
  std::vector<DatasetRecord> quarantine;
  for (auto& rec : records) {
    const auto it = by_sample.find(rec.sample.id);
    if (it == by_sample.end() || it->second.size() < 2) {
      quarantine.push_back(rec);
      continue;
    }
    const auto few_shots = templates.exemplars_for(rec.sample.segment.arity());
    const auto instruction = prompt::render_instruction(rec.sample, few_shots, templates);
    try {
      auto bundle =
          annotate::judge(rec.sample, it->second, *judge_provider, instruction.text, templates,
                          cfg.judge);
      bundle = annotate::critique_and_merge(rec.sample, std::move(bundle), *judge_provider,
                                            instruction.text, templates, cfg.judge);
      rec.final_thought = bundle.final_thought;
      rec.final_action = bundle.final_action;
      rec.sample.gold_category = bundle.final_action;
      rec.provenance = Provenance{bundle.ranking, bundle.critique_applied};
      const auto validation = validate(rec);
      if (!validation.ok()) {
        quarantine.push_back(rec);
        continue;
      }
      dataset.push_back(rec);
    } catch (const annotate::JudgeFailure&) {
      quarantine.push_back(rec);
    }
  }

  // Serialized by sample id for deterministic output.
  std::sort(dataset.begin(), dataset.end(),
            [](const DatasetRecord& a, const DatasetRecord& b) { return a.sample.id < b.sample.id; });
  std::sort(quarantine.begin(), quarantine.end(),
            [](const DatasetRecord& a, const DatasetRecord& b) { return a.sample.id < b.sample.id; });
  write_records(dataset, paths::dataset(cfg));
  write_records(quarantine, paths::quarantine(cfg));

  StageResult res;
  res.processed = records.size();
  res.quarantined = quarantine.size();
  res.summary = std::to_string(dataset.size()) + " records, " + std::to_string(quarantine.size()) +
                " quarantined";
  if (cfg.strict_quarantine && !quarantine.empty()) res.exit_code = 1;
  return res;
}

// ---------------------------------------------------------------------------
// evaluate: prediction records against the judged dataset.
inline StageResult run_evaluate(const PipelineConfig& cfg, const std::string& predictions_path,
                                std::string gold_path = "") {
  require_valid_config(cfg);
  if (gold_path.empty()) gold_path = paths::dataset(cfg);
  const auto golds = read_records(gold_path);
  const auto pred_records = read_records(predictions_path);

  std::vector<metrics::Prediction> preds;
  preds.reserve(pred_records.size());
  for (const auto& r : pred_records) {
    metrics::Prediction p;
    p.sample_id = r.sample.id;
    p.is_anomaly = r.sample.is_anomaly;
    p.action = r.final_action;
    p.thought = r.final_thought;
    preds.push_back(std::move(p));
  }

  metrics::HashedBowEmbedder embedder;
  const auto report = metrics::evaluate(preds, golds, embedder);

  std::ofstream out(paths::metrics_file(cfg), std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write metrics file");
  out << metrics::to_json(report).dump(2) << '\n';

  StageResult res;
  res.processed = report.n;
  res.summary = metrics::render_table(report);
  return res;
}

// ---------------------------------------------------------------------------
// report: per-category statistics and, when present, the metric table.
inline StageResult run_report(const PipelineConfig& cfg) {
  require_valid_config(cfg);
  const auto dataset = read_records(paths::dataset(cfg));
  std::size_t quarantined = 0;
  if (std::filesystem::exists(paths::quarantine(cfg)))
    quarantined = read_records(paths::quarantine(cfg)).size();

  std::map<std::string, std::size_t> by_category;
  std::size_t anomalous = 0;
  for (const auto& rec : dataset) {
    by_category[rec.final_action ? rec.final_action->name : "(unlabeled)"]++;
    if (rec.sample.is_anomaly) ++anomalous;
  }

  std::ostringstream text;
  text << "dataset records: " << dataset.size() << "\n";
  text << "quarantined:     " << quarantined << "\n";
  if (!dataset.empty())
    text << "anomalous frac:  "
         << static_cast<double>(anomalous) / static_cast<double>(dataset.size()) << "\n";
  text << "\nper-category counts:\n";
  for (const auto& [name, count] : by_category) text << "  " << name << ": " << count << "\n";

  if (std::filesystem::exists(paths::metrics_file(cfg))) {
    std::ifstream in(paths::metrics_file(cfg));
    nlohmann::ordered_json j;
    in >> j;
    text << "\nmetrics (" << paths::metrics_file(cfg) << "):\n" << j.dump(2) << "\n";
  }

  std::ofstream out(paths::report_file(cfg), std::ios::binary | std::ios::trunc);
  out << text.str();

  StageResult res;
  res.processed = dataset.size();
  res.quarantined = quarantined;
  res.summary = text.str();
  if (cfg.strict_quarantine && quarantined > 0) res.exit_code = 1;
  return res;
}

}  // namespace tsrkit::cli
