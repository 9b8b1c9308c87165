#pragma once
// Record types shared by every pipeline stage: samples, per-model
// completions, judge feedback bundles and final dataset records.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tsrkit/core/segment.hpp"
#include "tsrkit/core/taxonomy.hpp"

namespace tsrkit {

// A full multimodal unit: the series, its textual context, an optional
// rendered chart, and what is known about it at annotation time.
struct Sample {
  std::string id;
  TimeSeriesSegment segment;
  std::string domain;                          // e.g. "Healthcare-ECG"
  std::string context;                         // free-text description
  std::optional<std::string> image_ref;        // chart path once rendered
  bool is_anomaly = false;
  std::optional<AnomalyCategory> gold_category;

  friend bool operator==(const Sample&, const Sample&) = default;
};

// One pool model's answer for one sample.
struct Completion {
  std::string sample_id;
  std::string model_id;
  std::string thought;
  AnomalyCategory action;
  std::string raw_response;
  std::uint64_t latency_ms = 0;
};

// A pool model that failed to produce a usable completion. Kept alongside
// successes so the judge stage can decide whether enough answers remain.
struct CompletionFailure {
  std::string sample_id;
  std::string model_id;
  std::string error;
};

// Judge output for one sample. `ranking` is a permutation of the pool's
// model ids, best first; scores are 1..5 where parseable.
struct FeedbackBundle {
  std::string sample_id;
  std::map<std::string, int> scores;
  std::vector<std::string> ranking;
  std::string best_model;
  std::optional<std::string> critique;
  std::string final_thought;
  AnomalyCategory final_action;
  bool critique_applied = false;
  std::vector<std::string> flags;  // non-fatal consistency notes
};

struct Provenance {
  std::vector<std::string> ranking;
  bool critique_applied = false;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

// One line of the line-delimited record files. Before annotation the thought
// is empty and the category slot holds the gold label (when known); after the
// judge stage the slot holds the final action and provenance is present.
struct DatasetRecord {
  Sample sample;
  std::string final_thought;
  std::optional<AnomalyCategory> final_action;
  std::optional<Provenance> provenance;

  friend bool operator==(const DatasetRecord&, const DatasetRecord&) = default;
};

inline DatasetRecord make_record(Sample sample) {
  DatasetRecord rec;
  rec.final_action = sample.gold_category;
  rec.sample = std::move(sample);
  return rec;
}

}  // namespace tsrkit
