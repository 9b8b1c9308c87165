#pragma once
// Record validation. Violations are data, not failures: every invariant is
// checked and reported with a field path so batch tooling can triage.

#include <set>
#include <string>
#include <vector>

#include "tsrkit/core/record.hpp"

namespace tsrkit {

struct Violation {
  std::string path;
  std::string message;
};

struct ValidationResult {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

inline ValidationResult validate(const DatasetRecord& rec) {
  ValidationResult res;
  auto add = [&res](std::string path, std::string message) {
    res.violations.push_back({std::move(path), std::move(message)});
  };

  const Sample& s = rec.sample;
  const auto& seg = s.segment;

  if (s.id.empty()) add("id", "sample id is empty");
  if (s.domain.empty()) add("domain", "domain is empty");

  if (seg.channels.empty()) {
    add("channels", "segment has no channels");
    return res;
  }
  if (seg.channels.size() > kMaxChannels)
    add("channels", "more than " + std::to_string(kMaxChannels) + " channels");

  const std::size_t n = seg.channels.front().values.size();
  std::set<std::string> names;
  for (const auto& ch : seg.channels) {
    if (ch.values.size() != n) add("channels.length", "channel \"" + ch.name + "\" differs in length");
    if (!names.insert(ch.name).second)
      add("channels", "duplicate channel name \"" + ch.name + "\"");
  }
  if (n < kMinSegmentLength || n > kMaxSegmentLength)
    add("length", "length " + std::to_string(n) + " outside [" +
                      std::to_string(kMinSegmentLength) + ", " + std::to_string(kMaxSegmentLength) + "]");

  if (seg.anomaly_window) {
    const auto& w = *seg.anomaly_window;
    if (w.begin >= w.end || w.end > n) add("anomaly_window", "window does not fit the segment");
  }

  if (s.gold_category && s.gold_category->arity != seg.arity())
    add("category", "category arity does not match the segment");
  if (!s.is_anomaly && s.gold_category && !s.gold_category->is_normal())
    add("category", "normal sample labeled with a non-normal category");

  if (rec.final_action) {
    if (rec.final_action->arity != seg.arity())
      add("final_action", "action arity does not match the segment");
    if (rec.final_action->is_normal() == s.is_anomaly)
      add("final_action", s.is_anomaly ? "anomalous sample resolved to the normal category"
                                       : "normal sample resolved to a non-normal category");
  }

  if (rec.provenance) {
    std::set<std::string> seen;
    for (const auto& m : rec.provenance->ranking) {
      if (!seen.insert(m).second) add("provenance.ranking", "duplicate model id \"" + m + "\"");
    }
    if (rec.provenance->ranking.empty()) add("provenance.ranking", "ranking is empty");
  }

  return res;
}

}  // namespace tsrkit
