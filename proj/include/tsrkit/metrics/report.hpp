#pragma once
// Three-way evaluation report: binary label matching, multi-class action
// matching, and the four thought similarities with their average. Mirrors
// the standard label / action / thought table layout.

#include <algorithm>
#include <cstdio>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tsrkit/core/record.hpp"
#include "tsrkit/metrics/prf.hpp"
#include "tsrkit/metrics/text_sim.hpp"

namespace tsrkit::metrics {

struct ThoughtMetrics {
  double cosine = 0.0;
  double tfidf = 0.0;
  double levenshtein = 0.0;
  double token = 0.0;
  double avg = 0.0;
};

struct MetricReport {
  Prf label;
  Prf action;        // macro over gold classes
  Prf action_micro;  // accuracy-style alternative
  ThoughtMetrics thought;
  std::size_t n = 0;
  std::vector<std::string> degenerate_flags;
};

struct Prediction {
  std::string sample_id;
  bool is_anomaly = false;
  std::optional<AnomalyCategory> action;  // nullopt records an unparseable output
  std::string thought;
};

inline MetricReport evaluate(const std::vector<Prediction>& preds,
                             const std::vector<DatasetRecord>& golds, Embedder& embedder) {
  if (preds.empty() || golds.empty()) throw std::invalid_argument("empty evaluation set");

  std::map<std::string, const DatasetRecord*> by_id;
  for (const auto& g : golds) by_id[g.sample.id] = &g;
  std::vector<std::pair<const Prediction*, const DatasetRecord*>> pairs;
  for (const auto& p : preds) {
    const auto it = by_id.find(p.sample_id);
    if (it == by_id.end())
      throw std::invalid_argument("prediction id \"" + p.sample_id + "\" has no gold record");
    pairs.emplace_back(&p, it->second);
  }
  if (pairs.empty()) throw std::invalid_argument("no overlapping sample ids");

  MetricReport report;
  report.n = pairs.size();

  std::vector<bool> label_pred, label_gold;
  std::vector<std::optional<AnomalyCategory>> action_pred;
  std::vector<AnomalyCategory> action_gold;
  for (const auto& [p, g] : pairs) {
    label_pred.push_back(p->is_anomaly);
    label_gold.push_back(g->sample.is_anomaly);
    if (!g->final_action)
      throw std::invalid_argument("gold record \"" + g->sample.id + "\" has no category");
    action_pred.push_back(p->action);
    action_gold.push_back(*g->final_action);
  }
  report.label = binary_prf(label_pred, label_gold);
  report.action = action_prf(action_pred, action_gold);
  report.action_micro = action_prf_micro(action_pred, action_gold);

  // Shared idf statistics over every thought in the evaluation set.
  std::vector<std::string> corpus;
  corpus.reserve(pairs.size() * 2);
  for (const auto& [p, g] : pairs) {
    corpus.push_back(p->thought);
    corpus.push_back(g->final_thought);
  }

  double sum_cos = 0, sum_tfidf = 0, sum_lev = 0, sum_tok = 0, sum_avg = 0;
  std::size_t cos_available = 0;
  for (const auto& [p, g] : pairs) {
    const double lev = levenshtein_sim(p->thought, g->final_thought);
    const double tfv = tfidf_sim(p->thought, g->final_thought, corpus);
    const double tok = token_seq_sim(p->thought, g->final_thought);
    const auto cos = cosine_sim(p->thought, g->final_thought, embedder);
    sum_lev += lev;
    sum_tfidf += tfv;
    sum_tok += tok;
    if (cos) {
      sum_cos += *cos;
      ++cos_available;
      sum_avg += (*cos + tfv + lev + tok) / 4.0;
    } else {
      sum_avg += (tfv + lev + tok) / 3.0;
    }
  }
  const auto n = static_cast<double>(pairs.size());
  report.thought.levenshtein = sum_lev / n;
  report.thought.tfidf = sum_tfidf / n;
  report.thought.token = sum_tok / n;
  if (cos_available == pairs.size()) {
    report.thought.cosine = sum_cos / n;
  } else {
    report.thought.cosine = cos_available > 0 ? sum_cos / static_cast<double>(cos_available) : 0.0;
    report.degenerate_flags.push_back("cosine unavailable for " +
                                      std::to_string(pairs.size() - cos_available) + " pairs");
  }
  report.thought.avg = sum_avg / n;

  for (const auto& f : report.label.flags) report.degenerate_flags.push_back("label: " + f);
  for (const auto& f : report.action.flags) report.degenerate_flags.push_back("action: " + f);
  return report;
}

inline nlohmann::ordered_json to_json(const MetricReport& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["label"] = {{"precision", r.label.precision}, {"recall", r.label.recall}, {"f1", r.label.f1}};
  j["action"] = {{"averaging", "macro over gold classes"},
                 {"precision", r.action.precision},
                 {"recall", r.action.recall},
                 {"f1", r.action.f1}};
  j["action_micro"] = {{"precision", r.action_micro.precision},
                       {"recall", r.action_micro.recall},
                       {"f1", r.action_micro.f1}};
  j["thought"] = {{"cosine", r.thought.cosine},
                  {"tfidf", r.thought.tfidf},
                  {"levenshtein", r.thought.levenshtein},
                  {"token", r.thought.token},
                  {"avg", r.thought.avg}};
  j["degenerate_flags"] = r.degenerate_flags;
  return j;
}

inline std::string render_table(const MetricReport& r) {
  char buf[512];
  std::string out;
  out += "                 Label Matching        ActionID Matching      Thought Matching\n";
  out += "      n          P      R      F1      P      R      F1      Cosine TFIDF  Lev.   Token  Avg.\n";
  std::snprintf(buf, sizeof(buf),
                "%7zu     %6.4f %6.4f %6.4f  %6.4f %6.4f %6.4f  %6.4f %6.4f %6.4f %6.4f %6.4f\n",
                r.n, r.label.precision, r.label.recall, r.label.f1, r.action.precision,
                r.action.recall, r.action.f1, r.thought.cosine, r.thought.tfidf,
                r.thought.levenshtein, r.thought.token, r.thought.avg);
  out += buf;
  if (!r.degenerate_flags.empty()) {
    out += "flags:";
    for (const auto& f : r.degenerate_flags) out += " [" + f + "]";
    out += "\n";
  }
  return out;
}

}  // namespace tsrkit::metrics
