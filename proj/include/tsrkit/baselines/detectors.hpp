#pragma once
// Classical per-step anomaly scorers for desk-scale sanity comparisons:
// rolling z-score, k-nearest-neighbor distance and local outlier factor over
// sliding-window feature vectors (window w, stride 1; w = 1 scores raw
// points). Neighbor ties break towards the lower index.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsrkit/core/segment.hpp"
#include "tsrkit/metrics/prf.hpp"
#include "tsrkit/synth/stats.hpp"

namespace tsrkit::baselines {

enum class DetectorKind { ZScore, Knn, Lof };

struct DetectorConfig {
  DetectorKind kind = DetectorKind::ZScore;
  std::size_t window = 8;  // trailing window for ZScore, feature width for KNN/LOF
  std::size_t k = 5;
  double threshold = 3.0;
};

struct ScoreResult {
  std::vector<double> scores;       // one per time step
  std::vector<std::string> flags;   // e.g. zero-variance windows
};

namespace detail {

// Feature vectors of width w, stride 1, channels interleaved.
inline std::vector<std::vector<double>> window_features(const TimeSeriesSegment& seg, std::size_t w) {
  const std::size_t n = seg.length();
  std::vector<std::vector<double>> feats;
  if (w == 0 || w > n) return feats;
  feats.reserve(n - w + 1);
  for (std::size_t start = 0; start + w <= n; ++start) {
    std::vector<double> f;
    f.reserve(w * seg.channels.size());
    for (std::size_t t = start; t < start + w; ++t)
      for (const auto& ch : seg.channels) f.push_back(ch.values[t]);
    feats.push_back(std::move(f));
  }
  return feats;
}

inline double euclidean(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(acc);
}

// Indices of the k nearest other vectors, distance then index ascending.
inline std::vector<std::size_t> k_nearest(const std::vector<std::vector<double>>& feats,
                                          std::size_t self, std::size_t k) {
  std::vector<std::pair<double, std::size_t>> dist;
  dist.reserve(feats.size() - 1);
  for (std::size_t j = 0; j < feats.size(); ++j) {
    if (j == self) continue;
    dist.emplace_back(euclidean(feats[self], feats[j]), j);
  }
  std::sort(dist.begin(), dist.end());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < std::min(k, dist.size()); ++i) out.push_back(dist[i].second);
  return out;
}

// Spreads per-vector scores back onto time steps: each step takes the score
// of the vector ending at it (first full vector for the warm-up steps).
inline std::vector<double> per_step(const std::vector<double>& vec_scores, std::size_t n,
                                    std::size_t w) {
  std::vector<double> out(n, 0.0);
  if (vec_scores.empty()) return out;
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t j = t + 1 >= w ? std::min(t + 1 - w, vec_scores.size() - 1) : 0;
    out[t] = vec_scores[j];
  }
  return out;
}

}  // namespace detail

inline ScoreResult score(const TimeSeriesSegment& seg, const DetectorConfig& cfg) {
  check_segment(seg);
  const std::size_t n = seg.length();
  if (cfg.window < 1) throw std::invalid_argument("detector window must be >= 1");
  if (cfg.kind == DetectorKind::ZScore && cfg.window < 2)
    throw std::invalid_argument("zscore window must be >= 2");
  if (cfg.window > n) throw std::invalid_argument("detector window exceeds segment length");

  ScoreResult res;
  res.scores.assign(n, 0.0);

  if (cfg.kind == DetectorKind::ZScore) {
    bool flagged = false;
    for (std::size_t t = 0; t < n; ++t) {
      const std::size_t lo = t + 1 >= cfg.window ? t + 1 - cfg.window : 0;
      double best = 0.0;
      for (const auto& ch : seg.channels) {
        std::span<const double> win(ch.values.data() + lo, t - lo + 1);
        if (win.size() < 2) continue;
        const double mu = stats::mean(win);
        const double sd = stats::stddev(win);
        if (sd <= 0.0) {
          flagged = true;
          continue;
        }
        best = std::max(best, std::abs(ch.values[t] - mu) / sd);
      }
      res.scores[t] = best;
    }
    if (flagged) res.flags.push_back("zero-variance window scored 0");
    return res;
  }

  const auto feats = detail::window_features(seg, cfg.window);
  if (feats.size() < 2) throw std::invalid_argument("not enough points for windowed features");
  if (cfg.k >= feats.size()) throw std::invalid_argument("k must be below the number of scored vectors");

  std::vector<double> vec_scores(feats.size(), 0.0);
  if (cfg.kind == DetectorKind::Knn) {
    for (std::size_t i = 0; i < feats.size(); ++i) {
      double acc = 0.0;
      const auto nn = detail::k_nearest(feats, i, cfg.k);
      for (std::size_t j : nn) acc += detail::euclidean(feats[i], feats[j]);
      vec_scores[i] = acc / static_cast<double>(nn.size());
    }
  } else {
    // Standard LOF with a fixed-size neighbor set (ties cut by index).
    std::vector<std::vector<std::size_t>> neighbors(feats.size());
    std::vector<double> k_dist(feats.size(), 0.0);
    for (std::size_t i = 0; i < feats.size(); ++i) {
      neighbors[i] = detail::k_nearest(feats, i, cfg.k);
      k_dist[i] = detail::euclidean(feats[i], feats[neighbors[i].back()]);
    }
    auto reach = [&](std::size_t p, std::size_t o) {
      return std::max(k_dist[o], detail::euclidean(feats[p], feats[o]));
    };
    std::vector<double> lrd(feats.size(), 0.0);
    for (std::size_t i = 0; i < feats.size(); ++i) {
      double acc = 0.0;
      for (std::size_t o : neighbors[i]) acc += reach(i, o);
      lrd[i] = acc > 0.0 ? static_cast<double>(neighbors[i].size()) / acc
                         : std::numeric_limits<double>::infinity();
    }
    for (std::size_t i = 0; i < feats.size(); ++i) {
      double acc = 0.0;
      for (std::size_t o : neighbors[i]) acc += lrd[o];
      if (std::isinf(lrd[i])) {
        vec_scores[i] = 1.0;  // duplicate cluster: exactly as dense as its neighbors
      } else {
        vec_scores[i] = acc / (static_cast<double>(neighbors[i].size()) * lrd[i]);
      }
    }
  }
  res.scores = detail::per_step(vec_scores, n, cfg.window);
  return res;
}

inline metrics::Prf threshold_eval(const std::vector<double>& scores, const std::vector<bool>& golds,
                          double threshold) {
  if (scores.size() != golds.size()) throw std::invalid_argument("score/gold length mismatch");
  std::vector<bool> preds;
  preds.reserve(scores.size());
  for (double s : scores) preds.push_back(s > threshold);
  return metrics::binary_prf(preds, golds);
}

struct SweepEntry {
  double threshold = 0.0;
  metrics::Prf prf;
};

struct SweepResult {
  double best_threshold = 0.0;
  metrics::Prf best;
  std::vector<SweepEntry> entries;
};

// Best-F1 threshold over pooled per-step scores; ties go to the lower
// threshold.
inline SweepResult sweep(const std::vector<std::vector<double>>& score_sets,
                         const std::vector<std::vector<bool>>& gold_sets,
                         const std::vector<double>& thresholds) {
  if (thresholds.empty()) throw std::invalid_argument("at least one threshold required");
  if (score_sets.size() != gold_sets.size())
    throw std::invalid_argument("score/gold set count mismatch");
  std::vector<double> pooled_scores;
  std::vector<bool> pooled_golds;
  for (std::size_t i = 0; i < score_sets.size(); ++i) {
    pooled_scores.insert(pooled_scores.end(), score_sets[i].begin(), score_sets[i].end());
    pooled_golds.insert(pooled_golds.end(), gold_sets[i].begin(), gold_sets[i].end());
  }
  std::vector<double> sorted = thresholds;
  std::sort(sorted.begin(), sorted.end());
  SweepResult out;
  bool first = true;
  for (double th : sorted) {
    SweepEntry entry{th, threshold_eval(pooled_scores, pooled_golds, th)};
    if (first || entry.prf.f1 > out.best.f1) {
      out.best_threshold = th;
      out.best = entry.prf;
      first = false;
    }
    out.entries.push_back(std::move(entry));
  }
  return out;
}

}  // namespace tsrkit::baselines
