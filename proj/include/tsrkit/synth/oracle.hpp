#pragma once
// Oracle detectors: given a segment and its ground-truth window, decide which
// category's statistical signature holds. Used as the test-side inverse of
// the injectors and by the pipeline's self-checks.
//
// The univariate decision list runs in a fixed order so that more specific
// signatures win ties: flatline, repeated, point, spike, amplitude, segment,
// drift, trend, change-point, distributional, periodic, pattern, sparse,
// nonlinear. The multivariate list is ordered the same way by specificity:
// covariance reversal, lag shift, trend divergence, collinearity break,
// principal-component residual, joint offset. The first matching signature
// is returned; with no match the segment is called normal.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "tsrkit/core/segment.hpp"
#include "tsrkit/core/taxonomy.hpp"
#include "tsrkit/synth/defaults.hpp"
#include "tsrkit/synth/stats.hpp"

namespace tsrkit::synth {

namespace oracle_thresholds {

inline constexpr std::size_t kMinOutside = 8;       // contrast tests need this many outside points
inline constexpr std::size_t kFlatlineMinLen = 3;
inline constexpr std::size_t kRepeatedMinRun = 4;
inline constexpr std::size_t kPointMaxLen = 2;
inline constexpr double kPointMinZ = 4.0;
inline constexpr std::size_t kSpikeMaxLen = 6;
inline constexpr double kSpikeMinShift = 3.0;       // mean |deviation| in sd units
inline constexpr double kPeriodicGate = 0.5;        // outside periodicity required by wave tests
inline constexpr double kAmplitudeVarRatio = 5.0;
inline constexpr double kAmplitudeMaxMeanShift = 1.0;
inline constexpr std::size_t kSegmentMinLen = 6;
inline constexpr double kSegmentMeanShift = 2.0;
inline constexpr double kSegmentMaxSlopeRise = 2.0;  // |slope| * len in sd units
inline constexpr double kDriftMaxOutsideRise = 1.0;  // |outside slope| * n in sd units
inline constexpr double kDriftMinInsideRise = 2.5;
inline constexpr double kTrendMinOutsideRise = 2.0;
inline constexpr double kTrendMinSlopeChange = 3.0;  // |slope_in - slope_out| * len in sd units
inline constexpr double kMaxCurvatureF = 10.0;       // above this a window counts as curved
inline constexpr double kCpMeanShift = 2.0;
inline constexpr double kCpMaxSlopeRise = 2.0;
inline constexpr double kDistributionalMadRatioSq = 3.0;  // two-sided
inline constexpr double kDistributionalMaxMeanShift = 1.5;
inline constexpr double kPeriodicVarCollapse = 0.4;
inline constexpr double kPatternMaxInnerPeriodicity = 0.25;
inline constexpr double kPatternMinLinearR2 = 0.6;
inline constexpr double kPatternVarLo = 0.4;
inline constexpr double kPatternVarHi = 4.5;
inline constexpr double kSparseEventZ = 4.0;         // robust z against in-window spread
inline constexpr std::size_t kSparseMinEvents = 2;
inline constexpr std::size_t kSparseMaxEvents = 4;
inline constexpr std::size_t kSparseMinGap = 3;
inline constexpr double kSparseMinSpan = 0.6;

inline constexpr double kCorrStrong = 0.6;           // outside pair correlation gate
inline constexpr double kCorrReversal = -0.6;
inline constexpr double kCollinearOutside = 0.8;
inline constexpr double kCollinearBroken = 0.5;
inline constexpr double kXcorrPeak = 0.7;
inline constexpr int kXcorrMaxLag = 8;
inline constexpr int kXcorrMinLagChange = 2;
inline constexpr double kPcaResidualVarRatio = 4.0;
inline constexpr double kPcaMaxMeanOffset = 2.0;     // residual mean in residual-sd units
inline constexpr double kJointMinMahalanobis = 3.0;  // mean m^2 / d
inline constexpr double kJointMaxMarginalShift = 2.5;
inline constexpr double kJointMinCorr = -0.5;        // reversals belong to covariance

}  // namespace oracle_thresholds

namespace oracle_detail {

struct Pieces {
  std::vector<double> in;
  std::vector<double> prefix;
  std::vector<double> suffix;
  std::vector<double> outside;  // prefix + suffix
};

inline Pieces split(const std::vector<double>& x, const IndexRange& w) {
  Pieces p;
  p.prefix.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(std::min(w.begin, x.size())));
  p.in.assign(x.begin() + static_cast<std::ptrdiff_t>(w.begin),
              x.begin() + static_cast<std::ptrdiff_t>(std::min(w.end, x.size())));
  if (w.end < x.size()) p.suffix.assign(x.begin() + static_cast<std::ptrdiff_t>(w.end), x.end());
  p.outside = p.prefix;
  p.outside.insert(p.outside.end(), p.suffix.begin(), p.suffix.end());
  return p;
}

// Noise scale outside the window: pooled spread of per-piece detrended
// residuals, so a trending base does not inflate it.
inline double outside_noise_sd(const Pieces& p) {
  std::vector<double> resid;
  for (const auto* piece : {&p.prefix, &p.suffix}) {
    if (piece->size() >= 4) {
      auto r = stats::detrend(*piece);
      resid.insert(resid.end(), r.begin(), r.end());
    } else if (!piece->empty()) {
      const double m = stats::mean(*piece);
      for (double v : *piece) resid.push_back(v - m);
    }
  }
  const double sd = resid.size() >= 2 ? stats::stddev(resid) : 0.0;
  return sd > 0.0 ? sd : 1.0;
}

// Local z against up to four neighbors on each side, skipping window indices.
inline double neighborhood_z(const std::vector<double>& x, std::size_t i, const IndexRange& w) {
  std::vector<double> neigh;
  for (std::size_t t = i >= 12 ? i - 12 : 0; t < std::min(x.size(), i + 13) && neigh.size() < 16; ++t) {
    if (t == i || w.contains(t)) continue;
    neigh.push_back(x[t]);
  }
  if (neigh.size() < 4) return 0.0;
  const double m = stats::mean(neigh);
  const double sd = stats::stddev(neigh);
  if (sd <= 1e-12) return std::abs(x[i] - m) > 1e-12 ? 1e9 : 0.0;
  return std::abs(x[i] - m) / sd;
}

// Robust z inside the window (median / MAD); tolerant of a few outliers.
inline std::vector<std::size_t> robust_outlier_indices(const std::vector<double>& in, double z_gate) {
  std::vector<std::size_t> hits;
  if (in.size() < 6) return hits;
  const double med = stats::median(in);
  const double spread = stats::mad(in) / 0.6745;
  if (spread <= 1e-12) return hits;
  for (std::size_t t = 0; t < in.size(); ++t)
    if (std::abs(in[t] - med) / spread >= z_gate) hits.push_back(t);
  return hits;
}

}  // namespace oracle_detail

inline AnomalyCategory classify_univariate(const TimeSeriesSegment& seg, const IndexRange& w) {
  namespace th = oracle_thresholds;
  using namespace defaults;
  const auto& x = seg.channels[0].values;
  const std::size_t n = x.size();
  const auto p = oracle_detail::split(x, w);
  const std::size_t n_in = p.in.size();
  const bool to_end = w.end >= n;
  auto cat = [](int id) { return category_by_id(id, Arity::Univariate); };

  // 1. Flatline: the whole window is one exact constant.
  if (n_in >= th::kFlatlineMinLen && stats::longest_equal_run(p.in) == n_in) return cat(kSuddenFlatline);

  // 2. Repeated values: an exact run inside, none outside.
  if (stats::longest_equal_run(p.in) >= th::kRepeatedMinRun &&
      stats::longest_equal_run(p.outside) < th::kRepeatedMinRun)
    return cat(kRepeatedValue);

  // 3. Point: a one-step window that towers over its neighborhood.
  if (n_in <= th::kPointMaxLen) {
    double z = 0.0;
    for (std::size_t t = w.begin; t < w.end; ++t)
      z = std::max(z, oracle_detail::neighborhood_z(x, t, w));
    if (z >= th::kPointMinZ) return cat(kPoint);
    return normal_category(Arity::Univariate);
  }

  if (p.outside.size() < th::kMinOutside) return normal_category(Arity::Univariate);

  const double sd = oracle_detail::outside_noise_sd(p);
  const double mean_in = stats::mean(p.in);
  const double mean_out = stats::mean(p.outside);
  const double mean_shift = std::abs(mean_in - mean_out) / sd;

  // 4. Spike: a short burst far from the local level that returns to normal.
  if (n_in <= th::kSpikeMaxLen) {
    double dev = 0.0;
    for (double v : p.in) dev += std::abs(v - mean_out);
    dev /= static_cast<double>(n_in) * sd;
    if (dev >= th::kSpikeMinShift) return cat(kSuddenSpike);
  }

  const auto& longest_piece = p.prefix.size() >= p.suffix.size() ? p.prefix : p.suffix;
  const auto period = stats::dominant_period(longest_piece);
  const bool periodic_outside = period.strength >= th::kPeriodicGate;
  const double var_in = stats::variance(p.in);
  const double var_out = stats::variance(p.outside);
  const double var_ratio = var_out > 0.0 ? var_in / var_out : 0.0;

  // 5. Amplitude: the oscillation grows while the level holds.
  if (periodic_outside && var_ratio >= th::kAmplitudeVarRatio &&
      mean_shift <= th::kAmplitudeMaxMeanShift)
    return cat(kAmplitude);

  const auto fit_in = stats::linear_fit(p.in);
  const double in_rise = std::abs(fit_in.slope) * static_cast<double>(n_in) / sd;

  // 6. Interior level shift that reverts afterwards.
  if (!to_end && n_in >= th::kSegmentMinLen && mean_shift >= th::kSegmentMeanShift &&
      in_rise <= th::kSegmentMaxSlopeRise)
    return cat(kContinuousSegment);

  const auto fit_pre = stats::linear_fit(p.prefix);
  const double outside_rise = std::abs(fit_pre.slope) * static_cast<double>(n) / sd;
  const double curvature = stats::curvature_f_stat(p.in);

  // 7. Drift: a flat base starts sliding and never comes back.
  if (to_end && outside_rise <= th::kDriftMaxOutsideRise && in_rise >= th::kDriftMinInsideRise)
    return cat(kDrift);

  // 8. Trend change: an established slope bends to a new straight line.
  if (to_end && outside_rise >= th::kTrendMinOutsideRise &&
      std::abs(fit_in.slope - fit_pre.slope) * static_cast<double>(n_in) / sd >= th::kTrendMinSlopeChange &&
      curvature < th::kMaxCurvatureF)
    return cat(kTrendChange);

  // 9. Change point: an abrupt persistent level step with no slope.
  if (to_end && mean_shift >= th::kCpMeanShift && in_rise <= th::kCpMaxSlopeRise)
    return cat(kChangePoint);

  const double mad_in = stats::mad(p.in);
  const double mad_out = stats::mad(p.outside);
  const double mad_ratio_sq =
      mad_out > 1e-12 ? (mad_in / mad_out) * (mad_in / mad_out) : (mad_in > 1e-12 ? 1e9 : 1.0);

  // 10. Distributional change: the noise law rescales without a level move.
  if (!periodic_outside && mean_shift <= th::kDistributionalMaxMeanShift &&
      (mad_ratio_sq >= th::kDistributionalMadRatioSq ||
       mad_ratio_sq <= 1.0 / th::kDistributionalMadRatioSq))
    return cat(kDistributionalChange);

  // 11. Periodic change: the cycle collapses inside the window.
  if (periodic_outside && var_ratio <= th::kPeriodicVarCollapse) return cat(kPeriodicChange);

  // 12. Pattern change: the waveform is replaced by a different shape of
  // comparable energy.
  if (periodic_outside && n_in >= period.lag + 4) {
    const double inner_periodicity = stats::autocorr(stats::detrend(p.in), period.lag);
    if (inner_periodicity <= th::kPatternMaxInnerPeriodicity && fit_in.r2 >= th::kPatternMinLinearR2 &&
        var_ratio >= th::kPatternVarLo && var_ratio <= th::kPatternVarHi)
      return cat(kPatternChange);
  }

  // 13. Sparse: a few isolated outliers spread across the window.
  {
    const auto hits = oracle_detail::robust_outlier_indices(p.in, th::kSparseEventZ);
    if (hits.size() >= th::kSparseMinEvents && hits.size() <= th::kSparseMaxEvents) {
      bool isolated = true;
      for (std::size_t i = 1; i < hits.size(); ++i)
        if (hits[i] - hits[i - 1] < th::kSparseMinGap) isolated = false;
      const double span =
          static_cast<double>(hits.back() - hits.front()) / static_cast<double>(std::max<std::size_t>(1, n_in - 1));
      if (isolated && span >= th::kSparseMinSpan) return cat(kSparse);
    }
  }

  // 14. Nonlinear: the window is genuinely curved.
  if (curvature >= th::kMaxCurvatureF && n_in >= 8) return cat(kNonlinearPattern);

  return normal_category(Arity::Univariate);
}

inline AnomalyCategory classify_multivariate(const TimeSeriesSegment& seg, const IndexRange& w) {
  namespace th = oracle_thresholds;
  using namespace defaults;
  const std::size_t d = seg.channels.size();
  const std::size_t n = seg.length();
  auto cat = [](int id) { return category_by_id(id, Arity::Multivariate); };

  std::vector<oracle_detail::Pieces> pieces;
  pieces.reserve(d);
  for (const auto& ch : seg.channels) pieces.push_back(oracle_detail::split(ch.values, w));
  const std::size_t n_in = pieces[0].in.size();
  const std::size_t n_out = pieces[0].outside.size();
  if (n_in < 6 || n_out < th::kMinOutside) return normal_category(Arity::Multivariate);

  // Detrended views make every structural test invariant to shared trends.
  std::vector<std::vector<double>> in_d(d), out_d(d);
  for (std::size_t c = 0; c < d; ++c) {
    in_d[c] = stats::detrend(pieces[c].in);
    out_d[c] = stats::detrend(pieces[c].outside);
  }

  // 1. Covariance structure: a strongly coupled pair flips sign.
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a + 1; b < d; ++b) {
      const double r_out = stats::pearson(out_d[a], out_d[b]);
      const double r_in = stats::pearson(in_d[a], in_d[b]);
      if (r_out >= th::kCorrStrong && r_in <= th::kCorrReversal) return cat(kCovarianceStructure);
    }
  }

  // 2. Temporal dependency: the cross-correlation peak moves to a new lag.
  {
    const int max_lag = std::min(th::kXcorrMaxLag, static_cast<int>(n_in) / 3);
    if (max_lag >= 2) {
      for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
          if (a == b) continue;
          const auto peak_out = stats::cross_corr_peak(out_d[a], out_d[b], max_lag);
          if (peak_out.value < th::kXcorrPeak) continue;
          const auto peak_in = stats::cross_corr_peak(in_d[a], in_d[b], max_lag);
          if (peak_in.value >= th::kXcorrPeak &&
              std::abs(peak_in.lag - peak_out.lag) >= th::kXcorrMinLagChange)
            return cat(kTemporalDependency);
        }
      }
    }
  }

  // 3. Trend divergence: exactly one channel leaves the shared slope.
  {
    std::vector<double> pre_slopes, pre_sds;
    bool lead_in_ok = pieces[0].prefix.size() >= 8;
    for (std::size_t c = 0; c < d && lead_in_ok; ++c) {
      pre_slopes.push_back(stats::linear_fit(pieces[c].prefix).slope);
      const auto resid = stats::detrend(pieces[c].prefix);
      pre_sds.push_back(std::max(1e-9, stats::stddev(resid)));
    }
    if (lead_in_ok) {
      const double shared = stats::median(pre_slopes);
      const bool shared_trending =
          std::abs(shared) * static_cast<double>(n) / stats::median(pre_sds) >= th::kTrendMinOutsideRise;
      if (shared_trending) {
        std::size_t divergers = 0;
        for (std::size_t c = 0; c < d; ++c) {
          const double s_in = stats::linear_fit(pieces[c].in).slope;
          const bool opposite = s_in * shared < 0.0;
          const bool big = std::abs(s_in - shared) * static_cast<double>(n_in) / pre_sds[c] >=
                           th::kTrendMinSlopeChange;
          if (opposite && big) ++divergers;
        }
        if (divergers == 1) return cat(kTrendDivergence);
      }
    }
  }

  // 4. Collinearity shift: every strong dependency breaks at once.
  {
    double strongest_out = 0.0, strongest_in = 0.0;
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = a + 1; b < d; ++b) {
        strongest_out = std::max(strongest_out, std::abs(stats::pearson(out_d[a], out_d[b])));
        strongest_in = std::max(strongest_in, std::abs(stats::pearson(in_d[a], in_d[b])));
      }
    }
    if (strongest_out >= th::kCollinearOutside && strongest_in <= th::kCollinearBroken)
      return cat(kCollinearityShift);
  }

  // Residual geometry relative to the leading component of the outside data.
  const auto cov_out = stats::covariance_matrix(out_d);
  const auto v1 = stats::leading_eigenvector(cov_out, d);
  std::vector<double> mean_out(d), mean_in_raw(d), out_sd(d);
  for (std::size_t c = 0; c < d; ++c) {
    mean_out[c] = stats::mean(pieces[c].outside);
    mean_in_raw[c] = stats::mean(pieces[c].in);
    out_sd[c] = std::max(1e-9, stats::stddev(pieces[c].outside));
  }
  auto residual = [&](const std::vector<std::vector<double>>& cols, std::size_t t) {
    std::vector<double> r(d);
    double proj = 0.0;
    for (std::size_t c = 0; c < d; ++c) proj += v1[c] * cols[c][t];
    for (std::size_t c = 0; c < d; ++c) r[c] = cols[c][t] - proj * v1[c];
    return r;
  };
  auto residual_stats = [&](const std::vector<std::vector<double>>& cols, std::size_t count,
                            std::vector<double>& mean_r) {
    mean_r.assign(d, 0.0);
    std::vector<std::vector<double>> rs(count);
    for (std::size_t t = 0; t < count; ++t) {
      rs[t] = residual(cols, t);
      for (std::size_t c = 0; c < d; ++c) mean_r[c] += rs[t][c];
    }
    for (double& m : mean_r) m /= static_cast<double>(count);
    double var = 0.0;
    for (std::size_t t = 0; t < count; ++t) {
      double e = 0.0;
      for (std::size_t c = 0; c < d; ++c) {
        const double dv = rs[t][c] - mean_r[c];
        e += dv * dv;
      }
      var += e;
    }
    return var / static_cast<double>(std::max<std::size_t>(1, count - 1));
  };
  std::vector<double> resid_mean_out, resid_mean_in;
  const double resid_var_out = residual_stats(out_d, n_out, resid_mean_out);
  const double resid_var_in = residual_stats(in_d, n_in, resid_mean_in);
  const double resid_sd_out = std::sqrt(std::max(1e-18, resid_var_out));
  double offset = 0.0;
  for (std::size_t c = 0; c < d; ++c) {
    const double dv = resid_mean_in[c] - resid_mean_out[c];
    offset += dv * dv;
  }
  offset = std::sqrt(offset) / resid_sd_out;

  // 5. Principal-component residual: energy off the leading axis blows up
  // without moving its center. Needs enough channels for a meaningful axis.
  if (d >= 3 && resid_var_out > 0.0 && resid_var_in / resid_var_out >= th::kPcaResidualVarRatio &&
      offset <= th::kPcaMaxMeanOffset)
    return cat(kPcaSpace);

  // 6. Joint space: marginally plausible values parked in an improbable
  // joint configuration.
  {
    double max_marginal_shift = 0.0;
    for (std::size_t c = 0; c < d; ++c)
      max_marginal_shift =
          std::max(max_marginal_shift, std::abs(mean_in_raw[c] - mean_out[c]) / out_sd[c]);
    double min_corr = 1.0;
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = a + 1; b < d; ++b)
        min_corr = std::min(min_corr, stats::pearson(in_d[a], in_d[b]));
    // Mean Mahalanobis distance of in-window points under the outside model.
    double mean_m2 = 0.0;
    bool solvable = true;
    try {
      for (std::size_t t = 0; t < n_in; ++t) {
        std::vector<double> dev(d);
        for (std::size_t c = 0; c < d; ++c) dev[c] = in_d[c][t];
        const auto sol = stats::solve_spd(cov_out, dev, d, 1e-9);
        double m2 = 0.0;
        for (std::size_t c = 0; c < d; ++c) m2 += dev[c] * sol[c];
        mean_m2 += m2;
      }
      mean_m2 /= static_cast<double>(n_in);
    } catch (const std::exception&) {
      solvable = false;
    }
    if (solvable && mean_m2 / static_cast<double>(d) >= th::kJointMinMahalanobis &&
        max_marginal_shift <= th::kJointMaxMarginalShift && min_corr >= th::kJointMinCorr)
      return cat(kJointSpace);
  }

  return normal_category(Arity::Multivariate);
}

inline AnomalyCategory oracle_classify(const TimeSeriesSegment& seg, const IndexRange& window,
                                       Arity arity) {
  check_segment(seg);
  if (window.begin >= window.end || window.end > seg.length())
    throw std::invalid_argument("oracle window does not fit the segment");
  if (arity == Arity::Univariate) {
    if (!seg.univariate()) throw std::invalid_argument("univariate oracle needs a single channel");
    return classify_univariate(seg, window);
  }
  if (seg.channels.size() < 2) throw std::invalid_argument("multivariate oracle needs >= 2 channels");
  return classify_multivariate(seg, window);
}

// Primary test statistic for the categories whose severity response is
// checked: point (neighborhood z), amplitude (variance ratio) and sudden
// spike (mean deviation in sd units). Other categories report 0.
inline double oracle_statistic(const TimeSeriesSegment& seg, const IndexRange& w,
                               const AnomalyCategory& category) {
  if (category.arity != Arity::Univariate || !seg.univariate()) return 0.0;
  const auto& x = seg.channels[0].values;
  const auto p = oracle_detail::split(x, w);
  switch (category.id) {
    case defaults::kPoint: {
      double z = 0.0;
      for (std::size_t t = w.begin; t < w.end; ++t)
        z = std::max(z, oracle_detail::neighborhood_z(x, t, w));
      return z;
    }
    case defaults::kAmplitude: {
      const double vo = stats::variance(p.outside);
      return vo > 0.0 ? stats::variance(p.in) / vo : 0.0;
    }
    case defaults::kSuddenSpike: {
      const double sd = oracle_detail::outside_noise_sd(p);
      const double mean_out = stats::mean(p.outside);
      double dev = 0.0;
      for (double v : p.in) dev += std::abs(v - mean_out);
      return dev / (static_cast<double>(p.in.size()) * sd);
    }
    default:
      return 0.0;
  }
}

}  // namespace tsrkit::synth
