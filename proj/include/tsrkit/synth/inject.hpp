#pragma once
// Anomaly injection. Every injector copies the base segment, rewrites values
// only inside the anomaly window, and stamps the window on the result; indices
// outside the window stay bitwise equal to the base. All randomness derives
// from (base.seed, category), and severity only scales magnitudes, so the
// oracle statistic grows monotonically with it.

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsrkit/core/segment.hpp"
#include "tsrkit/core/taxonomy.hpp"
#include "tsrkit/synth/base.hpp"
#include "tsrkit/synth/defaults.hpp"
#include "tsrkit/synth/stats.hpp"

namespace tsrkit::synth {

struct InjectionSpec {
  AnomalyCategory category;
  double severity = 1.0;
  std::optional<IndexRange> window;        // derived per category when absent
  std::map<std::string, double> params;    // category-specific knobs

  double param(const std::string& key, double fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  }
};

class CategoryIsNormal : public std::invalid_argument {
 public:
  CategoryIsNormal() : std::invalid_argument("cannot inject the normal category; generate a base instead") {}
};

namespace detail {

inline std::mt19937_64 injection_rng(const TimeSeriesSegment& base, const AnomalyCategory& cat) {
  const std::uint64_t salt =
      0x1000 + static_cast<std::uint64_t>(cat.id) * 2 + (cat.arity == Arity::Multivariate ? 1 : 0);
  return std::mt19937_64(synth::detail::mix_seed(base.seed, salt));
}

inline double pick_sign(std::mt19937_64& rng) {
  return (rng() & 1) ? 1.0 : -1.0;
}

inline std::size_t jittered(std::size_t target, std::size_t spread, std::size_t lo, std::size_t hi,
                            std::mt19937_64& rng) {
  if (lo > hi) return lo;
  if (spread == 0 || lo == hi) return std::clamp(target, lo, hi);
  std::uniform_int_distribution<long> d(-static_cast<long>(spread), static_cast<long>(spread));
  const long v = static_cast<long>(target) + d(rng);
  return std::clamp<std::size_t>(static_cast<std::size_t>(std::max(0L, v)), lo, hi);
}

// Interior window of roughly `fraction` of the series, centered with jitter.
// Keeps at least two points on each side.
inline IndexRange interior_window(std::size_t n, double fraction, std::mt19937_64& rng,
                                  std::size_t min_len = 4) {
  std::size_t len = std::max<std::size_t>(min_len, static_cast<std::size_t>(fraction * static_cast<double>(n)));
  if (len + 4 > n) {
    if (min_len + 4 > n) throw std::invalid_argument("segment too short for this category");
    len = n - 4;
  }
  const std::size_t lo = 2;
  const std::size_t hi = n - len - 2;
  const std::size_t center_begin = n / 2 >= len / 2 ? n / 2 - len / 2 : lo;
  const std::size_t begin = jittered(center_begin, n / 20, lo, hi, rng);
  return {begin, begin + len};
}

// Window that extends to the end of the series.
inline IndexRange tail_window(std::size_t n, std::mt19937_64& rng) {
  const std::size_t begin =
      jittered(static_cast<std::size_t>(defaults::kTailWindowStartFraction * static_cast<double>(n)),
               n / 20, 8, n - 6, rng);
  return {begin, n};
}

inline void check_window(const IndexRange& w, std::size_t n) {
  if (w.begin >= w.end || w.end > n) throw std::invalid_argument("injection window does not fit the segment");
}

struct OutsideStats {
  double mean = 0.0;
  double sd = 1.0;        // raw spread outside the window
  double resid_sd = 1.0;  // spread after removing per-piece linear trends
};

inline OutsideStats outside_stats(const std::vector<double>& x, const IndexRange& w) {
  std::vector<double> raw;
  std::vector<double> resid;
  auto take = [&](std::size_t lo, std::size_t hi) {
    if (hi <= lo) return;
    std::vector<double> piece(x.begin() + static_cast<std::ptrdiff_t>(lo),
                              x.begin() + static_cast<std::ptrdiff_t>(hi));
    raw.insert(raw.end(), piece.begin(), piece.end());
    auto r = piece.size() >= 4 ? stats::detrend(piece) : piece;
    resid.insert(resid.end(), r.begin(), r.end());
  };
  take(0, w.begin);
  take(w.end, x.size());
  OutsideStats s;
  if (!raw.empty()) s.mean = stats::mean(raw);
  s.sd = raw.size() >= 2 ? stats::stddev(raw) : 1.0;
  s.resid_sd = resid.size() >= 2 ? stats::stddev(resid) : s.sd;
  if (s.sd <= 0.0) s.sd = 1.0;
  if (s.resid_sd <= 0.0) s.resid_sd = s.sd;
  return s;
}

// Noise scale of a periodic base, estimated from seasonal differences outside
// the window.
inline double seasonal_noise_sd(const std::vector<double>& x, const IndexRange& w, std::size_t period) {
  std::vector<double> diffs;
  for (std::size_t t = period; t < x.size(); ++t) {
    if (w.contains(t) || w.contains(t - period)) continue;
    diffs.push_back(x[t] - x[t - period]);
  }
  if (diffs.size() < 4) return outside_stats(x, w).resid_sd;
  return stats::stddev(diffs) / std::sqrt(2.0);
}

}  // namespace detail

inline TimeSeriesSegment inject_univariate(const TimeSeriesSegment& base, const InjectionSpec& spec) {
  check_segment(base);
  if (!base.univariate()) throw std::invalid_argument("univariate injection requires a single channel");
  if (spec.category.arity != Arity::Univariate)
    throw std::invalid_argument("category \"" + spec.category.name + "\" is not univariate");
  if (spec.category.is_normal()) throw CategoryIsNormal();
  if (!(spec.severity > 0.0 && spec.severity <= 1.0))
    throw std::invalid_argument("severity must be in (0, 1]");

  const std::size_t n = base.length();
  auto rng = detail::injection_rng(base, spec.category);
  std::normal_distribution<double> unit(0.0, 1.0);
  const double sev = spec.severity;

  TimeSeriesSegment out = base;
  std::vector<double>& x = out.channels[0].values;
  IndexRange w;

  using namespace defaults;
  switch (spec.category.id) {
    case kPoint: {
      w = spec.window ? *spec.window
                      : IndexRange{detail::jittered(n / 2, n / 6, 5, n - 6, rng), 0};
      if (!spec.window) w.end = w.begin + 1;
      detail::check_window(w, n);
      w.end = w.begin + 1;
      const std::size_t i = w.begin;
      std::vector<double> neigh;
      for (std::size_t t = i >= 4 ? i - 4 : 0; t < std::min(n, i + 5); ++t)
        if (t != i) neigh.push_back(x[t]);
      const double local_mean = stats::mean(neigh);
      double local_sd = stats::stddev(neigh);
      if (local_sd <= 1e-12) local_sd = detail::outside_stats(x, w).resid_sd;
      const double mag = spec.param("point_magnitude", kPointMagnitudeSd);
      x[i] = local_mean + detail::pick_sign(rng) * mag * sev * local_sd;
      break;
    }
    case kSuddenSpike: {
      const auto run = static_cast<std::size_t>(spec.param("spike_run", static_cast<double>(kSpikeRun)));
      w = spec.window ? *spec.window
                      : IndexRange{detail::jittered(n / 2, n / 6, 5, n - run - 5, rng), 0};
      if (!spec.window) w.end = w.begin + run;
      detail::check_window(w, n);
      const auto os = detail::outside_stats(x, w);
      const double mag = spec.param("spike_magnitude", kSpikeMagnitudeSd) * sev * os.resid_sd;
      const double sign = detail::pick_sign(rng);
      for (std::size_t t = w.begin; t < w.end; ++t) x[t] += sign * mag;
      break;
    }
    case kContinuousSegment: {
      w = spec.window ? *spec.window : detail::interior_window(n, 0.25, rng, 6);
      detail::check_window(w, n);
      const auto os = detail::outside_stats(x, w);
      const double shift = spec.param("segment_shift", kSegmentShiftSd) * sev * os.resid_sd;
      const double sign = detail::pick_sign(rng);
      for (std::size_t t = w.begin; t < w.end; ++t) x[t] += sign * shift;
      break;
    }
    case kChangePoint: {
      w = spec.window ? *spec.window : detail::tail_window(n, rng);
      detail::check_window(w, n);
      const auto os = detail::outside_stats(x, w);
      const double shift = spec.param("step_shift", kChangePointShiftSd) * sev * os.resid_sd;
      const double sign = detail::pick_sign(rng);
      for (std::size_t t = w.begin; t < w.end; ++t) x[t] += sign * shift;
      break;
    }
    case kDrift: {
      w = spec.window ? *spec.window : detail::tail_window(n, rng);
      detail::check_window(w, n);
      const auto os = detail::outside_stats(x, w);
      const double total = spec.param("drift_displacement", kDriftDisplacementSd) * sev * os.resid_sd;
      const double sign = detail::pick_sign(rng);
      const double len = static_cast<double>(w.size());
      for (std::size_t t = w.begin; t < w.end; ++t)
        x[t] += sign * total * static_cast<double>(t - w.begin + 1) / len;
      break;
    }
    case kTrendChange: {
      w = spec.window ? *spec.window : detail::tail_window(n, rng);
      detail::check_window(w, n);
      if (w.begin < 8) throw std::invalid_argument("trend change needs at least 8 steps of lead-in");
      const std::vector<double> prefix(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(w.begin));
      const double s = stats::linear_fit(prefix).slope;
      // New slope is -(1 + severity) times the established one.
      const double delta_slope = -(2.0 + sev) * s;
      for (std::size_t t = w.begin; t < w.end; ++t)
        x[t] += delta_slope * static_cast<double>(t - w.begin + 1);
      break;
    }
    case kNonlinearPattern: {
      w = spec.window ? *spec.window : detail::tail_window(n, rng);
      detail::check_window(w, n);
      const auto os = detail::outside_stats(x, w);
      const double total = spec.param("bend_displacement", kNonlinearDisplacementSd) * sev * os.resid_sd;
      const double k = spec.param("bend_sharpness", kNonlinearSharpness);
      const double sign = detail::pick_sign(rng);
      const double len = static_cast<double>(w.size());
      for (std::size_t t = w.begin; t < w.end; ++t) {
        const double u = static_cast<double>(t - w.begin + 1) / len;
        x[t] += sign * total * (std::exp(k * u) - 1.0) / (std::exp(k) - 1.0);
      }
      break;
    }
    case kDistributionalChange: {
      w = spec.window ? *spec.window : detail::interior_window(n, 0.40, rng, 8);
      detail::check_window(w, n);
      const auto os = detail::outside_stats(x, w);
      const double scale = 1.0 + spec.param("noise_scale_extra", kDistributionalScaleExtra) * sev;
      for (std::size_t t = w.begin; t < w.end; ++t)
        x[t] = os.mean + scale * os.resid_sd * unit(rng);
      break;
    }
    case kAmplitude: {
      w = spec.window ? *spec.window : detail::interior_window(n, 0.30, rng, 8);
      detail::check_window(w, n);
      const auto os = detail::outside_stats(x, w);
      const double gain = 1.0 + spec.param("amplitude_gain_extra", kAmplitudeGainExtra) * sev;
      for (std::size_t t = w.begin; t < w.end; ++t) x[t] = os.mean + gain * (x[t] - os.mean);
      break;
    }
    case kPeriodicChange: {
      const auto period = stats::dominant_period(base.channels[0].values);
      const std::size_t plen = std::max<std::size_t>(4, period.lag);
      w = spec.window ? *spec.window : detail::interior_window(n, static_cast<double>(plen) / static_cast<double>(n), rng, plen);
      detail::check_window(w, n);
      const auto os = detail::outside_stats(x, w);
      const double noise_sd = detail::seasonal_noise_sd(base.channels[0].values, w, plen);
      // Flatten the cycle: interpolate towards level noise as severity rises.
      for (std::size_t t = w.begin; t < w.end; ++t)
        x[t] = os.mean + (1.0 - sev) * (x[t] - os.mean) + sev * noise_sd * unit(rng);
      break;
    }
    case kPatternChange: {
      w = spec.window ? *spec.window : detail::interior_window(n, 0.35, rng, 8);
      detail::check_window(w, n);
      const auto os = detail::outside_stats(x, w);
      const double noise_sd = detail::seasonal_noise_sd(base.channels[0].values, w,
                                                        std::max<std::size_t>(4, stats::dominant_period(base.channels[0].values).lag));
      const double wave_var = std::max(0.0, os.sd * os.sd - noise_sd * noise_sd);
      const double amp_est = std::sqrt(2.0 * wave_var);
      const double span = spec.param("pattern_span", kPatternRampSpan) * sev * std::max(amp_est, noise_sd);
      const double sign = detail::pick_sign(rng);
      const double len = static_cast<double>(w.size() - 1);
      for (std::size_t t = w.begin; t < w.end; ++t) {
        const double u = len > 0 ? static_cast<double>(t - w.begin) / len : 0.5;
        x[t] = os.mean + sign * span * (2.0 * u - 1.0) + noise_sd * unit(rng);
      }
      break;
    }
    case kSparse: {
      const auto hull = spec.window ? *spec.window : detail::interior_window(n, 0.50, rng, 10);
      detail::check_window(hull, n);
      auto events = static_cast<std::size_t>(spec.param("sparse_events", static_cast<double>(kSparseEvents)));
      events = std::clamp<std::size_t>(events, 2, 4);
      if (hull.size() < events * 5) events = 2;
      const auto os = detail::outside_stats(x, hull);
      const double mag = spec.param("sparse_magnitude", kSparseMagnitudeSd) * sev * os.resid_sd;
      double sign = detail::pick_sign(rng);
      std::vector<std::size_t> positions;
      for (std::size_t e = 0; e < events; ++e) {
        const double f = events == 1 ? 0.5 : static_cast<double>(e) / static_cast<double>(events - 1);
        positions.push_back(hull.begin + static_cast<std::size_t>(f * static_cast<double>(hull.size() - 1)));
      }
      for (std::size_t pos : positions) {
        x[pos] += sign * mag;
        sign = -sign;  // alternate so the window mean stays put
      }
      w = {positions.front(), positions.back() + 1};
      break;
    }
    case kRepeatedValue: {
      const auto run = std::max<std::size_t>(
          3, static_cast<std::size_t>(spec.param("run_length", static_cast<double>(kRepeatedRunLength))));
      const std::size_t gap = 3;
      const std::size_t span = 2 * run + gap;
      const auto container = spec.window ? *spec.window
                                         : detail::interior_window(n, static_cast<double>(span) / static_cast<double>(n),
                                                                   rng, span);
      detail::check_window(container, n);
      if (container.size() < span) throw std::invalid_argument("window too small for two repeated runs");
      const std::size_t first = container.begin;
      const std::size_t second = container.begin + run + gap;
      for (std::size_t t = first; t < first + run; ++t) x[t] = x[first];
      for (std::size_t t = second; t < second + run; ++t) x[t] = x[second];
      w = {first, second + run};
      break;
    }
    case kSuddenFlatline: {
      w = spec.window ? *spec.window : detail::interior_window(n, 0.25, rng, 4);
      detail::check_window(w, n);
      const double level = spec.params.count("flatline_value") ? spec.params.at("flatline_value") : x[w.begin];
      for (std::size_t t = w.begin; t < w.end; ++t) x[t] = level;
      break;
    }
    default:
      throw std::invalid_argument("unhandled univariate category id " + std::to_string(spec.category.id));
  }

  out.anomaly_window = w;
  return out;
}

inline TimeSeriesSegment inject_multivariate(const TimeSeriesSegment& base, const InjectionSpec& spec) {
  check_segment(base);
  if (base.channels.size() < 2)
    throw std::invalid_argument("multivariate injection requires at least 2 channels");
  if (spec.category.arity != Arity::Multivariate)
    throw std::invalid_argument("category \"" + spec.category.name + "\" is not multivariate");
  if (spec.category.is_normal()) throw CategoryIsNormal();
  if (!(spec.severity > 0.0 && spec.severity <= 1.0))
    throw std::invalid_argument("severity must be in (0, 1]");
  if (base.channels.size() < defaults::min_channels(spec.category))
    throw std::invalid_argument("category \"" + spec.category.name + "\" needs at least " +
                                std::to_string(defaults::min_channels(spec.category)) + " channels");

  const std::size_t n = base.length();
  const std::size_t d = base.channels.size();
  auto rng = detail::injection_rng(base, spec.category);
  std::normal_distribution<double> unit(0.0, 1.0);
  const double sev = spec.severity;

  TimeSeriesSegment out = base;
  IndexRange w;

  using namespace defaults;
  switch (spec.category.id) {
    case kCovarianceStructure: {
      w = spec.window ? *spec.window : detail::interior_window(n, 0.35, rng, 10);
      detail::check_window(w, n);
      // Reflect the deviations of the second half of the channels around
      // their own in-window base level; marginal spread is preserved while
      // the correlation with the untouched channels reverses.
      for (std::size_t c = d / 2 + (d % 2); c < d; ++c) {
        auto& x = out.channels[c].values;
        std::vector<double> win(x.begin() + static_cast<std::ptrdiff_t>(w.begin),
                                x.begin() + static_cast<std::ptrdiff_t>(w.end));
        const double mu = stats::mean(win);
        const double factor = 1.0 - 2.0 * sev;  // severity 1 is a full reflection
        for (std::size_t t = w.begin; t < w.end; ++t) x[t] = mu + factor * (x[t] - mu);
      }
      break;
    }
    case kTemporalDependency: {
      const int lag = static_cast<int>(spec.param("lag_shift", kTemporalLagShift));
      w = spec.window ? *spec.window : detail::interior_window(n, 0.40, rng, 12);
      if (w.begin < static_cast<std::size_t>(lag)) w.begin = static_cast<std::size_t>(lag);
      detail::check_window(w, n);
      const auto& driver = base.channels[0].values;
      for (std::size_t c = 1; c < d; ++c) {
        auto& x = out.channels[c].values;
        for (std::size_t t = w.begin; t < w.end; ++t)
          x[t] = driver[t - static_cast<std::size_t>(lag)] + 0.15 * unit(rng);
      }
      break;
    }
    case kTrendDivergence: {
      w = spec.window ? *spec.window : detail::interior_window(n, 0.40, rng, 12);
      if (!spec.window && w.begin < 8) {
        // Slope comparison needs a usable lead-in; slide the window right.
        const std::size_t len = std::min(w.size(), n - 10);
        w = {8, 8 + len};
      }
      detail::check_window(w, n);
      if (w.begin < 8) throw std::invalid_argument("trend divergence needs at least 8 steps of lead-in");
      std::vector<double> slopes;
      for (const auto& ch : base.channels) {
        const std::vector<double> prefix(ch.values.begin(),
                                         ch.values.begin() + static_cast<std::ptrdiff_t>(w.begin));
        slopes.push_back(stats::linear_fit(prefix).slope);
      }
      const double shared = stats::median(slopes);
      const auto victim = static_cast<std::size_t>(
          spec.param("trend_channel", static_cast<double>(rng() % d)));
      auto& x = out.channels[victim % d].values;
      const double delta_slope = -(2.0 + sev) * shared;
      for (std::size_t t = w.begin; t < w.end; ++t)
        x[t] += delta_slope * static_cast<double>(t - w.begin + 1);
      break;
    }
    case kJointSpace:
    case kPcaSpace: {
      w = spec.window ? *spec.window : detail::interior_window(n, 0.35, rng, 10);
      detail::check_window(w, n);
      // Outside covariance over detrended channels; perturb orthogonally to
      // the leading eigenvector so single-channel views stay unremarkable.
      std::vector<std::vector<double>> outside(d);
      for (std::size_t c = 0; c < d; ++c) {
        std::vector<double> vals;
        for (std::size_t t = 0; t < n; ++t)
          if (!w.contains(t)) vals.push_back(base.channels[c].values[t]);
        outside[c] = stats::detrend(vals);
      }
      const auto cov = stats::covariance_matrix(outside);
      const auto v1 = stats::leading_eigenvector(cov, d);
      // Orthogonal direction: the axis least aligned with v1, projected out.
      std::size_t axis = 0;
      for (std::size_t c = 1; c < d; ++c)
        if (std::abs(v1[c]) < std::abs(v1[axis])) axis = c;
      std::vector<double> u(d, 0.0);
      u[axis] = 1.0;
      double dot = v1[axis];
      double norm = 0.0;
      for (std::size_t c = 0; c < d; ++c) {
        u[c] -= dot * v1[c];
        norm += u[c] * u[c];
      }
      norm = std::sqrt(norm);
      for (double& uc : u) uc /= norm;
      // Residual spread along u, measured outside the window.
      double resid_var = 0.0;
      const std::size_t m = outside[0].size();
      for (std::size_t t = 0; t < m; ++t) {
        double proj = 0.0;
        for (std::size_t c = 0; c < d; ++c) proj += u[c] * outside[c][t];
        resid_var += proj * proj;
      }
      const double resid_sd = std::sqrt(resid_var / static_cast<double>(std::max<std::size_t>(1, m - 1)));
      if (spec.category.id == kJointSpace) {
        const double offset = spec.param("offset_sd", kJointOffsetSd) * sev * resid_sd;
        for (std::size_t c = 0; c < d; ++c)
          for (std::size_t t = w.begin; t < w.end; ++t) out.channels[c].values[t] += u[c] * offset;
      } else {
        const double gain = spec.param("residual_gain", kPcaResidualGain) * sev * resid_sd;
        for (std::size_t t = w.begin; t < w.end; ++t) {
          const double g = gain * unit(rng);
          for (std::size_t c = 0; c < d; ++c) out.channels[c].values[t] += u[c] * g;
        }
      }
      break;
    }
    case kCollinearityShift: {
      w = spec.window ? *spec.window : detail::interior_window(n, 0.40, rng, 12);
      detail::check_window(w, n);
      // Decouple every follower channel: fresh independent noise matched to
      // its own marginal level and spread.
      for (std::size_t c = 1; c < d; ++c) {
        auto& x = out.channels[c].values;
        const auto os = detail::outside_stats(base.channels[c].values, w);
        for (std::size_t t = w.begin; t < w.end; ++t) {
          const double fresh = os.mean + os.sd * unit(rng);
          x[t] = sev * fresh + (1.0 - sev) * x[t];
        }
      }
      break;
    }
    default:
      throw std::invalid_argument("unhandled multivariate category id " + std::to_string(spec.category.id));
  }

  out.anomaly_window = w;
  return out;
}

inline TimeSeriesSegment inject(const TimeSeriesSegment& base, const InjectionSpec& spec) {
  return spec.category.arity == Arity::Univariate ? inject_univariate(base, spec)
                                                  : inject_multivariate(base, spec);
}

}  // namespace tsrkit::synth
