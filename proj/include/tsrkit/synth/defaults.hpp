#pragma once
// Default parameterization per anomaly category. The taxonomy definitions are
// qualitative; these constants pin one concrete, reproducible signature per
// category, sized so the oracle detectors separate all categories at length
// 64. Magnitudes are in units of the base noise scale unless noted.
//
//   category                      base signal            window        signature
//   ------------------------------------------------------------------------------
//   Point                         ar1(0.3)               1 step        +8 local sd at one index
//   Periodic Change               sine(n/4, noise .25)   one period    cycle skipped (flat + noise)
//   Trend Change                  trend(6sd over n)      to end        slope re-sloped to -(1+sev)x
//   Change Point                  ar1(0.3)               to end        level step of 4 sd
//   Distributional Change         ar1(0.3)               40% interior  noise rescaled 4x, iid
//   Amplitude                     sine(n/4, noise .2)    30% interior  oscillation gain 1+3*sev
//   Pattern Change                sine(n/4, noise .25)   35% interior  waveform swapped for a ramp
//   Sparse                        ar1(0.3)               event hull    2-3 isolated +-6 sd points
//   Repeated Value                ar1(0.3)               run hull      two runs of 4 equal values
//   Sudden Flatline               ar1(0.3)               25% interior  exact constant
//   Drift                         ar1(0.3)               to end        ramp to 5 sd displacement
//   Sudden Spike                  ar1(0.3)               3 steps       plateau at 6 sd, then back
//   Continuous Segment            ar1(0.3)               25% interior  mean shift of 4 sd
//   Nonlinear Pattern             trend(5sd over n)      to end        exponential bend to 14 sd
//   ------------------------------------------------------------------------------
//   Covariance Structure          ar1 factor + noise     35% interior  half the channels reflected
//   Temporal Dependency           ar1 factor + noise     40% interior  follower lag moved by 5
//   Trend Divergence              shared trend + noise   40% interior  one channel slope flipped
//   Joint Space                   ar1 factor + noise     35% interior  offset along the minor axis
//   Principal Component Space     ar1 factor + noise     35% interior  noise orthogonal to PC1
//   Collinearity Shift            ar1 factor, tiny noise 40% interior  channels decoupled
//
// Knob names accepted in InjectionSpec::params are listed next to each
// constant below.

#include <cstddef>

#include "tsrkit/core/taxonomy.hpp"
#include "tsrkit/synth/base.hpp"

namespace tsrkit::synth::defaults {

// Univariate ids in catalog order.
inline constexpr int kPoint = 1;
inline constexpr int kPeriodicChange = 2;
inline constexpr int kTrendChange = 3;
inline constexpr int kChangePoint = 4;
inline constexpr int kDistributionalChange = 5;
inline constexpr int kAmplitude = 6;
inline constexpr int kPatternChange = 7;
inline constexpr int kSparse = 8;
inline constexpr int kRepeatedValue = 9;
inline constexpr int kSuddenFlatline = 10;
inline constexpr int kDrift = 11;
inline constexpr int kSuddenSpike = 12;
inline constexpr int kContinuousSegment = 13;
inline constexpr int kNonlinearPattern = 14;

// Multivariate ids in catalog order.
inline constexpr int kCovarianceStructure = 1;
inline constexpr int kTemporalDependency = 2;
inline constexpr int kTrendDivergence = 3;
inline constexpr int kJointSpace = 4;
inline constexpr int kPcaSpace = 5;
inline constexpr int kCollinearityShift = 6;

// "point_magnitude": local-sd multiples added at the injected index.
inline constexpr double kPointMagnitudeSd = 8.0;
// "spike_magnitude" / "spike_run": plateau height in sd and its length.
inline constexpr double kSpikeMagnitudeSd = 6.0;
inline constexpr std::size_t kSpikeRun = 3;
// "amplitude_gain_extra": in-window gain is 1 + extra * severity.
inline constexpr double kAmplitudeGainExtra = 3.0;
// "segment_shift": windowed mean shift in sd.
inline constexpr double kSegmentShiftSd = 4.0;
// "step_shift": change-point level step in sd.
inline constexpr double kChangePointShiftSd = 4.0;
// "drift_displacement": total ramp displacement in sd by the last step.
inline constexpr double kDriftDisplacementSd = 5.0;
// "noise_scale_extra": distributional in-window noise is 1 + extra * severity
// times the base scale.
inline constexpr double kDistributionalScaleExtra = 3.0;
// "sparse_events" / "sparse_magnitude": isolated points and their height.
inline constexpr std::size_t kSparseEvents = 3;
inline constexpr double kSparseMagnitudeSd = 6.0;
// "run_length": consecutive equal values per repeated-value run.
inline constexpr std::size_t kRepeatedRunLength = 4;
// "pattern_span": ramp endpoints at +-span * amplitude.
inline constexpr double kPatternRampSpan = 1.5;
// "bend_displacement" / "bend_sharpness": exponential bend final displacement
// (sd) and exponent.
inline constexpr double kNonlinearDisplacementSd = 14.0;
inline constexpr double kNonlinearSharpness = 4.0;
// "lag_shift": follower delay introduced inside the window.
inline constexpr int kTemporalLagShift = 5;
// "offset_sd": joint-space offset in minor-axis sd multiples.
inline constexpr double kJointOffsetSd = 5.0;
// "residual_gain": PC-space perturbation in residual-noise sd multiples.
inline constexpr double kPcaResidualGain = 6.0;

// Interior windows default to this fraction of the series, centered with a
// small seeded jitter; "to end" categories start at this fraction.
inline constexpr double kInteriorWindowFraction = 0.30;
inline constexpr double kTailWindowStartFraction = 0.60;

// Base noise scale shared by the flat (ar1) recipes.
inline constexpr double kAr1Phi = 0.3;
inline constexpr double kAr1Innovation = 1.0;

// Default base recipe for a category. The trend slope and sine period depend
// on the segment length, so the recipe is parameterized by it.
inline BaseSignalSpec base_recipe(const AnomalyCategory& category, std::size_t length,
                                  std::size_t channels, std::uint64_t seed) {
  BaseSignalSpec spec;
  spec.length = length;
  spec.channels = channels;
  spec.seed = seed;
  const double n = static_cast<double>(length);

  if (category.arity == Arity::Univariate) {
    switch (category.id) {
      case kPeriodicChange:
      case kPatternChange:
        spec.kind = BaseKind::Sine;
        spec.params = {{"period", n / 4.0}, {"amplitude", 1.0}, {"noise_std", 0.25}};
        break;
      case kAmplitude:
        spec.kind = BaseKind::Sine;
        spec.params = {{"period", n / 4.0}, {"amplitude", 1.0}, {"noise_std", 0.2}};
        break;
      case kTrendChange:
        spec.kind = BaseKind::TrendPlusNoise;
        spec.params = {{"slope", 6.0 / n}, {"noise_std", 1.0}};
        break;
      case kNonlinearPattern:
        spec.kind = BaseKind::TrendPlusNoise;
        spec.params = {{"slope", 5.0 / n}, {"noise_std", 1.0}};
        break;
      default:
        spec.kind = BaseKind::Ar1;
        spec.params = {{"phi", kAr1Phi}, {"innovation_std", kAr1Innovation}};
        break;
    }
    return spec;
  }

  switch (category.id) {
    case kTrendDivergence:
      spec.kind = BaseKind::TrendPlusNoise;
      spec.params = {{"slope", 6.0 / n}, {"noise_std", 1.0}};
      break;
    case kCollinearityShift:
      spec.kind = BaseKind::Ar1;
      spec.params = {{"phi", 0.5}, {"innovation_std", 1.0}, {"noise_std", 0.05}};
      break;
    default:
      // Shared smooth factor with per-channel observation noise; pairwise
      // correlation lands near 0.92.
      spec.kind = BaseKind::Ar1;
      spec.params = {{"phi", 0.6}, {"innovation_std", 0.8}, {"noise_std", 0.3}};
      break;
  }
  return spec;
}

// Minimum channel count a multivariate category needs.
inline std::size_t min_channels(const AnomalyCategory& category) {
  if (category.arity == Arity::Univariate) return 1;
  return category.id == kPcaSpace ? 3 : 2;
}

}  // namespace tsrkit::synth::defaults
