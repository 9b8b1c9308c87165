#pragma once
// Base signal generation. Each kind builds one structural core from the seed
// (a sine curve, a trend line, an AR(1) path, a random walk) and every
// channel observes that core plus independent Gaussian noise. Deterministic
// given the spec, including channel count.

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsrkit/core/segment.hpp"

namespace tsrkit::synth {

enum class BaseKind { Sine, TrendPlusNoise, Ar1, RandomWalk };

inline const char* to_string(BaseKind k) {
  switch (k) {
    case BaseKind::Sine: return "sine";
    case BaseKind::TrendPlusNoise: return "trend";
    case BaseKind::Ar1: return "ar1";
    case BaseKind::RandomWalk: return "random_walk";
  }
  return "?";
}

struct BaseSignalSpec {
  BaseKind kind = BaseKind::Sine;
  std::size_t length = 64;
  std::size_t channels = 1;
  std::map<std::string, double> params;  // period, amplitude, slope, noise_std, phi, innovation_std
  std::uint64_t seed = 0;

  double param(const std::string& key, double fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  }
};

namespace detail {

// splitmix64; used to derive independent per-channel streams from one seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

inline void check_base_spec(const BaseSignalSpec& spec) {
  if (spec.length < kMinSegmentLength || spec.length > kMaxSegmentLength)
    throw std::invalid_argument("base length outside [" + std::to_string(kMinSegmentLength) + ", " +
                                std::to_string(kMaxSegmentLength) + "]");
  if (spec.channels < 1 || spec.channels > kMaxChannels)
    throw std::invalid_argument("channel count outside [1, " + std::to_string(kMaxChannels) + "]");
  if (spec.param("noise_std", 0.0) < 0.0) throw std::invalid_argument("noise_std must be >= 0");
  if (spec.kind == BaseKind::Ar1 && std::abs(spec.param("phi", 0.0)) >= 1.0)
    throw std::invalid_argument("|phi| must be < 1 for ar1");
}

inline TimeSeriesSegment gen_base(const BaseSignalSpec& spec) {
  check_base_spec(spec);
  const std::size_t n = spec.length;

  std::vector<double> core(n, 0.0);
  std::mt19937_64 core_rng(detail::mix_seed(spec.seed, 0));
  std::normal_distribution<double> unit(0.0, 1.0);

  switch (spec.kind) {
    case BaseKind::Sine: {
      const double period = spec.param("period", static_cast<double>(n) / 4.0);
      const double amplitude = spec.param("amplitude", 1.0);
      for (std::size_t t = 0; t < n; ++t)
        core[t] = amplitude * std::sin(2.0 * std::numbers::pi * static_cast<double>(t) / period);
      break;
    }
    case BaseKind::TrendPlusNoise: {
      const double slope = spec.param("slope", 0.05);
      for (std::size_t t = 0; t < n; ++t) core[t] = slope * static_cast<double>(t);
      break;
    }
    case BaseKind::Ar1: {
      const double phi = spec.param("phi", 0.6);
      const double innovation = spec.param("innovation_std", 1.0);
      double prev = 0.0;
      for (std::size_t t = 0; t < n; ++t) {
        prev = phi * prev + innovation * unit(core_rng);
        core[t] = prev;
      }
      break;
    }
    case BaseKind::RandomWalk: {
      const double innovation = spec.param("innovation_std", 1.0);
      double level = 0.0;
      for (std::size_t t = 0; t < n; ++t) {
        level += innovation * unit(core_rng);
        core[t] = level;
      }
      break;
    }
  }

  const double noise_std = spec.param("noise_std", 0.0);
  TimeSeriesSegment seg;
  seg.seed = spec.seed;
  seg.channels.reserve(spec.channels);
  for (std::size_t c = 0; c < spec.channels; ++c) {
    Channel ch;
    ch.name = spec.channels == 1 ? "value" : "ch" + std::to_string(c + 1);
    ch.values = core;
    if (noise_std > 0.0) {
      std::mt19937_64 rng(detail::mix_seed(spec.seed, c + 1));
      for (double& v : ch.values) v += noise_std * unit(rng);
    }
    seg.channels.push_back(std::move(ch));
  }
  return seg;
}

}  // namespace tsrkit::synth
