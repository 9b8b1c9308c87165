#pragma once
// Time series segment: one or more named channels of equal length, with an
// optional half-open anomaly window and the seed it was generated from.
// Immutable by convention once built; all pipeline stages copy.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsrkit/core/taxonomy.hpp"

namespace tsrkit {

inline constexpr std::size_t kMinSegmentLength = 16;
inline constexpr std::size_t kMaxSegmentLength = 128;
inline constexpr std::size_t kMaxChannels = 32;

struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = 0;  // exclusive

  std::size_t size() const { return end - begin; }
  bool contains(std::size_t i) const { return i >= begin && i < end; }

  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

struct Channel {
  std::string name;
  std::vector<double> values;

  friend bool operator==(const Channel&, const Channel&) = default;
};

struct TimeSeriesSegment {
  std::vector<Channel> channels;
  std::optional<IndexRange> anomaly_window;
  std::uint64_t seed = 0;

  std::size_t length() const { return channels.empty() ? 0 : channels.front().values.size(); }
  bool univariate() const { return channels.size() == 1; }
  Arity arity() const { return univariate() ? Arity::Univariate : Arity::Multivariate; }

  friend bool operator==(const TimeSeriesSegment&, const TimeSeriesSegment&) = default;
};

// Throws if the segment violates its structural invariants. Used by
// constructors of pipeline stages; record-level validation reports
// violations as data instead.
inline void check_segment(const TimeSeriesSegment& seg) {
  if (seg.channels.empty()) throw std::invalid_argument("segment has no channels");
  if (seg.channels.size() > kMaxChannels)
    throw std::invalid_argument("segment exceeds " + std::to_string(kMaxChannels) + " channels");
  const std::size_t n = seg.channels.front().values.size();
  for (const auto& ch : seg.channels) {
    if (ch.values.size() != n) throw std::invalid_argument("channels differ in length");
  }
  if (seg.anomaly_window) {
    const auto& w = *seg.anomaly_window;
    if (w.begin >= w.end || w.end > n) throw std::invalid_argument("anomaly window out of range");
  }
}

}  // namespace tsrkit
