#include <cmath>

#include <catch_amalgamated.hpp>

#include "tsrkit/synth/defaults.hpp"
#include "tsrkit/synth/inject.hpp"
#include "tsrkit/synth/oracle.hpp"
#include "tsrkit/synth/stats.hpp"

using namespace tsrkit;
using namespace tsrkit::synth;

namespace {

TimeSeriesSegment base_for(const AnomalyCategory& cat, std::uint64_t seed, std::size_t length = 64) {
  return gen_base(defaults::base_recipe(cat, length, 1, seed));
}

AnomalyCategory uni(int id) { return category_by_id(id, Arity::Univariate); }

}  // namespace

TEST_CASE("locality: outside the window every value is bitwise equal to the base") {
  for (int id = 1; id <= 14; ++id) {
    const auto cat = uni(id);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto base = base_for(cat, 900 + seed);
      const auto out = inject_univariate(base, {cat, 1.0, std::nullopt, {}});
      REQUIRE(out.anomaly_window.has_value());
      const auto& w = *out.anomaly_window;
      for (std::size_t t = 0; t < base.length(); ++t) {
        if (w.contains(t)) continue;
        REQUIRE(out.channels[0].values[t] == base.channels[0].values[t]);
      }
    }
  }
}

TEST_CASE("injection is a pure function of base and spec") {
  for (int id : {1, 5, 10, 14}) {
    const auto cat = uni(id);
    const auto base = base_for(cat, 42);
    const InjectionSpec spec{cat, 0.8, std::nullopt, {}};
    REQUIRE(inject_univariate(base, spec) == inject_univariate(base, spec));
  }
}

TEST_CASE("flatline windows have exactly zero variance") {
  const auto cat = uni(defaults::kSuddenFlatline);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto out = inject_univariate(base_for(cat, seed), {cat, 1.0, std::nullopt, {}});
    const auto& w = *out.anomaly_window;
    const double first = out.channels[0].values[w.begin];
    for (std::size_t t = w.begin; t < w.end; ++t) REQUIRE(out.channels[0].values[t] == first);
  }
}

TEST_CASE("point anomalies at full severity clear five local standard deviations") {
  // Brute-force local z-score against the 8-point neighborhood.
  const auto cat = uni(defaults::kPoint);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto base = base_for(cat, 3000 + seed);
    const auto out = inject_univariate(base, {cat, 1.0, std::nullopt, {}});
    const std::size_t i = out.anomaly_window->begin;
    std::vector<double> neigh;
    for (std::size_t t = i >= 4 ? i - 4 : 0; t < std::min(out.length(), i + 5); ++t)
      if (t != i) neigh.push_back(out.channels[0].values[t]);
    const double m = stats::mean(neigh);
    const double sd = stats::stddev(neigh);
    REQUIRE(sd > 0.0);
    REQUIRE(std::abs(out.channels[0].values[i] - m) / sd >= 5.0);
  }
}

TEST_CASE("repeated value injection leaves runs inside the window only") {
  const auto cat = uni(defaults::kRepeatedValue);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto base = base_for(cat, 7000 + seed);
    const auto out = inject_univariate(base, {cat, 1.0, std::nullopt, {}});
    const auto& w = *out.anomaly_window;
    const auto& x = out.channels[0].values;
    std::vector<double> inside(x.begin() + static_cast<std::ptrdiff_t>(w.begin),
                               x.begin() + static_cast<std::ptrdiff_t>(w.end));
    std::vector<double> outside;
    for (std::size_t t = 0; t < x.size(); ++t)
      if (!w.contains(t)) outside.push_back(x[t]);
    REQUIRE(stats::longest_equal_run(inside) >= 4);
    REQUIRE(stats::longest_equal_run(outside) < 4);
  }
}

TEST_CASE("injector rejects bad requests") {
  const auto cat = uni(defaults::kPoint);
  const auto base = base_for(cat, 1);
  REQUIRE_THROWS_AS(
      inject_univariate(base, {normal_category(Arity::Univariate), 1.0, std::nullopt, {}}),
      CategoryIsNormal);
  REQUIRE_THROWS_AS(
      inject_univariate(base, {category_by_id(1, Arity::Multivariate), 1.0, std::nullopt, {}}),
      std::invalid_argument);
  REQUIRE_THROWS_AS(inject_univariate(base, {cat, 0.0, std::nullopt, {}}), std::invalid_argument);
  REQUIRE_THROWS_AS(inject_univariate(base, {cat, 1.0, IndexRange{60, 70}, {}}),
                    std::invalid_argument);
  auto multi = base;
  multi.channels.push_back(multi.channels[0]);
  REQUIRE_THROWS_AS(inject_univariate(multi, {cat, 1.0, std::nullopt, {}}), std::invalid_argument);
}

TEST_CASE("oracle statistic grows with severity for point, amplitude and spike") {
  for (int id : {defaults::kPoint, defaults::kAmplitude, defaults::kSuddenSpike}) {
    const auto cat = uni(id);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto base = base_for(cat, 11000 + seed);
      double prev = -1.0;
      for (double severity : {0.25, 0.5, 1.0}) {
        const auto out = inject_univariate(base, {cat, severity, std::nullopt, {}});
        const double stat = oracle_statistic(out, *out.anomaly_window, cat);
        REQUIRE(stat >= prev);
        prev = stat;
      }
    }
  }
}

TEST_CASE("oracle recovers flatline by construction and normals stay normal") {
  const auto flat = uni(defaults::kSuddenFlatline);
  const auto out = inject_univariate(base_for(flat, 99), {flat, 1.0, std::nullopt, {}});
  REQUIRE(oracle_classify(out, *out.anomaly_window, Arity::Univariate) == flat);

  std::size_t normal_count = 0;
  const std::size_t trials = 1000;
  for (std::uint64_t seed = 0; seed < trials; ++seed) {
    BaseSignalSpec spec;
    spec.kind = static_cast<BaseKind>(seed % 4);
    spec.length = 64;
    spec.seed = 40000 + seed;
    switch (spec.kind) {
      case BaseKind::Sine:
        spec.params = {{"period", 16.0}, {"amplitude", 1.0}, {"noise_std", 0.25}};
        break;
      case BaseKind::TrendPlusNoise:
        spec.params = {{"slope", 0.06}, {"noise_std", 1.0}};
        break;
      default:
        spec.params = {{"phi", 0.4}, {"innovation_std", 1.0}};
        break;
    }
    const auto seg = gen_base(spec);
    const auto verdict = oracle_classify(seg, IndexRange{0, seg.length()}, Arity::Univariate);
    if (verdict.is_normal()) ++normal_count;
  }
  REQUIRE(normal_count >= 950);
}

TEST_CASE("oracle round-trips every univariate category on a small seed sweep") {
  for (int id = 1; id <= 14; ++id) {
    const auto cat = uni(id);
    std::size_t hits = 0;
    const std::size_t trials = 25;
    for (std::uint64_t seed = 0; seed < trials; ++seed) {
      const auto base = base_for(cat, 20000 + 97 * static_cast<std::uint64_t>(id) + seed);
      const auto out = inject_univariate(base, {cat, 1.0, std::nullopt, {}});
      const auto verdict = oracle_classify(out, *out.anomaly_window, Arity::Univariate);
      REQUIRE_FALSE(verdict.is_normal());
      if (verdict == cat) ++hits;
    }
    INFO("category " << cat.name << " hits " << hits << "/" << trials);
    REQUIRE(hits >= 23);
  }
}
