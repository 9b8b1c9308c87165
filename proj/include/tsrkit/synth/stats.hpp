#pragma once
// Small statistics toolbox used by the signal generators, injectors and the
// oracle detectors: moments, robust spread, least-squares fits, lagged
// correlations, covariance and the leading eigenvector by power iteration.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace tsrkit::stats {

inline double mean(std::span<const double> x) {
  if (x.empty()) return 0.0;
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

// Unbiased sample variance; 0 for fewer than two points.
inline double variance(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  const double m = mean(x);
  double acc = 0.0;
  for (double v : x) acc += (v - m) * (v - m);
  return acc / static_cast<double>(x.size() - 1);
}

inline double stddev(std::span<const double> x) { return std::sqrt(variance(x)); }

inline double median(std::vector<double> x) {
  if (x.empty()) return 0.0;
  const std::size_t mid = x.size() / 2;
  std::nth_element(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(mid), x.end());
  double hi = x[mid];
  if (x.size() % 2 == 1) return hi;
  std::nth_element(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(mid) - 1, x.end());
  return 0.5 * (x[mid - 1] + hi);
}

// Median absolute deviation (unscaled).
inline double mad(std::span<const double> x) {
  if (x.empty()) return 0.0;
  const double med = median({x.begin(), x.end()});
  std::vector<double> dev;
  dev.reserve(x.size());
  for (double v : x) dev.push_back(std::abs(v - med));
  return median(std::move(dev));
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double rss = 0.0;
};

inline LinearFit linear_fit(std::span<const double> y) {
  LinearFit fit;
  const std::size_t n = y.size();
  if (n < 2) {
    fit.intercept = n == 1 ? y[0] : 0.0;
    return fit;
  }
  const double tm = (static_cast<double>(n) - 1.0) / 2.0;
  const double ym = mean(y);
  double stt = 0.0, sty = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dt = static_cast<double>(i) - tm;
    const double dy = y[i] - ym;
    stt += dt * dt;
    sty += dt * dy;
    syy += dy * dy;
  }
  fit.slope = stt > 0.0 ? sty / stt : 0.0;
  fit.intercept = ym - fit.slope * tm;
  fit.rss = std::max(0.0, syy - fit.slope * sty);
  fit.r2 = syy > 0.0 ? 1.0 - fit.rss / syy : 0.0;
  return fit;
}

// Residuals of the least-squares line; used to compare correlation structure
// independent of per-channel trends.
inline std::vector<double> detrend(std::span<const double> y) {
  const LinearFit fit = linear_fit(y);
  std::vector<double> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    out[i] = y[i] - (fit.intercept + fit.slope * static_cast<double>(i));
  return out;
}

// RSS of the quadratic least-squares fit, time rescaled to [-1, 1] to keep
// the normal equations well conditioned.
inline double quadratic_rss(std::span<const double> y) {
  const std::size_t n = y.size();
  if (n < 3) return 0.0;
  double a[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
  double b[3] = {0, 0, 0};
  for (std::size_t i = 0; i < n; ++i) {
    const double t = n > 1 ? 2.0 * static_cast<double>(i) / (static_cast<double>(n) - 1.0) - 1.0 : 0.0;
    const double basis[3] = {1.0, t, t * t};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) a[r][c] += basis[r] * basis[c];
      b[r] += basis[r] * y[i];
    }
  }
  // Gaussian elimination with partial pivoting on the 3x3 system.
  int perm[3] = {0, 1, 2};
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(a[perm[r]][col]) > std::abs(a[perm[pivot]][col])) pivot = r;
    std::swap(perm[col], perm[pivot]);
    const double diag = a[perm[col]][col];
    if (std::abs(diag) < 1e-12) return 0.0;
    for (int r = col + 1; r < 3; ++r) {
      const double f = a[perm[r]][col] / diag;
      for (int c = col; c < 3; ++c) a[perm[r]][c] -= f * a[perm[col]][c];
      b[perm[r]] -= f * b[perm[col]];
    }
  }
  double coef[3];
  for (int col = 2; col >= 0; --col) {
    double acc = b[perm[col]];
    for (int c = col + 1; c < 3; ++c) acc -= a[perm[col]][c] * coef[c];
    coef[col] = acc / a[perm[col]][col];
  }
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = 2.0 * static_cast<double>(i) / (static_cast<double>(n) - 1.0) - 1.0;
    const double fit = coef[0] + coef[1] * t + coef[2] * t * t;
    rss += (y[i] - fit) * (y[i] - fit);
  }
  return rss;
}

// F statistic for the quadratic term against the linear model. Large values
// mean the window is genuinely curved, not just trending.
inline double curvature_f_stat(std::span<const double> y) {
  const std::size_t n = y.size();
  if (n < 5) return 0.0;
  const double rss_lin = linear_fit(y).rss;
  const double rss_quad = quadratic_rss(y);
  const double denom = rss_quad / static_cast<double>(n - 3);
  if (denom <= 1e-12) return rss_lin > 1e-9 ? 1e9 : 0.0;
  return std::max(0.0, (rss_lin - rss_quad) / denom);
}

inline double pearson(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return 0.0;
  const double mx = mean(x.subspan(0, n));
  const double my = mean(y.subspan(0, n));
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

// Sample autocorrelation at the given lag.
inline double autocorr(std::span<const double> x, std::size_t lag) {
  const std::size_t n = x.size();
  if (lag == 0) return 1.0;
  if (n < lag + 2) return 0.0;
  const double m = mean(x);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) den += (x[i] - m) * (x[i] - m);
  for (std::size_t i = lag; i < n; ++i) num += (x[i] - m) * (x[i - lag] - m);
  if (den <= 0.0) return 0.0;
  return num / den;
}

struct PeriodEstimate {
  std::size_t lag = 0;
  double strength = 0.0;  // autocorrelation at the dominant lag
};

// Dominant cycle length: the lag in [3, max_lag] with the highest
// autocorrelation.
inline PeriodEstimate dominant_period(std::span<const double> x, std::size_t max_lag = 32) {
  PeriodEstimate best;
  const std::size_t hi = std::min(max_lag, x.size() / 2);
  for (std::size_t lag = 3; lag <= hi; ++lag) {
    const double r = autocorr(x, lag);
    if (r > best.strength) {
      best.strength = r;
      best.lag = lag;
    }
  }
  return best;
}

struct CrossCorrPeak {
  int lag = 0;       // positive: y follows x
  double value = 0;  // |correlation| at the peak
};

// Peak of |corr(x_t, y_{t+lag})| over lags in [-max_lag, max_lag].
inline CrossCorrPeak cross_corr_peak(std::span<const double> x, std::span<const double> y,
                                     int max_lag) {
  CrossCorrPeak best;
  const int n = static_cast<int>(std::min(x.size(), y.size()));
  for (int lag = -max_lag; lag <= max_lag; ++lag) {
    std::vector<double> a, b;
    for (int t = 0; t < n; ++t) {
      const int u = t + lag;
      if (u < 0 || u >= n) continue;
      a.push_back(x[static_cast<std::size_t>(t)]);
      b.push_back(y[static_cast<std::size_t>(u)]);
    }
    if (a.size() < 6) continue;
    const double r = std::abs(pearson(a, b));
    if (r > best.value) {
      best.value = r;
      best.lag = lag;
    }
  }
  return best;
}

// Column-major covariance of rows = time steps, cols = channels.
inline std::vector<double> covariance_matrix(const std::vector<std::vector<double>>& cols) {
  const std::size_t d = cols.size();
  const std::size_t n = d == 0 ? 0 : cols[0].size();
  std::vector<double> cov(d * d, 0.0);
  if (n < 2) return cov;
  std::vector<double> means(d);
  for (std::size_t c = 0; c < d; ++c) means[c] = mean(cols[c]);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a; b < d; ++b) {
      double acc = 0.0;
      for (std::size_t t = 0; t < n; ++t) acc += (cols[a][t] - means[a]) * (cols[b][t] - means[b]);
      const double v = acc / static_cast<double>(n - 1);
      cov[a * d + b] = v;
      cov[b * d + a] = v;
    }
  }
  return cov;
}

// Leading eigenvector by power iteration: 100 rounds or convergence below
// 1e-10, whichever comes first. Deterministic start vector.
inline std::vector<double> leading_eigenvector(const std::vector<double>& cov, std::size_t d) {
  std::vector<double> v(d, 1.0 / std::sqrt(static_cast<double>(d)));
  std::vector<double> next(d);
  for (int iter = 0; iter < 100; ++iter) {
    for (std::size_t r = 0; r < d; ++r) {
      double acc = 0.0;
      for (std::size_t c = 0; c < d; ++c) acc += cov[r * d + c] * v[c];
      next[r] = acc;
    }
    double norm = 0.0;
    for (double x : next) norm += x * x;
    norm = std::sqrt(norm);
    if (norm < 1e-15) return v;
    double delta = 0.0;
    for (std::size_t r = 0; r < d; ++r) {
      next[r] /= norm;
      delta = std::max(delta, std::abs(next[r] - v[r]));
    }
    v = next;
    if (delta < 1e-10) break;
  }
  return v;
}

// Solves (A + ridge*I) x = b for symmetric positive semi-definite A.
inline std::vector<double> solve_spd(std::vector<double> a, std::vector<double> b, std::size_t d,
                                     double ridge = 1e-9) {
  for (std::size_t i = 0; i < d; ++i) a[i * d + i] += ridge;
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < d; ++r)
      if (std::abs(a[perm[r] * d + col]) > std::abs(a[perm[pivot] * d + col])) pivot = r;
    std::swap(perm[col], perm[pivot]);
    const double diag = a[perm[col] * d + col];
    if (std::abs(diag) < 1e-12) throw std::runtime_error("singular covariance");
    for (std::size_t r = col + 1; r < d; ++r) {
      const double f = a[perm[r] * d + col] / diag;
      for (std::size_t c = col; c < d; ++c) a[perm[r] * d + c] -= f * a[perm[col] * d + c];
      b[perm[r]] -= f * b[perm[col]];
    }
  }
  std::vector<double> x(d);
  for (std::size_t col = d; col-- > 0;) {
    double acc = b[perm[col]];
    for (std::size_t c = col + 1; c < d; ++c) acc -= a[perm[col] * d + c] * x[c];
    x[col] = acc / (a[perm[col] * d + col]);
  }
  return x;
}

// Longest run of exactly equal consecutive values.
inline std::size_t longest_equal_run(std::span<const double> x) {
  std::size_t best = x.empty() ? 0 : 1;
  std::size_t run = 1;
  for (std::size_t i = 1; i < x.size(); ++i) {
    run = x[i] == x[i - 1] ? run + 1 : 1;
    best = std::max(best, run);
  }
  return best;
}

}  // namespace tsrkit::stats
