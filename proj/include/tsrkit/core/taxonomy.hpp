#pragma once
// Fixed anomaly taxonomy: 15 univariate categories (Normal + 14) and
// 7 multivariate categories (Normal + 6), each with a one-line semantic
// definition. Ids are dense starting at 0; 0 is always the normal category.
// Name matching is case-insensitive everywhere; the canonical capitalization
// is what gets rendered into prompts and record files.

#include <algorithm>
#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tsrkit {

enum class Arity { Univariate, Multivariate };

inline const char* to_string(Arity a) {
  return a == Arity::Univariate ? "univariate" : "multivariate";
}

struct AnomalyCategory {
  int id = 0;
  std::string name;
  Arity arity = Arity::Univariate;
  std::string definition;

  bool is_normal() const { return id == 0; }

  friend bool operator==(const AnomalyCategory& a, const AnomalyCategory& b) {
    return a.id == b.id && a.arity == b.arity;
  }
};

inline const std::vector<AnomalyCategory>& catalog(Arity arity) {
  static const std::vector<AnomalyCategory> uni = {
      {0, "Normal Sequence", Arity::Univariate,
       "There are no abnormal situations in this time series."},
      {1, "Point Anomaly", Arity::Univariate,
       "A single data point significantly deviates from the local or global pattern."},
      {2, "Periodic Change Anomaly", Arity::Univariate,
       "The original periodic pattern is disrupted, such as broken periods or anomalous amplitude."},
      {3, "Trend Change Anomaly", Arity::Univariate,
       "A sudden change in the long-term trend of the time series."},
      {4, "Change Point Anomaly", Arity::Univariate,
       "Statistical properties (e.g., mean, variance) change abruptly at certain points."},
      {5, "Distributional Change Anomaly", Arity::Univariate,
       "The statistical distribution of the time series changes significantly."},
      {6, "Amplitude Anomaly", Arity::Univariate,
       "The amplitude of data points exceeds the normal upper or lower bounds."},
      {7, "Pattern Change Anomaly", Arity::Univariate,
       "The pattern of the time series suddenly changes from one form to another."},
      {8, "Sparse Anomaly", Arity::Univariate,
       "Isolated anomalous patterns occasionally appear in a long time series."},
      {9, "Repeated Value Anomaly", Arity::Univariate,
       "Continuous or intermittent repeated values disrupt the normal fluctuation pattern."},
      {10, "Sudden Flatline Anomaly", Arity::Univariate,
       "The time series suddenly becomes a flat line with no normal fluctuations."},
      {11, "Drift Anomaly", Arity::Univariate,
       "The data gradually drifts away from the normal level."},
      {12, "Sudden Spike Anomaly", Arity::Univariate,
       "The data suddenly spikes or drops within a short time and then returns to normal."},
      {13, "Continuous Segment Anomaly", Arity::Univariate,
       "A continuous segment of data points deviates from the normal pattern."},
      {14, "Nonlinear Pattern Anomaly", Arity::Univariate,
       "Nonlinear changes appear, breaking the original linear rule."},
  };
  static const std::vector<AnomalyCategory> multi = {
      {0, "Normal Sequence", Arity::Multivariate,
       "From a multivariate view, all variables follow expected patterns over time. "
       "Relationships among variables and their dynamics remain stable without any abnormality."},
      {1, "Covariance Structure Anomaly", Arity::Multivariate,
       "The usual covariance or correlation structure among variables changes suddenly, "
       "such as reversal or unexpected decorrelation."},
      {2, "Temporal Dependency Anomaly", Arity::Multivariate,
       "Expected temporal dependencies (e.g., fixed lags and variable response delays) are violated, "
       "indicating possible desynchronization or timing failures."},
      {3, "Trend Divergence Anomaly", Arity::Multivariate,
       "A subset of variables unexpectedly deviates from a shared trend, "
       "suggesting localized failures or partial system faults."},
      {4, "Joint Space Anomaly", Arity::Multivariate,
       "Although individual variable values may appear normal, their joint configuration is anomalous, "
       "suggesting system-level inconsistency in the multivariate space."},
      {5, "Principal Component Space Anomaly", Arity::Multivariate,
       "An anomaly becomes evident only in a lower-dimensional latent space (e.g., PCA), "
       "revealing subtle structural deviation across many variables."},
      {6, "Collinearity Shift Anomaly", Arity::Multivariate,
       "Strong linear dependencies or redundancies between variables suddenly break down, "
       "often due to malfunctioning or desynchronized components."},
  };
  return arity == Arity::Univariate ? uni : multi;
}

inline const AnomalyCategory& normal_category(Arity arity) { return catalog(arity)[0]; }

namespace detail {

// Lowercases and collapses runs of whitespace into single spaces.
inline std::string fold_name(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!out.empty()) pending_space = true;
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

// Drops a trailing "anomaly" or "sequence" word so that e.g. "Normal" and
// "Normal Sequence" compare equal.
inline std::string strip_kind_suffix(std::string folded) {
  for (std::string_view suffix : {" anomaly", " sequence"}) {
    if (folded.size() > suffix.size() &&
        folded.compare(folded.size() - suffix.size(), suffix.size(), suffix) == 0) {
      folded.erase(folded.size() - suffix.size());
      break;
    }
  }
  return folded;
}

}  // namespace detail

inline std::optional<AnomalyCategory> find_category(std::string_view name, Arity arity) {
  const std::string key = detail::strip_kind_suffix(detail::fold_name(name));
  if (key.empty()) return std::nullopt;
  for (const auto& cat : catalog(arity)) {
    if (detail::strip_kind_suffix(detail::fold_name(cat.name)) == key) return cat;
  }
  return std::nullopt;
}

inline const AnomalyCategory& category_by_id(int id, Arity arity) {
  const auto& cats = catalog(arity);
  if (id < 0 || static_cast<std::size_t>(id) >= cats.size())
    throw std::out_of_range("no category with id " + std::to_string(id));
  return cats[static_cast<std::size_t>(id)];
}

}  // namespace tsrkit
