#pragma once
// Precision / recall / F1 for the binary label and for the multi-class
// action. Zero denominators yield 0 and a degenerate flag instead of NaN.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsrkit/core/taxonomy.hpp"

namespace tsrkit::metrics {

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::vector<std::string> flags;
};

namespace detail {

inline double safe_div(double num, double den, const char* what, std::vector<std::string>& flags) {
  if (den <= 0.0) {
    flags.push_back(std::string("zero denominator: ") + what);
    return 0.0;
  }
  return num / den;
}

}  // namespace detail

inline Prf prf_from_counts(double tp, double fp, double fn) {
  Prf r;
  r.precision = detail::safe_div(tp, tp + fp, "precision", r.flags);
  r.recall = detail::safe_div(tp, tp + fn, "recall", r.flags);
  r.f1 = detail::safe_div(2.0 * r.precision * r.recall, r.precision + r.recall, "f1", r.flags);
  return r;
}

inline Prf binary_prf(const std::vector<bool>& preds, const std::vector<bool>& golds) {
  if (preds.size() != golds.size()) throw std::invalid_argument("prediction/gold length mismatch");
  if (preds.empty()) throw std::invalid_argument("empty prediction set");
  double tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (preds[i] && golds[i]) ++tp;
    else if (preds[i] && !golds[i]) ++fp;
    else if (!preds[i] && golds[i]) ++fn;
  }
  return prf_from_counts(tp, fp, fn);
}

// Macro-averaged one-vs-rest scores over the classes present in the gold
// labels. Unparseable predictions (nullopt) count as a dedicated wrong class:
// they can never match a gold class, but they still cost recall.
inline Prf action_prf(const std::vector<std::optional<AnomalyCategory>>& preds,
                      const std::vector<AnomalyCategory>& golds) {
  if (preds.size() != golds.size()) throw std::invalid_argument("prediction/gold length mismatch");
  if (golds.empty()) throw std::invalid_argument("empty prediction set");
  const Arity arity = golds.front().arity;
  for (const auto& g : golds)
    if (g.arity != arity) throw std::invalid_argument("mixed arity in gold labels");
  for (const auto& p : preds)
    if (p && p->arity != arity) throw std::invalid_argument("mixed arity in predictions");

  std::map<int, std::size_t> gold_classes;
  for (const auto& g : golds) ++gold_classes[g.id];

  Prf out;
  double sum_p = 0, sum_r = 0, sum_f = 0;
  for (const auto& [cls, count] : gold_classes) {
    (void)count;
    double tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < golds.size(); ++i) {
      const bool gold_is = golds[i].id == cls;
      const bool pred_is = preds[i] && preds[i]->id == cls;
      if (pred_is && gold_is) ++tp;
      else if (pred_is && !gold_is) ++fp;
      else if (!pred_is && gold_is) ++fn;
    }
    Prf cls_prf = prf_from_counts(tp, fp, fn);
    sum_p += cls_prf.precision;
    sum_r += cls_prf.recall;
    sum_f += cls_prf.f1;
  }
  const auto k = static_cast<double>(gold_classes.size());
  out.precision = sum_p / k;
  out.recall = sum_r / k;
  out.f1 = sum_f / k;
  if (gold_classes.size() == 1) out.flags.push_back("single gold class");
  return out;
}

// Micro average: with one prediction per item this collapses to accuracy.
inline Prf action_prf_micro(const std::vector<std::optional<AnomalyCategory>>& preds,
                            const std::vector<AnomalyCategory>& golds) {
  if (preds.size() != golds.size()) throw std::invalid_argument("prediction/gold length mismatch");
  if (golds.empty()) throw std::invalid_argument("empty prediction set");
  double correct = 0;
  for (std::size_t i = 0; i < golds.size(); ++i)
    if (preds[i] && preds[i]->id == golds[i].id) ++correct;
  Prf out;
  out.precision = out.recall = out.f1 = correct / static_cast<double>(golds.size());
  return out;
}

}  // namespace tsrkit::metrics
