#include "cgsdp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "cgsdp/error.hpp"

namespace cgsdp {

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& o) {
  tp += o.tp;
  fp += o.fp;
  fn += o.fn;
  tn += o.tn;
  return *this;
}

ConfusionMatrix confusion_matrix(std::span<const int> y_true, std::span<const int> y_pred) {
  if (y_true.size() != y_pred.size()) {
    throw Error("length_mismatch", "confusion matrix: " + std::to_string(y_true.size()) + " labels vs " +
                                       std::to_string(y_pred.size()) + " predictions");
  }
  if (y_true.empty()) throw Error("length_mismatch", "confusion matrix: no predictions");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const bool actual = y_true[i] == 1, predicted = y_pred[i] == 1;
    if (actual && predicted) ++cm.tp;
    else if (!actual && predicted) ++cm.fp;
    else if (actual) ++cm.fn;
    else ++cm.tn;
  }
  return cm;
}

double accuracy(const ConfusionMatrix& cm) {
  return static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
}

double f_measure(const ConfusionMatrix& cm) {
  if (cm.tp == 0) return 0.0;
  const double tp = static_cast<double>(cm.tp);
  const double precision = tp / static_cast<double>(cm.tp + cm.fp);
  const double recall = tp / static_cast<double>(cm.tp + cm.fn);
  return 2.0 * precision * recall / (precision + recall);
}

double mcc(const ConfusionMatrix& cm) {
  const double tp = static_cast<double>(cm.tp), fp = static_cast<double>(cm.fp);
  const double fn = static_cast<double>(cm.fn), tn = static_cast<double>(cm.tn);
  const double denom = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
  if (denom == 0.0) return 0.0;
  return (tp * tn - fp * fn) / std::sqrt(denom);
}

AucResult auc(std::span<const int> y_true, std::span<const double> scores) {
  if (y_true.size() != scores.size()) {
    throw Error("length_mismatch", "auc: labels and scores differ in length");
  }
  const std::size_t n = y_true.size();
  const double pos = static_cast<double>(std::count(y_true.begin(), y_true.end(), 1));
  const double neg = static_cast<double>(n) - pos;
  if (pos == 0.0 || neg == 0.0) return {0.5, true};

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  double positive_rank_sum = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double avg_rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) {
      if (y_true[order[t]] == 1) positive_rank_sum += avg_rank;
    }
    i = j + 1;
  }
  const double u = positive_rank_sum - pos * (pos + 1.0) / 2.0;
  return {u / (pos * neg), false};
}

MetricSet compute_metrics(std::span<const int> y_true, std::span<const int> y_pred,
                          std::span<const double> scores) {
  const ConfusionMatrix cm = confusion_matrix(y_true, y_pred);
  const AucResult a = auc(y_true, scores);
  MetricSet m;
  m.accuracy = accuracy(cm);
  m.f_measure = f_measure(cm);
  m.mcc = mcc(cm);
  m.auc = a.value;
  m.f_measure_degenerate = cm.tp == 0;
  m.mcc_degenerate = (cm.tp + cm.fp) == 0 || (cm.tp + cm.fn) == 0 || (cm.tn + cm.fp) == 0 || (cm.tn + cm.fn) == 0;
  m.auc_degenerate = a.degenerate;
  return m;
}

}  // namespace cgsdp
