#pragma once

#include <cstddef>
#include <span>

namespace cgsdp {

/// Positive class = defective = label 1.
struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const { return tp + fp + fn + tn; }
  ConfusionMatrix& operator+=(const ConfusionMatrix& o);
  bool operator==(const ConfusionMatrix&) const = default;
};

ConfusionMatrix confusion_matrix(std::span<const int> y_true, std::span<const int> y_pred);

double accuracy(const ConfusionMatrix& cm);
// 0 when tp = 0.
double f_measure(const ConfusionMatrix& cm);
// 0 when any marginal is 0.
double mcc(const ConfusionMatrix& cm);

struct AucResult {
  double value = 0.5;
  bool degenerate = false;  // a class was absent; value forced to 0.5
};

/// Mann-Whitney estimate: fraction of (positive, negative) pairs ranked
/// correctly, ties counting half. Computed from rank sums with averaged ranks.
AucResult auc(std::span<const int> y_true, std::span<const double> scores);

struct MetricSet {
  double accuracy = 0.0;
  double f_measure = 0.0;
  double auc = 0.5;
  double mcc = 0.0;
  bool f_measure_degenerate = false;
  bool mcc_degenerate = false;
  bool auc_degenerate = false;
};

MetricSet compute_metrics(std::span<const int> y_true, std::span<const int> y_pred,
                          std::span<const double> scores);

}  // namespace cgsdp
