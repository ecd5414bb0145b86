#pragma once

#include <string>
#include <vector>

#include "cgsdp/learners.hpp"
#include "cgsdp/metrics.hpp"

namespace cgsdp {

struct EvaluationReport {
  std::string dataset;
  std::string model;
  std::uint64_t seed = 0;
  std::size_t k = 0;
  MetricSet metrics;                    // on predictions pooled over all folds
  std::vector<MetricSet> fold_metrics;  // diagnostics only
  ConfusionMatrix pooled;
  // Per-instance out-of-fold results, indexed like the dataset.
  std::vector<int> predicted;
  std::vector<double> positive_scores;
};

/// Stratified k-fold cross-validation. Fold f's model is trained on the other
/// folds with seed derive_seed(seed, f); every instance is scored exactly once
/// and the metrics are computed on the pooled predictions.
EvaluationReport cross_validate(const ClassifierSpec& spec, const Dataset& d, std::size_t k,
                                std::uint64_t seed);
/// Same, with an explicit fold plan; fold f's model seed is
/// derive_seed(model_seed, f).
EvaluationReport cross_validate(const ClassifierSpec& spec, const Dataset& d, const FoldPlan& plan,
                                std::uint64_t model_seed);
EvaluationReport cross_validate(const CGConfig& config, const Dataset& d, std::size_t k,
                                std::uint64_t seed);

}  // namespace cgsdp
