#include "cgsdp/evaluation.hpp"

#include <algorithm>

#include "cgsdp/rng.hpp"

namespace cgsdp {

EvaluationReport cross_validate(const ClassifierSpec& spec, const Dataset& d, std::size_t k,
                                std::uint64_t seed) {
  return cross_validate(spec, d, stratified_folds(d, k, seed), seed);
}

EvaluationReport cross_validate(const ClassifierSpec& spec, const Dataset& d, const FoldPlan& plan,
                                std::uint64_t seed) {
  spec.validate();

  EvaluationReport report;
  report.dataset = d.name();
  report.model = spec.name();
  report.seed = seed;
  report.k = plan.k;
  report.predicted.assign(d.rows(), -1);
  report.positive_scores.assign(d.rows(), 0.0);

  std::vector<char> in_fold(d.rows());
  for (std::size_t f = 0; f < plan.folds.size(); ++f) {
    const auto& test = plan.folds[f];
    std::fill(in_fold.begin(), in_fold.end(), 0);
    for (std::size_t i : test) in_fold[i] = 1;
    std::vector<std::size_t> train_idx;
    train_idx.reserve(d.rows() - test.size());
    for (std::size_t i = 0; i < d.rows(); ++i) {
      if (!in_fold[i]) train_idx.push_back(i);
    }

    const TrainedModel model = fit(spec.with_seed(derive_seed(seed, f)), d.subset(train_idx));

    std::vector<int> truth, pred;
    std::vector<double> scores;
    for (std::size_t i : test) {
      const Distribution p = model.predict_proba(d.row(i));
      report.predicted[i] = argmax(p);
      report.positive_scores[i] = p[1];
      truth.push_back(d.label(i));
      pred.push_back(report.predicted[i]);
      scores.push_back(p[1]);
    }
    report.fold_metrics.push_back(compute_metrics(truth, pred, scores));
  }

  report.pooled = confusion_matrix(d.labels(), report.predicted);
  report.metrics = compute_metrics(d.labels(), report.predicted, report.positive_scores);
  return report;
}

EvaluationReport cross_validate(const CGConfig& config, const Dataset& d, std::size_t k,
                                std::uint64_t seed) {
  return cross_validate(cascade(config), d, k, seed);
}

}  // namespace cgsdp
