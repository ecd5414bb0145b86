#pragma once

#include <vector>

#include "cgsdp/learners.hpp"

namespace cgsdp {

/// Naive Bayes with a per-class, per-feature Gaussian kernel density
/// estimate. The bandwidth follows Silverman's rule,
/// h = max(1.06 * sd * n^(-1/5), min_bandwidth), with sd the sample standard
/// deviation of the class's values for that feature and n the class count.
/// Priors are Laplace smoothed. Features constant over the whole training
/// set are skipped since they contribute a class-independent factor.
class NaiveBayesModel final : public Model {
 public:
  NaiveBayesModel(const Dataset& train, const NaiveBayesParams& params);

  Distribution predict_proba(std::span<const double> instance) const override;

  /// Log of the kernel density estimate for one class and feature.
  double log_density(int cls, std::size_t feature, double value) const;
  double bandwidth(int cls, std::size_t feature) const { return bandwidth_[cls][feature]; }
  double log_prior(int cls) const { return log_prior_[cls]; }

 private:
  std::size_t width_;
  std::array<double, 2> log_prior_{};
  std::array<std::vector<std::vector<double>>, 2> values_;  // [class][feature] sorted
  std::array<std::vector<double>, 2> bandwidth_;
  std::vector<bool> used_;
};

}  // namespace cgsdp
