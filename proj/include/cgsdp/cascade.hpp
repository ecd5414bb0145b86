#pragma once

#include <string>
#include <vector>

#include "cgsdp/learners.hpp"

namespace cgsdp {

/// A dataset whose columns are the original predictors (when kept) followed
/// by two class-probability columns per contributing base level.
struct ExtendedDataset {
  Dataset data;
  std::size_t original_width = 0;   // predictor count of the source data
  bool has_original = true;         // original columns still present
  std::vector<std::string> provenance;  // contributing models, in order

  std::size_t levels() const { return provenance.size(); }
};

/// How one base level's probabilities are folded into an instance.
struct ExtensionRule {
  std::size_t original_width = 0;
  bool keep_original = true;
  bool concatenate_predictions = true;
};

/// Appends `p` to `current` according to `rule`. `current_has_original` says
/// whether the first original_width entries of `current` are the original
/// predictors.
std::vector<double> extend_instance(std::span<const double> current, bool current_has_original,
                                    const Distribution& p, const ExtensionRule& rule);

/// Appends the model's class probabilities to every row, preserving order
/// and labels. keep_original = false drops the original predictors.
ExtendedDataset extend_dataset(const TrainedModel& model, const Dataset& d, bool keep_original = true);
ExtendedDataset extend_dataset(const TrainedModel& model, const ExtendedDataset& d,
                               bool keep_original = true, bool concatenate_predictions = true);

/// Fitted cascade: base levels in order, then the meta model.
class CGModel final : public Model {
 public:
  CGModel(std::vector<TrainedModel> bases, TrainedModel meta, CGConfig config, std::size_t width);

  Distribution predict_proba(std::span<const double> instance) const override;

  /// The instance as the meta model sees it after replaying every level.
  std::vector<double> extended_instance(std::span<const double> instance) const;

  const std::vector<TrainedModel>& bases() const { return bases_; }
  const TrainedModel& meta() const { return meta_; }
  const CGConfig& config() const { return config_; }
  std::size_t width() const { return width_; }

 private:
  std::vector<TrainedModel> bases_;
  TrainedModel meta_;
  CGConfig config_;
  std::size_t width_;
};

/// Fits each base on the current data (trained and applied in-sample),
/// extends the data with its probabilities, then fits the meta learner.
/// When `meta_training` is given it receives the meta learner's training set.
CGModel cg_fit(const CGConfig& config, const Dataset& train, ExtendedDataset* meta_training = nullptr);

Distribution cg_predict_proba(const CGModel& model, std::span<const double> instance);

}  // namespace cgsdp
