#include "cgsdp/cascade.hpp"

#include "cgsdp/error.hpp"
#include "cgsdp/rng.hpp"

namespace cgsdp {

std::vector<double> extend_instance(std::span<const double> current, bool current_has_original,
                                    const Distribution& p, const ExtensionRule& rule) {
  const std::size_t prob_start = current_has_original ? rule.original_width : 0;
  std::vector<double> out;
  out.reserve(current.size() + 2);
  if (rule.keep_original && current_has_original) {
    out.insert(out.end(), current.begin(), current.begin() + static_cast<std::ptrdiff_t>(prob_start));
  }
  if (rule.concatenate_predictions) {
    out.insert(out.end(), current.begin() + static_cast<std::ptrdiff_t>(prob_start), current.end());
  }
  out.push_back(p[0]);
  out.push_back(p[1]);
  return out;
}

ExtendedDataset extend_dataset(const TrainedModel& model, const Dataset& d, bool keep_original) {
  return extend_dataset(model, ExtendedDataset{d, d.cols(), true, {}}, keep_original, true);
}

ExtendedDataset extend_dataset(const TrainedModel& model, const ExtendedDataset& d, bool keep_original,
                               bool concatenate_predictions) {
  const Dataset& src = d.data;
  if (model.width() != src.cols()) {
    throw Error("width_mismatch", "model expects " + std::to_string(model.width()) +
                                      " columns, dataset has " + std::to_string(src.cols()));
  }
  const ExtensionRule rule{d.original_width, keep_original, concatenate_predictions};
  const std::size_t prob_start = d.has_original ? d.original_width : 0;

  const std::string level = "L" + std::to_string(d.levels() + 1) + "." + model.spec().name();
  std::vector<std::string> names;
  const auto& old = src.feature_names();
  if (keep_original && d.has_original) names.insert(names.end(), old.begin(), old.begin() + static_cast<std::ptrdiff_t>(prob_start));
  if (concatenate_predictions) names.insert(names.end(), old.begin() + static_cast<std::ptrdiff_t>(prob_start), old.end());
  names.push_back(level + ".p(" + src.class_names()[0] + ")");
  names.push_back(level + ".p(" + src.class_names()[1] + ")");

  std::vector<double> values;
  values.reserve(src.rows() * names.size());
  for (std::size_t i = 0; i < src.rows(); ++i) {
    const auto row = extend_instance(src.row(i), d.has_original, model.predict_proba(src.row(i)), rule);
    values.insert(values.end(), row.begin(), row.end());
  }

  ExtendedDataset out{Dataset(src.name(), std::move(names), std::move(values), src.labels(), src.class_names()),
                      d.original_width, keep_original && d.has_original, d.provenance};
  out.provenance.push_back(model.spec().name());
  return out;
}

CGModel::CGModel(std::vector<TrainedModel> bases, TrainedModel meta, CGConfig config, std::size_t width)
    : bases_(std::move(bases)), meta_(std::move(meta)), config_(std::move(config)), width_(width) {
  if (bases_.size() != config_.bases.size()) {
    throw Error("shape", "cascade needs one fitted model per base spec");
  }
}

std::vector<double> CGModel::extended_instance(std::span<const double> instance) const {
  const ExtensionRule rule{width_, config_.keep_original, config_.concatenate_predictions};
  std::vector<double> current(instance.begin(), instance.end());
  bool has_original = true;
  for (const auto& base : bases_) {
    current = extend_instance(current, has_original, base.predict_proba(current), rule);
    has_original = has_original && rule.keep_original;
  }
  return current;
}

Distribution CGModel::predict_proba(std::span<const double> instance) const {
  return meta_.predict_proba(extended_instance(instance));
}

CGModel cg_fit(const CGConfig& config, const Dataset& train, ExtendedDataset* meta_training) {
  config.validate();
  ExtendedDataset current{train, train.cols(), true, {}};
  std::vector<TrainedModel> bases;
  for (std::size_t j = 0; j < config.bases.size(); ++j) {
    bases.push_back(fit(config.bases[j].with_seed(derive_seed(config.seed, j)), current.data));
    current = extend_dataset(bases.back(), current, config.keep_original, config.concatenate_predictions);
  }
  TrainedModel meta = fit(config.meta->with_seed(derive_seed(config.seed, "meta")), current.data);
  if (meta_training) *meta_training = current;
  return CGModel(std::move(bases), std::move(meta), config, train.cols());
}

Distribution cg_predict_proba(const CGModel& model, std::span<const double> instance) {
  if (instance.size() != model.width()) {
    throw Error("width_mismatch", "cascade expects " + std::to_string(model.width()) + " columns, got " +
                                      std::to_string(instance.size()));
  }
  return model.predict_proba(instance);
}

}  // namespace cgsdp
