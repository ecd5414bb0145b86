#include "cgsdp/ensembles.hpp"

#include <cmath>
#include <numeric>

#include "cgsdp/error.hpp"

namespace cgsdp {

namespace {

// Member weight for a round without training errors.
const double kPerfectRoundWeight = std::log(1e10);
constexpr int kMaxBoostingResets = 10;

}  // namespace

EnsembleModel::EnsembleModel(std::vector<TrainedModel> members, std::vector<double> weights,
                             Combine combine, bool fallback)
    : members_(std::move(members)), weights_(std::move(weights)), combine_(combine), fallback_(fallback) {
  if (members_.empty()) throw Error("empty_ensemble", "ensemble needs at least one member");
  if (weights_.size() != members_.size()) throw Error("shape", "one weight per member expected");
  double total = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) throw Error("invalid_parameters", "member weights must be finite and >= 0");
    total += w;
  }
  if (total <= 0.0) throw Error("invalid_parameters", "member weights are all zero");
}

Distribution EnsembleModel::predict_proba(std::span<const double> instance) const {
  Distribution acc{0.0, 0.0};
  double total = 0.0;
  for (std::size_t m = 0; m < members_.size(); ++m) {
    const Distribution p = members_[m].predict_proba(instance);
    if (combine_ == Combine::Average) {
      acc[0] += weights_[m] * p[0];
      acc[1] += weights_[m] * p[1];
    } else {
      acc[argmax(p)] += weights_[m];
    }
    total += weights_[m];
  }
  return normalized({acc[0] / total, acc[1] / total});
}

std::vector<std::size_t> bootstrap_indices(const Dataset& d, Rng& rng, std::span<const double> weights,
                                           int max_attempts) {
  const std::size_t n = d.rows();
  std::vector<double> cumulative;
  if (!weights.empty()) {
    cumulative.resize(n);
    std::partial_sum(weights.begin(), weights.end(), cumulative.begin());
  }
  std::vector<std::size_t> idx(n);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::array<std::size_t, 2> seen{};
    for (auto& i : idx) {
      i = cumulative.empty() ? static_cast<std::size_t>(rng.below(n)) : rng.weighted_index(cumulative);
      ++seen[d.label(i)];
    }
    if (seen[0] > 0 && seen[1] > 0) return idx;
  }
  throw Error("bootstrap_exhausted", d.name() + ": every bootstrap sample held a single class after " +
                                         std::to_string(max_attempts) + " attempts");
}

double weighted_error(std::span<const double> weights, std::span<const bool> correct) {
  // summing the two sides separately keeps an even split exactly at 0.5
  double wrong = 0.0, right = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) (correct[i] ? right : wrong) += weights[i];
  return wrong / (wrong + right);
}

EnsembleModel bagging_fit(const ClassifierSpec& base, const Dataset& train, std::size_t members,
                          std::uint64_t seed) {
  if (members < 1) throw Error("invalid_parameters", "bagging needs at least one member");
  std::vector<TrainedModel> models;
  models.reserve(members);
  for (std::size_t m = 0; m < members; ++m) {
    const std::uint64_t member_seed = derive_seed(seed, m);
    Rng rng(member_seed);
    const auto idx = bootstrap_indices(train, rng);
    models.push_back(fit(base.with_seed(derive_seed(member_seed, "model")), train.subset(idx)));
  }
  return EnsembleModel(std::move(models), std::vector<double>(members, 1.0), EnsembleModel::Combine::Average);
}

EnsembleModel adaboost_m1_fit(const ClassifierSpec& base, const Dataset& train, std::size_t members,
                              std::uint64_t seed, std::vector<BoostingRound>* trace) {
  if (members < 1) throw Error("invalid_parameters", "boosting needs at least one member");
  const std::size_t n = train.rows();
  const std::vector<double> uniform(n, 1.0 / static_cast<double>(n));
  std::vector<double> w = uniform;
  std::vector<TrainedModel> models;
  std::vector<double> alphas;
  int resets = 0;
  Rng rng(seed);

  for (std::uint64_t round = 0; models.size() < members; ++round) {
    std::vector<std::size_t> idx;
    try {
      idx = bootstrap_indices(train, rng, w);
    } catch (const Error&) {
      break;
    }
    TrainedModel model = fit(base.with_seed(derive_seed(seed, round)), train.subset(idx));
    auto correct = std::make_unique<bool[]>(n);
    for (std::size_t i = 0; i < n; ++i) correct[i] = model.predict(train.row(i)) == train.label(i);
    const double eps = weighted_error(w, std::span<const bool>(correct.get(), n));

    if (eps == 0.0) {
      models.push_back(std::move(model));
      alphas.push_back(kPerfectRoundWeight);
      if (trace) trace->push_back({eps, false, w});
      break;
    }
    if (eps >= 0.5) {
      w = uniform;
      if (trace) trace->push_back({eps, true, w});
      if (++resets > kMaxBoostingResets) break;
      continue;
    }
    const double beta = eps / (1.0 - eps);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (correct[i]) w[i] *= beta;
      total += w[i];
    }
    for (double& x : w) x /= total;
    models.push_back(std::move(model));
    alphas.push_back(std::log(1.0 / beta));
    if (trace) trace->push_back({eps, false, w});
  }

  if (models.empty()) {
    return EnsembleModel({fit(base.with_seed(derive_seed(seed, "fallback")), train)}, {1.0},
                         EnsembleModel::Combine::Average, true);
  }
  return EnsembleModel(std::move(models), std::move(alphas), EnsembleModel::Combine::WeightedVote);
}

std::size_t default_forest_features(std::size_t p) {
  std::size_t log2p = 0;
  while ((std::size_t{1} << (log2p + 1)) <= p) ++log2p;
  return log2p + 1;
}

EnsembleModel random_forest_fit(const Dataset& train, std::size_t trees, std::uint64_t seed,
                                std::size_t features_per_node) {
  if (trees < 1) throw Error("invalid_parameters", "forest needs at least one tree");
  DecisionTreeParams tree;
  tree.min_obj = 1;
  tree.prune = false;
  tree.features_per_node = features_per_node == 0 ? default_forest_features(train.cols()) : features_per_node;
  const ClassifierSpec tree_spec = decision_tree(tree);

  std::vector<TrainedModel> models;
  models.reserve(trees);
  for (std::size_t t = 0; t < trees; ++t) {
    const std::uint64_t tree_seed = derive_seed(seed, t);
    Rng rng(tree_seed);
    const auto idx = bootstrap_indices(train, rng);
    models.push_back(fit(tree_spec.with_seed(derive_seed(tree_seed, "model")), train.subset(idx)));
  }
  return EnsembleModel(std::move(models), std::vector<double>(trees, 1.0), EnsembleModel::Combine::Average);
}

}  // namespace cgsdp
