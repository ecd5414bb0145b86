#pragma once

#include <vector>

#include "cgsdp/learners.hpp"
#include "cgsdp/rng.hpp"

namespace cgsdp {

/// Members plus non-negative weights. Averaging ensembles (bagging, forest)
/// return the mean member distribution; voting ensembles (boosting) return
/// the normalized weighted mass of member argmax votes.
class EnsembleModel final : public Model {
 public:
  enum class Combine { Average, WeightedVote };

  EnsembleModel(std::vector<TrainedModel> members, std::vector<double> weights, Combine combine,
                bool fallback = false);

  Distribution predict_proba(std::span<const double> instance) const override;

  const std::vector<TrainedModel>& members() const { return members_; }
  const std::vector<double>& weights() const { return weights_; }
  Combine combine() const { return combine_; }
  /// Boosting could not train a single member and returned the plain base model.
  bool fallback() const { return fallback_; }

 private:
  std::vector<TrainedModel> members_;
  std::vector<double> weights_;
  Combine combine_;
  bool fallback_;
};

/// Per-round diagnostics from AdaBoost.M1.
struct BoostingRound {
  double error = 0.0;
  bool discarded = false;
  std::vector<double> weights_after;  // instance weights after the round
};

/// Draws a bootstrap of size n; redraws single-class samples up to
/// `max_attempts` times, then throws Error("bootstrap_exhausted").
std::vector<std::size_t> bootstrap_indices(const Dataset& d, Rng& rng,
                                           std::span<const double> weights = {},
                                           int max_attempts = 100);

/// Weighted fraction of misclassified cases; weights need not be normalized.
double weighted_error(std::span<const double> weights, std::span<const bool> correct);

EnsembleModel bagging_fit(const ClassifierSpec& base, const Dataset& train, std::size_t members,
                          std::uint64_t seed);

/// AdaBoost.M1 by weighted resampling. A round with zero error keeps its
/// member at weight ln(1e10) and stops; a round with error >= 0.5 is discarded
/// and weights reset to uniform (at most 10 resets). When no member survives,
/// the unboosted base model is returned with fallback() set.
EnsembleModel adaboost_m1_fit(const ClassifierSpec& base, const Dataset& train, std::size_t members,
                              std::uint64_t seed, std::vector<BoostingRound>* trace = nullptr);

/// Unpruned trees (min leaf 1) on bootstraps, each node drawing
/// features_per_node candidate features (0 = floor(log2(P)) + 1).
EnsembleModel random_forest_fit(const Dataset& train, std::size_t trees, std::uint64_t seed,
                                std::size_t features_per_node = 0);

std::size_t default_forest_features(std::size_t p);

}  // namespace cgsdp
