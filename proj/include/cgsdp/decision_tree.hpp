#pragma once

#include <optional>
#include <vector>

#include "cgsdp/learners.hpp"
#include "cgsdp/rng.hpp"

namespace cgsdp {

/// Extra errors C4.5 adds to `errors` observed among `n` cases: the upper
/// limit of the binomial confidence interval at level `confidence`, minus
/// the observed errors (Quinlan's addErrs).
double added_errors(double n, double errors, double confidence);

struct TreeSplit {
  std::size_t feature = 0;
  double threshold = 0.0;  // instances with value <= threshold go left
  double gain = 0.0;
  double gain_ratio = 0.0;
};

struct PruneEvent {
  std::size_t node = 0;
  double leaf_error = 0.0;     // estimated errors if collapsed
  double subtree_error = 0.0;  // estimated errors of the subtree
};

/// Binary C4.5-style tree over numeric features.
///
/// At each node the best threshold of every candidate feature is the one with
/// the largest information gain; among features whose best gain is at least
/// the mean best gain, the largest gain ratio wins. A node becomes a leaf when
/// it is pure, holds fewer than 2 * min_obj cases, or has no split with
/// positive gain that leaves min_obj cases on each side. After growth the tree
/// is pruned bottom-up by subtree replacement using pessimistic error
/// estimates. Leaves predict Laplace-smoothed class frequencies.
class DecisionTreeModel final : public Model {
 public:
  struct Node {
    int feature = -1;  // -1 for a leaf
    double threshold = 0.0;
    std::size_t left = 0;
    std::size_t right = 0;
    std::array<double, 2> counts{};
  };

  DecisionTreeModel(const Dataset& train, const DecisionTreeParams& params, std::uint64_t seed);

  Distribution predict_proba(std::span<const double> instance) const override;

  const std::vector<Node>& nodes() const { return nodes_; }
  std::size_t leaf_count() const;
  std::size_t depth() const;
  std::optional<TreeSplit> root_split() const { return root_split_; }
  const std::vector<PruneEvent>& pruning_log() const { return prune_log_; }

  /// Split selection for the cases `rows` of `d` over `features`, or nothing
  /// when no admissible split exists.
  static std::optional<TreeSplit> best_split(const Dataset& d, std::span<const std::size_t> rows,
                                             std::span<const std::size_t> features,
                                             std::size_t min_obj);

 private:
  std::size_t grow(const Dataset& d, std::vector<std::size_t>& rows, Rng& rng);
  double prune(std::size_t node);

  DecisionTreeParams params_;
  std::size_t width_;
  std::vector<Node> nodes_;
  std::optional<TreeSplit> root_split_;
  std::vector<PruneEvent> prune_log_;
};

}  // namespace cgsdp
