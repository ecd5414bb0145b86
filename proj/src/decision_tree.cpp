#include "cgsdp/decision_tree.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <numeric>

#include "cgsdp/error.hpp"

namespace cgsdp {

namespace {

constexpr double kMinGain = 1e-12;

double entropy(double a, double b) {
  const double n = a + b;
  double h = 0.0;
  if (a > 0) h -= a / n * std::log2(a / n);
  if (b > 0) h -= b / n * std::log2(b / n);
  return h;
}

}  // namespace

double added_errors(double n, double errors, double confidence) {
  if (confidence <= 0.0 || confidence > 0.5) {
    throw Error("invalid_parameters", "pruning confidence must lie in (0, 0.5]");
  }
  if (errors < 1.0) {
    const double base = n * (1.0 - std::pow(confidence, 1.0 / n));
    if (errors == 0.0) return base;
    return base + errors * (added_errors(n, 1.0, confidence) - base);
  }
  if (errors + 0.5 >= n) return std::max(n - errors, 0.0);
  const double z = boost::math::quantile(boost::math::normal(), 1.0 - confidence);
  const double f = (errors + 0.5) / n;
  const double r = (f + z * z / (2 * n) + z * std::sqrt(f / n - f * f / n + z * z / (4 * n * n))) /
                   (1 + z * z / n);
  return r * n - errors;
}

std::optional<TreeSplit> DecisionTreeModel::best_split(const Dataset& d,
                                                       std::span<const std::size_t> rows,
                                                       std::span<const std::size_t> features,
                                                       std::size_t min_obj) {
  const std::size_t n = rows.size();
  std::array<double, 2> total{};
  for (std::size_t r : rows) total[d.label(r)] += 1.0;
  const double parent = entropy(total[0], total[1]);
  const double nd = static_cast<double>(n);
  const std::size_t min_side = std::max<std::size_t>(min_obj, 1);

  std::vector<TreeSplit> per_feature;
  std::vector<std::size_t> order(rows.begin(), rows.end());
  for (std::size_t f : features) {
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double va = d.at(a, f), vb = d.at(b, f);
      return va < vb || (va == vb && a < b);
    });
    std::optional<TreeSplit> best;
    std::array<double, 2> left{};
    for (std::size_t i = 0; i + 1 < n; ++i) {
      left[d.label(order[i])] += 1.0;
      const std::size_t nl = i + 1;
      if (nl < min_side || n - nl < min_side) continue;
      const double lo = d.at(order[i], f), hi = d.at(order[i + 1], f);
      if (!(lo < hi)) continue;
      const double l = static_cast<double>(nl), r = nd - l;
      const double gain = parent - (l / nd) * entropy(left[0], left[1]) -
                          (r / nd) * entropy(total[0] - left[0], total[1] - left[1]);
      if (gain <= kMinGain) continue;
      if (!best || gain > best->gain) {
        double mid = std::midpoint(lo, hi);
        if (!(mid < hi)) mid = lo;
        const double split_info = entropy(l, r);
        best = TreeSplit{f, mid, gain, gain / split_info};
      }
    }
    if (best) per_feature.push_back(*best);
  }
  if (per_feature.empty()) return std::nullopt;

  double mean_gain = 0.0;
  for (const auto& s : per_feature) mean_gain += s.gain;
  mean_gain /= static_cast<double>(per_feature.size());

  std::optional<TreeSplit> chosen;
  for (const auto& s : per_feature) {
    if (s.gain < mean_gain - kMinGain) continue;
    if (!chosen || s.gain_ratio > chosen->gain_ratio ||
        (s.gain_ratio == chosen->gain_ratio && s.feature < chosen->feature)) {
      chosen = s;
    }
  }
  return chosen;
}

DecisionTreeModel::DecisionTreeModel(const Dataset& train, const DecisionTreeParams& params,
                                     std::uint64_t seed)
    : params_(params), width_(train.cols()) {
  std::vector<std::size_t> rows(train.rows());
  std::iota(rows.begin(), rows.end(), 0);
  Rng rng(seed);
  grow(train, rows, rng);
  if (params_.prune) prune(0);
}

std::size_t DecisionTreeModel::grow(const Dataset& d, std::vector<std::size_t>& rows, Rng& rng) {
  const std::size_t id = nodes_.size();
  nodes_.emplace_back();
  std::array<double, 2> counts{};
  for (std::size_t r : rows) counts[d.label(r)] += 1.0;
  nodes_[id].counts = counts;

  const bool pure = counts[0] == 0.0 || counts[1] == 0.0;
  if (pure || rows.size() < 2 * params_.min_obj) return id;

  std::vector<std::size_t> features(width_);
  std::iota(features.begin(), features.end(), 0);
  if (params_.features_per_node > 0 && params_.features_per_node < width_) {
    // Partial Fisher-Yates: the first m slots become a uniform sample.
    for (std::size_t i = 0; i < params_.features_per_node; ++i) {
      std::size_t j = i + static_cast<std::size_t>(rng.below(width_ - i));
      std::swap(features[i], features[j]);
    }
    features.resize(params_.features_per_node);
    std::sort(features.begin(), features.end());
  }

  auto split = best_split(d, rows, features, params_.min_obj);
  if (!split) return id;
  if (id == 0) root_split_ = split;

  std::vector<std::size_t> left, right;
  for (std::size_t r : rows) {
    (d.at(r, split->feature) <= split->threshold ? left : right).push_back(r);
  }
  rows.clear();
  rows.shrink_to_fit();

  const std::size_t l = grow(d, left, rng);
  const std::size_t r = grow(d, right, rng);
  nodes_[id].feature = static_cast<int>(split->feature);
  nodes_[id].threshold = split->threshold;
  nodes_[id].left = l;
  nodes_[id].right = r;
  return id;
}

// Returns the estimated error count of the (possibly pruned) subtree.
double DecisionTreeModel::prune(std::size_t id) {
  Node& node = nodes_[id];
  const double n = node.counts[0] + node.counts[1];
  const double leaf_errors = n - std::max(node.counts[0], node.counts[1]);
  const double as_leaf = leaf_errors + added_errors(n, leaf_errors, params_.confidence);
  if (node.feature < 0) return as_leaf;

  const double subtree = prune(node.left) + prune(node.right);
  if (as_leaf <= subtree) {
    prune_log_.push_back({id, as_leaf, subtree});
    nodes_[id].feature = -1;
    return as_leaf;
  }
  return subtree;
}

Distribution DecisionTreeModel::predict_proba(std::span<const double> instance) const {
  std::size_t id = 0;
  while (nodes_[id].feature >= 0) {
    const Node& n = nodes_[id];
    id = instance[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
  }
  const auto& c = nodes_[id].counts;
  const double total = c[0] + c[1] + 2.0;
  return {(c[0] + 1.0) / total, (c[1] + 1.0) / total};
}

std::size_t DecisionTreeModel::leaf_count() const {
  std::size_t leaves = 0;
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    const Node& n = nodes_[stack.back()];
    stack.pop_back();
    if (n.feature < 0) {
      ++leaves;
    } else {
      stack.push_back(n.left);
      stack.push_back(n.right);
    }
  }
  return leaves;
}

std::size_t DecisionTreeModel::depth() const {
  std::size_t deepest = 0;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [id, depth] = stack.back();
    stack.pop_back();
    deepest = std::max(deepest, depth);
    if (nodes_[id].feature >= 0) {
      stack.push_back({nodes_[id].left, depth + 1});
      stack.push_back({nodes_[id].right, depth + 1});
    }
  }
  return deepest;
}

}  // namespace cgsdp
