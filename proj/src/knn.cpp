#include "cgsdp/knn.hpp"

#include <algorithm>
#include <limits>

namespace cgsdp {

KnnModel::KnnModel(const Dataset& train, const KnnParams& params)
    : k_(std::min(params.k, train.rows())),
      width_(train.cols()),
      lo_(train.cols(), std::numeric_limits<double>::infinity()),
      range_(train.cols(), 0.0),
      labels_(train.labels()) {
  std::vector<double> hi(width_, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < train.rows(); ++i) {
    for (std::size_t j = 0; j < width_; ++j) {
      lo_[j] = std::min(lo_[j], train.at(i, j));
      hi[j] = std::max(hi[j], train.at(i, j));
    }
  }
  for (std::size_t j = 0; j < width_; ++j) {
    if (hi[j] > lo_[j]) range_[j] = hi[j] - lo_[j];
  }
  points_.resize(train.rows() * width_);
  for (std::size_t i = 0; i < train.rows(); ++i) {
    for (std::size_t j = 0; j < width_; ++j) {
      points_[i * width_ + j] = scaled(train.at(i, j), j);
    }
  }
}

std::vector<std::size_t> KnnModel::neighbours(std::span<const double> instance) const {
  std::vector<double> q(width_);
  for (std::size_t j = 0; j < width_; ++j) q[j] = scaled(instance[j], j);

  const std::size_t n = labels_.size();
  std::vector<std::pair<double, std::size_t>> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double* p = points_.data() + i * width_;
    double d = 0.0;
    for (std::size_t j = 0; j < width_; ++j) {
      const double diff = p[j] - q[j];
      d += diff * diff;
    }
    dist[i] = {d, i};
  }
  std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k_), dist.end());
  std::vector<std::size_t> out(k_);
  for (std::size_t i = 0; i < k_; ++i) out[i] = dist[i].second;
  return out;
}

Distribution KnnModel::predict_proba(std::span<const double> instance) const {
  Distribution votes{0.0, 0.0};
  for (std::size_t i : neighbours(instance)) votes[labels_[i]] += 1.0;
  return {votes[0] / static_cast<double>(k_), votes[1] / static_cast<double>(k_)};
}

}  // namespace cgsdp
