#pragma once

#include <vector>

#include "cgsdp/learners.hpp"

namespace cgsdp {

// k-nearest neighbours, Euclidean distance over features rescaled to [0, 1]
// by the training min/max. Zero-range features contribute nothing. Ties in
// distance go to the lower training index.
class KnnModel final : public Model {
 public:
  KnnModel(const Dataset& train, const KnnParams& params);

  Distribution predict_proba(std::span<const double> instance) const override;

  /// Training rows of the k nearest neighbours, nearest first.
  std::vector<std::size_t> neighbours(std::span<const double> instance) const;

 private:
  double scaled(double v, std::size_t j) const { return range_[j] > 0 ? (v - lo_[j]) / range_[j] : 0.0; }

  std::size_t k_;
  std::size_t width_;
  std::vector<double> lo_;
  std::vector<double> range_;  // 0 for zero-range features
  std::vector<double> points_;  // normalized, row-major
  std::vector<int> labels_;
};

}  // namespace cgsdp
