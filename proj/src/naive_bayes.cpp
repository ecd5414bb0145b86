#include "cgsdp/naive_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cgsdp {

namespace {

// Per-feature floor on the log density; keeps far-away queries finite.
constexpr double kLogFloor = -1e250;
// Kernel terms more than this many nats below the largest one underflow.
constexpr double kWindowNats = 750.0;

}  // namespace

NaiveBayesModel::NaiveBayesModel(const Dataset& train, const NaiveBayesParams& params)
    : width_(train.cols()), used_(train.cols(), false) {
  const double n = static_cast<double>(train.rows());
  for (int c : {kNonDefective, kDefective}) {
    log_prior_[c] = std::log((static_cast<double>(train.count(c)) + 1.0) / (n + 2.0));
    values_[c].assign(width_, {});
    bandwidth_[c].assign(width_, params.min_bandwidth);
  }
  for (std::size_t i = 0; i < train.rows(); ++i) {
    for (std::size_t j = 0; j < width_; ++j) values_[train.label(i)][j].push_back(train.at(i, j));
  }
  for (std::size_t j = 0; j < width_; ++j) {
    for (std::size_t i = 1; i < train.rows(); ++i) {
      if (train.at(i, j) != train.at(0, j)) {
        used_[j] = true;
        break;
      }
    }
  }
  for (int c : {kNonDefective, kDefective}) {
    for (std::size_t j = 0; j < width_; ++j) {
      auto& v = values_[c][j];
      std::sort(v.begin(), v.end());
      const double count = static_cast<double>(v.size());
      double sd = 0.0;
      if (v.size() > 1) {
        double mean = 0.0;
        for (double x : v) mean += x;
        mean /= count;
        double ss = 0.0;
        for (double x : v) ss += (x - mean) * (x - mean);
        sd = std::sqrt(ss / (count - 1.0));
      }
      bandwidth_[c][j] = std::max(1.06 * sd * std::pow(count, -0.2), params.min_bandwidth);
    }
  }
}

double NaiveBayesModel::log_density(int cls, std::size_t feature, double value) const {
  const auto& v = values_[cls][feature];
  const double h = bandwidth_[cls][feature];
  const double log_norm = std::log(static_cast<double>(v.size())) + std::log(h) +
                          0.5 * std::log(2.0 * std::numbers::pi);

  // Nearest training value gives the largest kernel term.
  auto it = std::lower_bound(v.begin(), v.end(), value);
  double nearest = std::numeric_limits<double>::infinity();
  if (it != v.end()) nearest = std::abs(*it - value);
  if (it != v.begin()) nearest = std::min(nearest, std::abs(*std::prev(it) - value));
  const double zmin = nearest / h;
  const double top = -0.5 * zmin * zmin;
  if (!std::isfinite(top)) return kLogFloor;

  const double zlimit_sq = zmin * zmin + 2.0 * kWindowNats;
  double sum = 0.0;
  for (auto r = it; r != v.end(); ++r) {
    const double z = (*r - value) / h;
    if (z * z > zlimit_sq) break;
    sum += std::exp(-0.5 * z * z - top);
  }
  for (auto l = it; l != v.begin();) {
    --l;
    const double z = (*l - value) / h;
    if (z * z > zlimit_sq) break;
    sum += std::exp(-0.5 * z * z - top);
  }
  const double result = top + std::log(sum) - log_norm;
  return std::isfinite(result) ? std::max(result, kLogFloor) : kLogFloor;
}

Distribution NaiveBayesModel::predict_proba(std::span<const double> instance) const {
  std::array<double, 2> log_post = log_prior_;
  for (int c : {kNonDefective, kDefective}) {
    for (std::size_t j = 0; j < width_; ++j) {
      if (used_[j]) log_post[c] += log_density(c, j, instance[j]);
    }
  }
  const double m = std::max(log_post[0], log_post[1]);
  Distribution p{std::exp(log_post[0] - m), std::exp(log_post[1] - m)};
  return normalized(p);
}

}  // namespace cgsdp
