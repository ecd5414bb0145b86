#pragma once

#include <array>
#include <memory>
#include <span>

#include "cgsdp/classifier_spec.hpp"
#include "cgsdp/dataset.hpp"

namespace cgsdp {

/// Class probabilities (index 1 = defective). Non-negative, sums to 1.
using Distribution = std::array<double, 2>;

/// Argmax with ties broken towards the lower class index.
inline int argmax(const Distribution& p) { return p[1] > p[0] ? 1 : 0; }

/// Fitted state behind a TrainedModel. Implementations are immutable once
/// constructed, so concurrent predictions are safe.
class Model {
 public:
  virtual ~Model() = default;
  virtual Distribution predict_proba(std::span<const double> instance) const = 0;
};

/// Shared, immutable handle to a fitted classifier plus the spec that
/// produced it.
class TrainedModel {
 public:
  TrainedModel(std::shared_ptr<const Model> impl, ClassifierSpec spec, std::size_t width)
      : impl_(std::move(impl)), spec_(std::move(spec)), width_(width) {}

  /// Throws Error("width_mismatch") when the instance width differs from training.
  Distribution predict_proba(std::span<const double> instance) const;
  int predict(std::span<const double> instance) const { return argmax(predict_proba(instance)); }

  const ClassifierSpec& spec() const { return spec_; }
  std::size_t width() const { return width_; }
  static constexpr std::size_t class_count() { return 2; }

  template <typename T>
  const T* as() const {
    return dynamic_cast<const T*>(impl_.get());
  }

 private:
  std::shared_ptr<const Model> impl_;
  ClassifierSpec spec_;
  std::size_t width_;
};

/// Fits any classifier kind. Deterministic for (spec, train, spec.seed).
TrainedModel fit(const ClassifierSpec& spec, const Dataset& train);

// Renormalizes to sum 1 and clamps tiny negative rounding.
Distribution normalized(Distribution p);

}  // namespace cgsdp
