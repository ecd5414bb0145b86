#include <filesystem>
#include <numeric>

#include "cgsdp/dataset.hpp"
#include "cgsdp/ensembles.hpp"
#include "cgsdp/error.hpp"
#include "doctest.h"

using namespace cgsdp;

namespace {

const std::filesystem::path kData = CGSDP_TEST_DATA;

// Always predicts a fixed distribution.
class Constant final : public Model {
 public:
  explicit Constant(Distribution p) : p_(p) {}
  Distribution predict_proba(std::span<const double>) const override { return p_; }

 private:
  Distribution p_;
};

TrainedModel constant(Distribution p) { return TrainedModel(std::make_shared<Constant>(p), knn(1), 1); }

Dataset separable() {
  std::vector<double> v;
  std::vector<int> y;
  for (int i = 0; i < 20; ++i) {
    v.push_back(i < 10 ? i : i + 20);
    y.push_back(i < 10 ? 0 : 1);
  }
  return Dataset("sep", {"x"}, v, y);
}

}  // namespace

TEST_CASE("weighted error hand sums") {
  const std::vector<double> w{0.1, 0.2, 0.3, 0.4};
  const bool correct[] = {true, true, false, false};
  CHECK(weighted_error(w, correct) == doctest::Approx(0.7).epsilon(1e-12));
  const std::vector<double> raw{1, 2, 3, 4};
  CHECK(weighted_error(raw, correct) == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("ensemble combination rules") {
  const std::vector<double> x{0.0};
  EnsembleModel same({constant({0.3, 0.7}), constant({0.3, 0.7}), constant({0.3, 0.7})}, {1, 1, 1},
                     EnsembleModel::Combine::Average);
  CHECK(same.predict_proba(x)[1] == doctest::Approx(0.7).epsilon(1e-12));

  EnsembleModel vote({constant({0.9, 0.1}), constant({0.2, 0.8})}, {1.5, 1.5}, EnsembleModel::Combine::WeightedVote);
  const auto p = vote.predict_proba(x);
  CHECK(p == Distribution{0.5, 0.5});
  CHECK(argmax(p) == 0);

  EnsembleModel heavier({constant({0.9, 0.1}), constant({0.2, 0.8})}, {1.0, 3.0}, EnsembleModel::Combine::WeightedVote);
  CHECK(heavier.predict_proba(x)[1] == doctest::Approx(0.75));
}

TEST_CASE("bagging is deterministic for a seed") {
  const auto d = load_dataset(kData / "SYNA.arff");
  const auto a = fit(bagging(decision_tree(), 10, 77), d);
  const auto b = fit(bagging(decision_tree(), 10, 77), d);
  const auto c = fit(bagging(decision_tree(), 10, 78), d);
  bool differs = false;
  for (std::size_t i = 0; i < d.rows(); ++i) {
    CHECK(a.predict_proba(d.row(i)) == b.predict_proba(d.row(i)));
    differs = differs || a.predict_proba(d.row(i)) != c.predict_proba(d.row(i));
  }
  CHECK(differs);
}

TEST_CASE("bootstrap draws never return a single class") {
  const auto d = load_dataset(kData / "SYNC.arff");
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const auto idx = bootstrap_indices(d, rng);
    CHECK(idx.size() == d.rows());
    std::size_t pos = 0;
    for (auto i : idx) pos += d.label(i);
    CHECK(pos > 0);
    CHECK(pos < idx.size());
  }
  // all weight on one row: every draw is single-class
  std::vector<double> w(d.rows(), 0.0);
  w[5] = 1.0;
  CHECK_THROWS_AS(bootstrap_indices(d, rng, w, 5), Error);
}

TEST_CASE("boosting stops after a perfect round") {
  const auto d = separable();
  DecisionTreeParams tp;
  tp.min_obj = 1;
  std::vector<BoostingRound> trace;
  const auto m = adaboost_m1_fit(decision_tree(tp), d, 10, 5, &trace);
  CHECK(m.members().size() == 1);
  CHECK(trace.size() == 1);
  CHECK(trace[0].error == 0.0);
  for (std::size_t i = 0; i < d.rows(); ++i) {
    CHECK(argmax(m.predict_proba(d.row(i))) == m.members()[0].predict(d.row(i)));
    CHECK(argmax(m.predict_proba(d.row(i))) == d.label(i));
  }
}

TEST_CASE("boosting weights stay normalized") {
  const auto d = load_dataset(kData / "SYNB.arff");
  std::vector<BoostingRound> trace;
  const auto m = adaboost_m1_fit(naive_bayes(), d, 10, 11, &trace);
  CHECK_FALSE(m.fallback());
  CHECK(m.members().size() == m.weights().size());
  for (const auto& r : trace) {
    const double s = std::accumulate(r.weights_after.begin(), r.weights_after.end(), 0.0);
    CHECK(s == doctest::Approx(1.0).epsilon(1e-9));
    if (!r.discarded) CHECK(r.error < 0.5);
  }
  for (double a : m.weights()) CHECK(a > 0);
}

TEST_CASE("boosting falls back when every round is no better than chance") {
  // A single-leaf tree on balanced data always has uniform-weight error 0.5.
  std::vector<double> v;
  std::vector<int> y;
  for (int i = 0; i < 12; ++i) {
    v.push_back(i % 3);
    y.push_back(i % 2);
  }
  const Dataset d("flat", {"x"}, v, y);
  DecisionTreeParams stump;
  stump.min_obj = 100;
  std::vector<BoostingRound> trace;
  const auto m = adaboost_m1_fit(decision_tree(stump), d, 10, 1, &trace);
  CHECK(m.fallback());
  CHECK(m.members().size() == 1);
  CHECK(trace.size() == 11);
  for (const auto& r : trace) CHECK(r.discarded);
}

TEST_CASE("forest feature counts") {
  CHECK(default_forest_features(1) == 1);
  CHECK(default_forest_features(2) == 2);
  CHECK(default_forest_features(37) == 6);
  CHECK(default_forest_features(39) == 6);
  CHECK(default_forest_features(64) == 7);

  std::vector<double> v;
  std::vector<int> y;
  for (int i = 0; i < 30; ++i) {
    v.push_back(i);
    y.push_back(i >= 15);
  }
  const Dataset one("one", {"x"}, v, y);
  const auto rf = random_forest_fit(one, 5, 2);
  CHECK(rf.members().size() == 5);
  // every leaf is pure; Laplace smoothing keeps it short of 1
  CHECK(rf.predict_proba(std::vector<double>{0.0})[0] > 0.9);
  CHECK(rf.predict_proba(std::vector<double>{29.0})[1] > 0.9);
}

TEST_CASE("forest is deterministic and averages members") {
  const auto d = load_dataset(kData / "SYNC.arff");
  const auto a = random_forest_fit(d, 7, 4);
  const auto b = random_forest_fit(d, 7, 4);
  for (std::size_t i = 0; i < d.rows(); i += 7) {
    const auto pa = a.predict_proba(d.row(i));
    CHECK(pa == b.predict_proba(d.row(i)));
    double mean = 0;
    for (const auto& m : a.members()) mean += m.predict_proba(d.row(i))[1];
    CHECK(pa[1] == doctest::Approx(mean / 7).epsilon(1e-12));
  }
}
