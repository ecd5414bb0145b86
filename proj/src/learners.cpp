#include "cgsdp/learners.hpp"

#include <cmath>

#include "cgsdp/cascade.hpp"
#include "cgsdp/decision_tree.hpp"
#include "cgsdp/ensembles.hpp"
#include "cgsdp/error.hpp"
#include "cgsdp/knn.hpp"
#include "cgsdp/naive_bayes.hpp"

namespace cgsdp {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const std::string& what) {
  if (!ok) throw Error("invalid_parameters", what);
}

}  // namespace

CGConfig::CGConfig() : meta(random_forest(100)) {}

CGConfig::CGConfig(std::vector<ClassifierSpec> b, std::size_t meta_trees, std::uint64_t s)
    : bases(std::move(b)), meta(random_forest(meta_trees)), seed(s) {}

std::size_t CGConfig::meta_trees() const {
  if (const auto* rf = std::get_if<RandomForestParams>(&meta->params)) return rf->trees;
  return 0;
}

void CGConfig::validate() const {
  require(!bases.empty(), "cascade needs at least one base spec");
  for (const auto& b : bases) b.validate();
  meta->validate();
}

bool CGConfig::operator==(const CGConfig& o) const {
  return bases == o.bases && meta == o.meta && keep_original == o.keep_original &&
         concatenate_predictions == o.concatenate_predictions && seed == o.seed;
}

void ClassifierSpec::validate() const {
  std::visit(overloaded{
                 [](const NaiveBayesParams& p) { require(p.min_bandwidth > 0.0, "NB bandwidth floor must be > 0"); },
                 [](const DecisionTreeParams& p) {
                   require(p.confidence > 0.0 && p.confidence <= 0.5, "DT confidence must lie in (0, 0.5]");
                   require(p.min_obj >= 1, "DT min_obj must be >= 1");
                 },
                 [](const KnnParams& p) { require(p.k >= 1, "KNN k must be >= 1"); },
                 [](const BaggingParams& p) {
                   require(p.members >= 1, "bagging needs at least one member");
                   p.base->validate();
                 },
                 [](const BoostingParams& p) {
                   require(p.members >= 1, "boosting needs at least one member");
                   p.base->validate();
                 },
                 [](const RandomForestParams& p) { require(p.trees >= 1, "forest needs at least one tree"); },
                 [](const CGConfig& c) {
                   c.validate();
                   require(c.meta_trees() >= 1 || c.meta->kind() != ClassifierKind::RandomForest,
                           "meta trees must be >= 1");
                 },
             },
             params);
}

std::string ClassifierSpec::name() const {
  return std::visit(overloaded{
                        [](const NaiveBayesParams&) -> std::string { return "NB"; },
                        [](const DecisionTreeParams&) -> std::string { return "DT"; },
                        [](const KnnParams&) -> std::string { return "KNN"; },
                        [](const BaggingParams& p) -> std::string { return "Bg-" + p.base->name(); },
                        [](const BoostingParams& p) -> std::string { return "Bo-" + p.base->name(); },
                        [](const RandomForestParams&) -> std::string { return "RF"; },
                        [](const CGConfig& c) -> std::string {
                          std::string s = "CG";
                          for (const auto& b : c.bases) s += "-" + b.name();
                          return s;
                        },
                    },
                    params);
}

ClassifierSpec ClassifierSpec::with_seed(std::uint64_t s) const {
  ClassifierSpec copy = *this;
  copy.seed = s;
  if (auto* cg = std::get_if<CGConfig>(&copy.params)) cg->seed = s;
  return copy;
}

ClassifierSpec naive_bayes(NaiveBayesParams p) { return {p, 0}; }
ClassifierSpec decision_tree(DecisionTreeParams p) { return {p, 0}; }
ClassifierSpec knn(std::size_t k) { return {KnnParams{k}, 0}; }
ClassifierSpec bagging(ClassifierSpec base, std::size_t members, std::uint64_t seed) {
  return {BaggingParams{std::move(base), members}, seed};
}
ClassifierSpec boosting(ClassifierSpec base, std::size_t members, std::uint64_t seed) {
  return {BoostingParams{std::move(base), members}, seed};
}
ClassifierSpec random_forest(std::size_t trees, std::uint64_t seed, std::size_t features_per_node) {
  return {RandomForestParams{trees, features_per_node}, seed};
}
ClassifierSpec cascade(CGConfig config) {
  const std::uint64_t seed = config.seed;
  return {std::move(config), seed};
}

Distribution normalized(Distribution p) {
  p[0] = std::max(p[0], 0.0);
  p[1] = std::max(p[1], 0.0);
  const double total = p[0] + p[1];
  if (!(total > 0.0) || !std::isfinite(total)) return {0.5, 0.5};
  p[0] /= total;
  p[1] = 1.0 - p[0];
  return p;
}

Distribution TrainedModel::predict_proba(std::span<const double> instance) const {
  if (instance.size() != width_) {
    throw Error("width_mismatch", spec_.name() + " expects " + std::to_string(width_) + " columns, got " +
                                      std::to_string(instance.size()));
  }
  return impl_->predict_proba(instance);
}

TrainedModel fit(const ClassifierSpec& spec, const Dataset& train) {
  spec.validate();
  const std::size_t width = train.cols();
  std::shared_ptr<const Model> impl = std::visit(
      overloaded{
          [&](const NaiveBayesParams& p) -> std::shared_ptr<const Model> {
            return std::make_shared<NaiveBayesModel>(train, p);
          },
          [&](const DecisionTreeParams& p) -> std::shared_ptr<const Model> {
            return std::make_shared<DecisionTreeModel>(train, p, spec.seed);
          },
          [&](const KnnParams& p) -> std::shared_ptr<const Model> {
            return std::make_shared<KnnModel>(train, p);
          },
          [&](const BaggingParams& p) -> std::shared_ptr<const Model> {
            return std::make_shared<EnsembleModel>(bagging_fit(*p.base, train, p.members, spec.seed));
          },
          [&](const BoostingParams& p) -> std::shared_ptr<const Model> {
            return std::make_shared<EnsembleModel>(adaboost_m1_fit(*p.base, train, p.members, spec.seed));
          },
          [&](const RandomForestParams& p) -> std::shared_ptr<const Model> {
            return std::make_shared<EnsembleModel>(random_forest_fit(train, p.trees, spec.seed, p.features_per_node));
          },
          [&](const CGConfig& c) -> std::shared_ptr<const Model> {
            return std::make_shared<CGModel>(cg_fit(c, train));
          },
      },
      spec.params);
  return TrainedModel(std::move(impl), spec, width);
}

}  // namespace cgsdp
