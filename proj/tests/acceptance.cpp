// Acceptance checks, one PASS/FAIL/SKIP line per criterion.
//
//   cgsdp_acceptance                  criteria that need no external data
//   cgsdp_acceptance --corpus DIR     criteria that need the NASA corpus;
//                                     exits 77 when DIR lacks the files

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <numeric>
#include <string>

#include "cgsdp/cascade.hpp"
#include "cgsdp/decision_tree.hpp"
#include "cgsdp/error.hpp"
#include "cgsdp/experiment.hpp"
#include "cgsdp/knn.hpp"
#include "cgsdp/metrics.hpp"
#include "cgsdp/naive_bayes.hpp"
#include "cgsdp/rng.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace cgsdp;
namespace fs = std::filesystem;

namespace {

const fs::path kData = CGSDP_TEST_DATA;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& check) {
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  if (!o.ok) ++failures;
  std::printf("%s criterion %d: %s%s%s\n", o.ok ? "PASS" : "FAIL", id, title.c_str(), o.detail.empty() ? "" : " -- ",
              o.detail.c_str());
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Dataset make(const std::vector<std::vector<double>>& x, const std::vector<int>& y) {
  std::vector<std::string> names;
  for (std::size_t j = 0; j < x.front().size(); ++j) names.push_back("f" + std::to_string(j));
  std::vector<double> v;
  for (const auto& r : x) v.insert(v.end(), r.begin(), r.end());
  return Dataset("t", names, v, y);
}

// ---- criteria that always run ----

Outcome metric_oracles() {
  Outcome o;
  const std::vector<std::pair<ConfusionMatrix, std::array<double, 3>>> hand{
      {{2, 0, 0, 2}, {1.0, 1.0, 1.0}},
      {{2, 1, 3, 4}, {0.6, 0.5, 5.0 / std::sqrt(3.0 * 5 * 5 * 7)}},
      {{0, 5, 5, 0}, {0.0, 0.0, -1.0}},
      {{0, 3, 4, 3}, {0.3, 0.0, -12.0 / std::sqrt(3.0 * 4 * 6 * 7)}},
      {{3, 1, 2, 4}, {0.7, 2.0 / 3, 10 / std::sqrt(600.0)}},
      {{1, 1, 1, 1}, {0.5, 0.5, 0.0}},
      {{5, 0, 0, 0}, {1.0, 1.0, 0.0}},
      {{0, 0, 0, 5}, {1.0, 0.0, 0.0}},
      {{4, 0, 4, 0}, {0.5, 2.0 / 3, 0.0}},
      {{1, 0, 0, 9}, {1.0, 1.0, 1.0}},
      {{6, 2, 1, 11}, {0.85, 0.8, 64.0 / std::sqrt(8.0 * 7 * 13 * 12)}},
      {{10, 10, 10, 10}, {0.5, 0.5, 0.0}},
  };
  for (const auto& [cm, want] : hand) {
    const auto tag = fmt("(%zu,%zu,%zu,%zu)", cm.tp, cm.fp, cm.fn, cm.tn);
    o.require(std::abs(accuracy(cm) - want[0]) <= 1e-12, "accuracy " + tag);
    o.require(std::abs(f_measure(cm) - want[1]) <= 1e-12, "f-measure " + tag);
    o.require(std::abs(mcc(cm) - want[2]) <= 1e-12, "mcc " + tag);
  }
  Rng rng(31337);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 2 + rng.below(99);
    std::vector<int> y(n);
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = static_cast<int>(rng.below(2));
      s[i] = t % 3 == 0 ? static_cast<double>(rng.below(7)) : rng.unit();
    }
    y[0] = 0;
    y[1] = 1;
    rng.shuffle(y);
    const double diff = std::abs(auc(y, s).value - oracle::pairwise_auc(y, s));
    o.require(diff <= 1e-9, fmt("auc trial %d differs by %g", t, diff));
  }
  if (o.ok) o.detail = "12 confusion matrices, 1000 random AUC inputs";
  return o;
}

Outcome cascade_mechanics() {
  Outcome o;
  Rng rng(404);
  for (int t = 0; t < 500; ++t) {
    const std::size_t p = 1 + rng.below(8);
    std::vector<double> x(p);
    for (auto& v : x) v = rng.unit() * 1000 - 500;
    const double a = rng.unit();
    const bool keep = rng.below(2) == 1;
    const auto row = extend_instance(x, true, {a, 1 - a}, {p, keep, true});
    o.require(row.size() == (keep ? p + 2 : 2), "extended width");
    o.require(std::abs(row[row.size() - 2] + row.back() - 1.0) <= 1e-12, "appended pair sums to 1");
    o.require(!keep || std::equal(x.begin(), x.end(), row.begin()), "original columns copied");
  }
  const std::vector<ClassifierSpec> bases{naive_bayes(),         decision_tree(),
                                          knn(1),                knn(5),
                                          bagging(knn(1), 3, 1), boosting(decision_tree(), 3, 2),
                                          random_forest(5, 3)};
  std::size_t pairs = 0;
  for (const char* name : {"SYNA", "SYNB", "SYNC"}) {
    const auto d = load_dataset(kData / (std::string(name) + ".arff"));
    for (const auto& base : bases) {
      for (bool keep : {true, false}) {
        CGConfig cfg({base, naive_bayes(), decision_tree()}, 5, 21);
        cfg.keep_original = keep;
        ExtendedDataset meta{d, d.cols(), true, {}};
        const auto model = cg_fit(cfg, d, &meta);
        o.require(meta.data.cols() == (keep ? d.cols() + 6 : 6), "meta width " + base.name());
        for (std::size_t i = 0; i < d.rows(); ++i) {
          const auto ext = model.extended_instance(d.row(i));
          o.require(ext.size() == meta.data.cols() && std::equal(ext.begin(), ext.end(), meta.data.row(i).begin()),
                    fmt("%s/%s row %zu: predict-time extension differs", name, base.name().c_str(), i));
          for (std::size_t c = ext.size() - 6; c < ext.size(); c += 2) {
            o.require(ext[c] >= 0 && ext[c + 1] >= 0 && std::abs(ext[c] + ext[c + 1] - 1) <= 1e-12,
                      "appended probabilities normalized");
          }
          ++pairs;
        }
      }
    }
  }
  if (o.ok) o.detail = fmt("%zu train/predict row pairs identical", pairs);
  return o;
}

Outcome learner_oracles() {
  Outcome o;
  Rng rng(55);
  std::size_t queries = 0;
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 2 + rng.below(49), p = 1 + rng.below(2);
    std::vector<std::vector<double>> x(n, std::vector<double>(p));
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (auto& v : x[i]) v = static_cast<double>(rng.below(8));
      y[i] = static_cast<int>(rng.below(2));
    }
    y[0] = 0;
    y[1] = 1;
    // pin every axis to the range [0, 7]; the oracle rescales the same way
    for (std::size_t j = 0; j < p; ++j) {
      x[0][j] = 0;
      x[1][j] = 7;
    }
    auto unit = [](std::vector<double> r) {
      for (auto& v : r) v = v / 7;
      return r;
    };
    std::vector<std::vector<double>> ux;
    for (const auto& r : x) ux.push_back(unit(r));
    const auto m = fit(knn(1), make(x, y));
    for (int q = 0; q < 25; ++q) {
      std::vector<double> query(p);
      for (auto& v : query) v = static_cast<double>(rng.below(15)) / 2;
      const auto want = oracle::nearest(ux, unit(query));
      o.require(m.as<KnnModel>()->neighbours(query).front() == want && m.predict(query) == y[want],
                fmt("1-NN trial %d query %d", t, q));
      ++queries;
    }
  }
  std::size_t splits = 0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 2 + rng.below(7), p = 1 + rng.below(3);
    std::vector<std::vector<double>> x(n, std::vector<double>(p));
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (auto& v : x[i]) v = static_cast<double>(rng.below(5));
      y[i] = static_cast<int>(rng.below(2));
    }
    y[0] = 0;
    y[1] = 1;
    const auto d = make(x, y);
    std::vector<std::size_t> rows(n), feats(p);
    std::iota(rows.begin(), rows.end(), 0);
    std::iota(feats.begin(), feats.end(), 0);
    const auto got = DecisionTreeModel::best_split(d, rows, feats, 1);
    const auto want = oracle::best_split(x, y, 1);
    o.require(got.has_value() == want.has_value(), fmt("split existence, trial %d", t));
    if (got && want) {
      ++splits;
      o.require(got->feature == want->feature && got->threshold == want->threshold &&
                    std::abs(got->gain_ratio - want->ratio) <= 1e-12,
                fmt("split choice, trial %d", t));
      // the grown tree's root must be the same split
      DecisionTreeParams tp;
      tp.min_obj = 1;
      tp.prune = false;
      const auto tree = fit(decision_tree(tp), d);
      const auto root = tree.as<DecisionTreeModel>()->root_split();
      o.require(root && root->feature == want->feature && root->threshold == want->threshold,
                fmt("tree root, trial %d", t));
    }
  }
  const auto nb = fit(naive_bayes(), make({{0.0}, {0.1}, {1.0}, {1.1}}, {0, 0, 1, 1}));
  const double f0 = oracle::kernel_density({0.0, 0.1}, 0.05), f1 = oracle::kernel_density({1.0, 1.1}, 0.05);
  const auto post = nb.predict_proba(std::vector<double>{0.05});
  o.require(std::abs(post[0] - f0 / (f0 + f1)) <= 1e-9 && post[0] > 0.99, "NB four-point posterior");
  o.require(std::abs(std::exp(nb.as<NaiveBayesModel>()->log_density(0, 0, 0.05)) - f0) <= 1e-9 * f0,
            "NB class-0 density");
  if (o.ok) o.detail = fmt("%zu 1-NN queries, %zu enumerated splits, NB posterior %.12f", queries, splits, post[0]);
  return o;
}

// Runs scenarios 1 and 2 twice into separate directories and compares bytes.
Outcome determinism(ExperimentConfig c, const std::string& tag) {
  Outcome o;
  const auto corpus = load_corpus(c);
  c.output_dir = testing::scratch(tag + "_a");
  const auto a = emit_reports(run_experiment(c, corpus), c, corpus);
  c.output_dir = testing::scratch(tag + "_b");
  c.threads = 1;
  const auto b = emit_reports(run_experiment(c, corpus), c, corpus);
  o.require(a.size() == b.size(), "different file sets");
  std::size_t compared = 0;
  for (std::size_t i = 0; i < a.size() && o.ok; ++i) {
    const auto ext = a[i].extension();
    if (ext != ".csv" && ext != ".json") continue;
    o.require(testing::slurp(a[i]) == testing::slurp(b[i]), a[i].filename().string() + " differs");
    ++compared;
  }
  if (o.ok) o.detail = fmt("%zu CSV/JSON files byte-identical (%zu datasets)", compared, c.datasets.size());
  return o;
}

Outcome self_consistency(const fs::path& dir) {
  Outcome o;
  std::size_t tables = 0, boxes = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (entry.path().extension() != ".csv" || name.rfind("scenario", 0) != 0) continue;
    const auto rows = testing::read_csv(entry.path());
    if (name.find("_boxplot") != std::string::npos) {
      for (std::size_t r = 1; r < rows.size(); ++r) {
        for (std::size_t k = 2; k < rows[r].size(); ++k) {
          o.require(std::stod(rows[r][k - 1]) <= std::stod(rows[r][k]), name + " box order");
        }
      }
      ++boxes;
      continue;
    }
    if (name.find("_improvements") != std::string::npos) continue;
    o.require(rows.back()[0] == "Average", name + " lacks an Average row");
    for (std::size_t col = 1; col < rows[0].size(); ++col) {
      double sum = 0;
      for (std::size_t r = 1; r + 1 < rows.size(); ++r) sum += std::stod(rows[r][col]);
      const double mean = sum / static_cast<double>(rows.size() - 2);
      o.require(std::abs(mean - std::stod(rows.back()[col])) <= 1e-9, name + " average of " + rows[0][col]);
    }
    ++tables;
  }
  o.require(tables == 8 && boxes == 8, fmt("expected 8 tables and 8 box summaries, found %zu and %zu", tables, boxes));
  if (o.ok) o.detail = fmt("%zu tables, %zu box-plot summaries in %s", tables, boxes, dir.string().c_str());
  return o;
}

// ---- corpus criteria ----

Outcome dataset_counts(const fs::path& dir) {
  Outcome o;
  const std::map<std::string, DatasetMeta> want{
      {"CM1", {"CM1", 327, 38, 42, 285}},     {"KC1", {"KC1", 1126, 22, 294, 868}},
      {"KC3", {"KC3", 194, 40, 36, 158}},     {"MC2", {"MC2", 124, 40, 44, 80}},
      {"MW1", {"MW1", 250, 38, 25, 225}},     {"PC1", {"PC1", 679, 38, 55, 624}},
      {"PC3", {"PC3", 1053, 38, 130, 923}},   {"PC4", {"PC4", 1270, 38, 176, 1094}},
      {"PC5", {"PC5", 1694, 39, 458, 1236}},
  };
  const auto start = std::chrono::steady_clock::now();
  ExperimentConfig c;
  c.dataset_dir = dir;
  for (const auto& d : load_corpus(c)) {
    const auto got = dataset_stats(d);
    const auto& w = want.at(d.name());
    o.require(got == w, fmt("%s: got (%zu, %zu, %zu, %zu), want (%zu, %zu, %zu, %zu)", d.name().c_str(),
                            got.instances, got.attributes, got.defective, got.non_defective, w.instances,
                            w.attributes, w.defective, w.non_defective));
  }
  const double secs = seconds_since(start);
  o.require(secs < 5.0, fmt("took %.2f s", secs));
  if (o.ok) o.detail = fmt("9 rows exact in %.2f s", secs);
  return o;
}

struct Published {
  double accuracy, auc;
};

// Average rows of the published accuracy and AUC tables.
const std::map<std::string, Published> kScenario1{
    {"NB", {74.93, 0.727}}, {"CG-NB", {83.22, 0.785}}, {"DT", {80.30, 0.619}},
    {"CG-DT", {83.44, 0.780}}, {"KNN", {79.17, 0.622}}, {"CG-KNN", {83.24, 0.777}},
};
const std::map<std::string, Published> kScenario2{
    {"Bg-NB", {75.69, 0.726}},  {"Bo-NB", {75.67, 0.719}},  {"CG-NB", {83.22, 0.785}},
    {"Bg-DT", {82.86, 0.777}},  {"Bo-DT", {81.35, 0.754}},  {"CG-DT", {83.44, 0.780}},
    {"Bg-kNN", {79.58, 0.689}}, {"Bo-kNN", {79.17, 0.622}}, {"CG-kNN", {83.24, 0.777}},
};

std::string averages_line(const ScenarioResult& r, const std::map<std::string, Published>& published) {
  std::string s;
  for (const auto& m : r.models) {
    s += fmt(" %s %.2f/%.3f (published %.2f/%.3f);", m.c_str(), r.tables.at("accuracy").average_of(m),
             r.tables.at("auc").average_of(m), published.at(m).accuracy, published.at(m).auc);
  }
  return s;
}

Outcome scenario_direction(const ScenarioResult& r, const std::map<std::string, Published>& published,
                           const std::vector<std::pair<std::string, std::string>>& beats, double secs,
                           double limit) {
  Outcome o;
  const auto& acc = r.tables.at("accuracy");
  const auto& auc_t = r.tables.at("auc");
  for (const auto& [base, cg] : beats) {
    o.require(acc.average_of(cg) > acc.average_of(base),
              fmt("accuracy %s %.2f <= %s %.2f", cg.c_str(), acc.average_of(cg), base.c_str(), acc.average_of(base)));
    o.require(auc_t.average_of(cg) > auc_t.average_of(base),
              fmt("AUC %s %.3f <= %s %.3f", cg.c_str(), auc_t.average_of(cg), base.c_str(), auc_t.average_of(base)));
  }
  for (const auto& m : r.models) {
    if (m.rfind("CG-", 0) != 0) continue;
    o.require(std::abs(acc.average_of(m) - published.at(m).accuracy) <= 5.0,
              fmt("%s accuracy %.2f outside 5 points of %.2f", m.c_str(), acc.average_of(m), published.at(m).accuracy));
    o.require(std::abs(auc_t.average_of(m) - published.at(m).auc) <= 0.06,
              fmt("%s AUC %.3f outside 0.06 of %.3f", m.c_str(), auc_t.average_of(m), published.at(m).auc));
  }
  o.require(secs < limit, fmt("took %.0f s", secs));
  o.detail += (o.detail.empty() ? "" : ";") + fmt(" %.0f s;", secs) + averages_line(r, published);
  return o;
}

bool corpus_present(const fs::path& dir) {
  ExperimentConfig c;
  for (const auto& name : c.datasets) {
    if (!find_dataset_file(dir, name)) return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc == 3 && std::string(argv[1]) == "--corpus") {
    const fs::path dir = argv[2];
    if (!corpus_present(dir)) {
      std::printf("SKIP criteria 1, 4 (corpus), 6, 7: NASA corpus not found in %s\n", dir.string().c_str());
      return 77;
    }
    report(1, "dataset statistics match the published counts", [&] { return dataset_counts(dir); });

    ExperimentConfig c;
    c.dataset_dir = dir;
    const auto corpus = load_corpus(c);
    auto start = std::chrono::steady_clock::now();
    const auto s1 = run_scenario1(c, corpus);
    const double secs1 = seconds_since(start);
    report(6, "cascade beats baselines on average accuracy and AUC", [&] {
      return scenario_direction(s1, kScenario1, {{"NB", "CG-NB"}, {"DT", "CG-DT"}, {"KNN", "CG-KNN"}}, secs1, 900);
    });
    start = std::chrono::steady_clock::now();
    const auto s2 = run_scenario2(c, corpus);
    const double secs2 = seconds_since(start);
    report(7, "cascade beats bagging and boosting on average accuracy and AUC", [&] {
      return scenario_direction(s2, kScenario2,
                                {{"Bg-NB", "CG-NB"}, {"Bo-NB", "CG-NB"}, {"Bg-DT", "CG-DT"}, {"Bo-DT", "CG-DT"},
                                 {"Bg-kNN", "CG-kNN"}, {"Bo-kNN", "CG-kNN"}},
                                secs2, 900);
    });
    report(4, "two full corpus runs give byte-identical reports", [&] { return determinism(c, "acc_corpus"); });

    // the published configuration table lists 10 meta iterations; shown for reference only
    auto ten = c;
    ten.meta_trees = 10;
    const auto s10 = run_scenario1(ten, corpus);
    std::printf("INFO scenario 1 with 10 meta trees:%s\n", averages_line(s10, kScenario1).c_str());
    return failures == 0 ? 0 : 1;
  }

  report(2, "metric oracles", metric_oracles);
  report(3, "cascade mechanics", cascade_mechanics);
  ExperimentConfig c;
  c.dataset_dir = kData;
  c.datasets = {"SYNA", "SYNB", "SYNC"};
  report(4, "two full scenario 1+2 runs give byte-identical reports (synthetic data, 100 and 10 meta trees)", [&] {
    auto o = determinism(c, "acc_synth");
    auto ten = c;
    ten.meta_trees = 10;
    const auto o10 = determinism(ten, "acc_synth10");
    o.require(o10.ok, "10 meta trees: " + o10.detail);
    return o;
  });
  report(5, "brute-force learner oracles", learner_oracles);
  report(8, "report self-consistency", [&] {
    c.output_dir = testing::scratch("acc_reports");
    const auto corpus = load_corpus(c);
    emit_reports(run_experiment(c, corpus), c, corpus);
    return self_consistency(c.output_dir);
  });
  std::printf("SKIP criteria 1, 6, 7 and corpus-scale 4: see the acceptance_corpus test\n");
  return failures == 0 ? 0 : 1;
}
