#include "cgsdp/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

#include "cgsdp/error.hpp"
#include "cgsdp/rng.hpp"
#include "json.hpp"

namespace cgsdp {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// Shortest text that parses back to the same double.
std::string exact(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

int display_decimals(const std::string& metric) { return metric == "accuracy" ? 2 : 3; }

double metric_value(const MetricSet& m, const std::string& metric) {
  if (metric == "accuracy") return 100.0 * m.accuracy;
  if (metric == "auc") return m.auc;
  if (metric == "f_measure") return m.f_measure;
  if (metric == "mcc") return m.mcc;
  throw Error("invalid_argument", "unknown metric " + metric);
}

std::string markdown_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& r : rows) width[c] = std::max(width[c], r[c].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s = "|";
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const std::string pad(width[c] - cells[c].size(), ' ');
      s += " " + (c == 0 ? cells[c] + pad : pad + cells[c]) + " |";
    }
    return s + "\n";
  };
  std::string out = line(header);
  out += "|";
  for (std::size_t c = 0; c < header.size(); ++c) {
    out += c == 0 ? " " + std::string(width[c], '-') + " |" : " " + std::string(width[c] - 1, '-') + ": |";
  }
  out += "\n";
  for (const auto& r : rows) out += line(r);
  return out;
}

std::string csv_join(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) s += ',';
    const auto& c = cells[i];
    if (c.find_first_of(",\"\n") != std::string::npos) {
      s += '"';
      for (char ch : c) {
        if (ch == '"') s += '"';
        s += ch;
      }
      s += '"';
    } else {
      s += c;
    }
  }
  return s + "\n";
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string scenario_tag(int scenario) { return "scenario" + std::to_string(scenario); }

// Runs tasks [0, n) on up to `threads` workers; rethrows the failure with the
// lowest task index so errors do not depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  if (datasets.empty()) throw Error("invalid_config", "dataset list is empty");
  if (k < 2) throw Error("invalid_config", "fold count must be >= 2");
  if (formats.empty()) throw Error("invalid_config", "at least one output format is required");
  if (meta_trees < 1) throw Error("invalid_config", "meta trees must be >= 1");
  if (ensemble_members < 1) throw Error("invalid_config", "ensemble members must be >= 1");
}

std::vector<ModelEntry> scenario1_models(const ExperimentConfig& config) {
  auto cg = [&](ClassifierSpec base) { return cascade(CGConfig({std::move(base)}, config.meta_trees)); };
  return {
      {"NB", naive_bayes()},       {"CG-NB", cg(naive_bayes())},
      {"DT", decision_tree()},     {"CG-DT", cg(decision_tree())},
      {"KNN", knn(1)},             {"CG-KNN", cg(knn(1))},
  };
}

std::vector<ModelEntry> scenario2_models(const ExperimentConfig& config) {
  const std::size_t m = config.ensemble_members;
  auto cg = [&](ClassifierSpec base) { return cascade(CGConfig({std::move(base)}, config.meta_trees)); };
  return {
      {"Bg-NB", bagging(naive_bayes(), m)},  {"Bo-NB", boosting(naive_bayes(), m)},  {"CG-NB", cg(naive_bayes())},
      {"Bg-DT", bagging(decision_tree(), m)}, {"Bo-DT", boosting(decision_tree(), m)}, {"CG-DT", cg(decision_tree())},
      {"Bg-kNN", bagging(knn(1), m)},        {"Bo-kNN", boosting(knn(1), m)},        {"CG-kNN", cg(knn(1))},
  };
}

std::vector<double> ResultTable::average() const {
  std::vector<double> avg(models.size(), 0.0);
  for (const auto& row : values) {
    for (std::size_t c = 0; c < models.size(); ++c) avg[c] += row[c];
  }
  for (double& a : avg) a /= static_cast<double>(values.size());
  return avg;
}

double ResultTable::at(const std::string& dataset, const std::string& model) const {
  auto r = std::find(datasets.begin(), datasets.end(), dataset);
  auto c = std::find(models.begin(), models.end(), model);
  if (r == datasets.end() || c == models.end()) {
    throw Error("invalid_argument", "no cell (" + dataset + ", " + model + ") in " + metric + " table");
  }
  return values[static_cast<std::size_t>(r - datasets.begin())][static_cast<std::size_t>(c - models.begin())];
}

double ResultTable::average_of(const std::string& model) const {
  auto c = std::find(models.begin(), models.end(), model);
  if (c == models.end()) throw Error("invalid_argument", "no column " + model + " in " + metric + " table");
  return average()[static_cast<std::size_t>(c - models.begin())];
}

BoxPlotStats five_number_summary(std::vector<double> v) {
  if (v.empty()) throw Error("invalid_argument", "box plot of an empty column");
  std::sort(v.begin(), v.end());
  auto median = [](const double* first, std::size_t n) {
    return n % 2 ? first[n / 2] : (first[n / 2 - 1] + first[n / 2]) / 2.0;
  };
  const std::size_t n = v.size();
  BoxPlotStats s;
  s.min = v.front();
  s.max = v.back();
  s.median = median(v.data(), n);
  if (n == 1) {
    s.q1 = s.q3 = v[0];
  } else {
    const std::size_t half = n / 2;
    s.q1 = median(v.data(), half);
    s.q3 = median(v.data() + (n - half), half);
  }
  return s;
}

BoxPlotSummary compute_boxplot_summary(const ResultTable& table) {
  BoxPlotSummary summary{table.metric, table.models, {}};
  for (std::size_t c = 0; c < table.models.size(); ++c) {
    std::vector<double> column;
    for (const auto& row : table.values) column.push_back(row[c]);
    summary.stats.push_back(five_number_summary(std::move(column)));
  }
  return summary;
}

double improvement_percent(double from, double to) { return 100.0 * (to - from) / from; }

std::optional<std::filesystem::path> find_dataset_file(const std::filesystem::path& dir, const std::string& name) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) return std::nullopt;
  std::vector<std::filesystem::path> hits;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file()) continue;
    const auto& p = entry.path();
    const std::string ext = lower(p.extension().string());
    if ((ext == ".arff" || ext == ".csv") && lower(p.stem().string()) == lower(name)) hits.push_back(p);
  }
  if (hits.empty()) return std::nullopt;
  // Prefer ARFF, then lexicographic order, so the choice is stable.
  std::sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) {
    const bool aa = lower(a.extension().string()) == ".arff", ba = lower(b.extension().string()) == ".arff";
    return aa != ba ? aa : a < b;
  });
  return hits.front();
}

std::vector<Dataset> load_corpus(const ExperimentConfig& config) {
  config.validate();
  std::vector<std::filesystem::path> files;
  std::vector<std::string> missing;
  for (const auto& name : config.datasets) {
    auto f = find_dataset_file(config.dataset_dir, name);
    if (f) {
      files.push_back(*f);
    } else {
      missing.push_back(name);
    }
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m + "(.arff|.csv)";
    throw Error("missing_dataset", "missing dataset files in " + config.dataset_dir.string() + ": " + list);
  }
  std::vector<Dataset> corpus;
  for (std::size_t i = 0; i < files.size(); ++i) {
    Dataset d = load_dataset(files[i]);
    // Report under the configured name, whatever the file's capitalization.
    corpus.emplace_back(config.datasets[i], d.feature_names(), d.values(), d.labels(), d.class_names());
  }
  return corpus;
}

ScenarioResult run_scenario(int scenario, const std::vector<ModelEntry>& models,
                            const std::vector<std::pair<std::string, std::string>>& improvement_pairs,
                            const std::vector<Dataset>& corpus, const ExperimentConfig& config,
                            EvaluationCache* cache) {
  config.validate();
  ScenarioResult result;
  result.scenario = scenario;
  for (const auto& d : corpus) result.datasets.push_back(d.name());
  for (const auto& m : models) result.models.push_back(m.name);

  const std::size_t cells = corpus.size() * models.size();
  result.reports.resize(cells);
  std::vector<char> cached(cells, 0);
  if (cache) {
    for (std::size_t i = 0; i < cells; ++i) {
      auto it = cache->find({corpus[i / models.size()].name(), models[i % models.size()].spec.name()});
      if (it != cache->end()) {
        result.reports[i] = it->second;
        cached[i] = 1;
      }
    }
  }

  std::vector<FoldPlan> plans;
  for (const auto& d : corpus) plans.push_back(stratified_folds(d, config.k, derive_seed(config.seed, d.name())));

  parallel_for(cells, config.threads, [&](std::size_t i) {
    if (cached[i]) return;
    const std::size_t di = i / models.size();
    const ModelEntry& m = models[i % models.size()];
    const Dataset& d = corpus[di];
    const std::uint64_t cell_seed = derive_seed(derive_seed(config.seed, d.name()), m.spec.name());
    result.reports[i] = cross_validate(m.spec, d, plans[di], cell_seed);
  });
  for (std::size_t i = 0; i < cells; ++i) {
    result.reports[i].model = models[i % models.size()].name;
    if (cache && !cached[i]) {
      (*cache)[{corpus[i / models.size()].name(), models[i % models.size()].spec.name()}] = result.reports[i];
    }
  }

  for (const auto& metric : metric_names()) {
    ResultTable t{metric, result.datasets, result.models, {}};
    for (std::size_t di = 0; di < corpus.size(); ++di) {
      std::vector<double> row;
      for (std::size_t mi = 0; mi < models.size(); ++mi) {
        row.push_back(metric_value(result.reports[di * models.size() + mi].metrics, metric));
      }
      t.values.push_back(std::move(row));
    }
    result.tables.emplace(metric, std::move(t));
  }

  for (const auto& metric : metric_names()) {
    const ResultTable& t = result.tables.at(metric);
    const auto avg = t.average();
    for (const auto& [from, to] : improvement_pairs) {
      const auto fi = static_cast<std::size_t>(std::find(t.models.begin(), t.models.end(), from) - t.models.begin());
      const auto ti = static_cast<std::size_t>(std::find(t.models.begin(), t.models.end(), to) - t.models.begin());
      if (fi >= t.models.size() || ti >= t.models.size()) {
        throw Error("invalid_argument", "improvement pair " + from + " -> " + to + " not in roster");
      }
      Improvement imp{metric, from, to, {}, std::nullopt};
      for (const auto& row : t.values) {
        imp.per_dataset.push_back(row[fi] != 0.0 ? std::optional(improvement_percent(row[fi], row[ti])) : std::nullopt);
      }
      if (avg[fi] != 0.0) imp.average = improvement_percent(avg[fi], avg[ti]);
      result.improvements.push_back(std::move(imp));
    }
  }
  return result;
}

ScenarioResult run_scenario1(const ExperimentConfig& config, const std::vector<Dataset>& corpus) {
  return run_scenario(1, scenario1_models(config), {{"NB", "CG-NB"}, {"DT", "CG-DT"}, {"KNN", "CG-KNN"}}, corpus,
                      config);
}

ScenarioResult run_scenario1(const ExperimentConfig& config) { return run_scenario1(config, load_corpus(config)); }

ScenarioResult run_scenario2(const ExperimentConfig& config, const std::vector<Dataset>& corpus) {
  return run_scenario(2, scenario2_models(config),
                      {{"Bg-NB", "CG-NB"}, {"Bo-NB", "CG-NB"}, {"Bg-DT", "CG-DT"}, {"Bo-DT", "CG-DT"},
                       {"Bg-kNN", "CG-kNN"}, {"Bo-kNN", "CG-kNN"}},
                      corpus, config);
}

ScenarioResult run_scenario2(const ExperimentConfig& config) { return run_scenario2(config, load_corpus(config)); }

std::vector<ScenarioResult> run_experiment(const ExperimentConfig& config, const std::vector<Dataset>& corpus) {
  EvaluationCache cache;
  std::vector<ScenarioResult> out;
  if (config.scenario != Scenario::Ensembles) {
    out.push_back(run_scenario(1, scenario1_models(config), {{"NB", "CG-NB"}, {"DT", "CG-DT"}, {"KNN", "CG-KNN"}},
                               corpus, config, &cache));
  }
  if (config.scenario != Scenario::Baselines) {
    out.push_back(run_scenario(2, scenario2_models(config),
                               {{"Bg-NB", "CG-NB"}, {"Bo-NB", "CG-NB"}, {"Bg-DT", "CG-DT"}, {"Bo-DT", "CG-DT"},
                                {"Bg-kNN", "CG-kNN"}, {"Bo-kNN", "CG-kNN"}},
                               corpus, config, &cache));
  }
  return out;
}

std::string format_name(Format f) {
  switch (f) {
    case Format::Csv: return "csv";
    case Format::Markdown: return "md";
    case Format::Json: return "json";
  }
  return "";
}

std::optional<Format> parse_format(std::string_view s) {
  if (s == "csv") return Format::Csv;
  if (s == "md") return Format::Markdown;
  if (s == "json") return Format::Json;
  return std::nullopt;
}

namespace {

class ReportWriter {
 public:
  explicit ReportWriter(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec || !std::filesystem::is_directory(dir_)) {
      throw Error("io", "cannot create output directory " + dir_.string());
    }
  }

  void write(const std::string& name, const std::string& content) {
    const auto path = dir_ / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("io", "cannot write " + path.string());
    out << content;
    if (!out) throw Error("io", "write failed for " + path.string());
    files_.push_back({name, fnv1a64(content)});
    paths_.push_back(path);
  }

  const std::vector<std::pair<std::string, std::uint64_t>>& files() const { return files_; }
  const std::vector<std::filesystem::path>& paths() const { return paths_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::pair<std::string, std::uint64_t>> files_;
  std::vector<std::filesystem::path> paths_;
};

void emit_table(ReportWriter& w, const ScenarioResult& r, const ResultTable& t, const ExperimentConfig& config) {
  const std::string stem = scenario_tag(r.scenario) + "_" + t.metric;
  const auto avg = t.average();
  const int dec = display_decimals(t.metric);
  if (config.formats.count(Format::Csv)) {
    std::vector<std::string> header{"dataset"};
    header.insert(header.end(), t.models.begin(), t.models.end());
    std::string s = csv_join(header);
    for (std::size_t i = 0; i < t.datasets.size(); ++i) {
      std::vector<std::string> row{t.datasets[i]};
      for (double v : t.values[i]) row.push_back(exact(v));
      s += csv_join(row);
    }
    std::vector<std::string> row{"Average"};
    for (double v : avg) row.push_back(exact(v));
    s += csv_join(row);
    w.write(stem + ".csv", s);
  }
  if (config.formats.count(Format::Markdown)) {
    std::vector<std::string> header{t.metric};
    header.insert(header.end(), t.models.begin(), t.models.end());
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < t.datasets.size(); ++i) {
      std::vector<std::string> row{t.datasets[i]};
      for (double v : t.values[i]) row.push_back(fixed(v, dec));
      rows.push_back(std::move(row));
    }
    std::vector<std::string> row{"Average"};
    for (double v : avg) row.push_back(fixed(v, dec));
    rows.push_back(std::move(row));
    w.write(stem + ".md", markdown_table(header, rows));
  }
  if (config.formats.count(Format::Json)) {
    auto cells = [&](const std::vector<double>& values) {
      ordered_json arr = ordered_json::array();
      for (std::size_t c = 0; c < t.models.size(); ++c) {
        arr.push_back({{"model", t.models[c]}, {"value", values[c]}, {"source", "computed"}});
      }
      return arr;
    };
    ordered_json j;
    j["scenario"] = r.scenario;
    j["metric"] = t.metric;
    j["seed"] = config.seed;
    j["k"] = config.k;
    j["rows"] = ordered_json::array();
    for (std::size_t i = 0; i < t.datasets.size(); ++i) {
      j["rows"].push_back({{"dataset", t.datasets[i]}, {"cells", cells(t.values[i])}});
    }
    j["average"] = {{"dataset", "Average"}, {"cells", cells(avg)}};
    w.write(stem + ".json", j.dump(2) + "\n");
  }
}

void emit_boxplot(ReportWriter& w, const ScenarioResult& r, const BoxPlotSummary& b, const ExperimentConfig& config) {
  const std::string stem = scenario_tag(r.scenario) + "_" + b.metric + "_boxplot";
  const int dec = display_decimals(b.metric);
  if (config.formats.count(Format::Csv)) {
    std::string s = csv_join({"model", "min", "q1", "median", "q3", "max"});
    for (std::size_t i = 0; i < b.models.size(); ++i) {
      const auto& x = b.stats[i];
      s += csv_join({b.models[i], exact(x.min), exact(x.q1), exact(x.median), exact(x.q3), exact(x.max)});
    }
    w.write(stem + ".csv", s);
  }
  if (config.formats.count(Format::Markdown)) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < b.models.size(); ++i) {
      const auto& x = b.stats[i];
      rows.push_back({b.models[i], fixed(x.min, dec), fixed(x.q1, dec), fixed(x.median, dec), fixed(x.q3, dec),
                      fixed(x.max, dec)});
    }
    w.write(stem + ".md", markdown_table({"model", "min", "q1", "median", "q3", "max"}, rows));
  }
  if (config.formats.count(Format::Json)) {
    ordered_json j;
    j["scenario"] = r.scenario;
    j["metric"] = b.metric;
    j["quartile_method"] = kQuartileMethod;
    j["models"] = ordered_json::array();
    for (std::size_t i = 0; i < b.models.size(); ++i) {
      const auto& x = b.stats[i];
      j["models"].push_back({{"model", b.models[i]},
                             {"min", x.min},
                             {"q1", x.q1},
                             {"median", x.median},
                             {"q3", x.q3},
                             {"max", x.max}});
    }
    w.write(stem + ".json", j.dump(2) + "\n");
  }
}

void emit_improvements(ReportWriter& w, const ScenarioResult& r, const ExperimentConfig& config) {
  const std::string stem = scenario_tag(r.scenario) + "_improvements";
  auto text = [](const std::optional<double>& v, bool exact_digits) {
    return v ? (exact_digits ? exact(*v) : fixed(*v, 2)) : std::string();
  };
  std::vector<std::string> header{"metric", "from", "to"};
  header.insert(header.end(), r.datasets.begin(), r.datasets.end());
  header.push_back("Average");
  if (config.formats.count(Format::Csv)) {
    std::string s = csv_join(header);
    for (const auto& imp : r.improvements) {
      std::vector<std::string> row{imp.metric, imp.from, imp.to};
      for (const auto& v : imp.per_dataset) row.push_back(text(v, true));
      row.push_back(text(imp.average, true));
      s += csv_join(row);
    }
    w.write(stem + ".csv", s);
  }
  if (config.formats.count(Format::Markdown)) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& imp : r.improvements) {
      std::vector<std::string> row{imp.metric, imp.from, imp.to};
      for (const auto& v : imp.per_dataset) row.push_back(v ? text(v, false) + "%" : "-");
      row.push_back(imp.average ? text(imp.average, false) + "%" : "-");
      rows.push_back(std::move(row));
    }
    w.write(stem + ".md", markdown_table(header, rows));
  }
  if (config.formats.count(Format::Json)) {
    ordered_json j = ordered_json::array();
    for (const auto& imp : r.improvements) {
      ordered_json per = ordered_json::object();
      for (std::size_t i = 0; i < r.datasets.size(); ++i) {
        per[r.datasets[i]] = imp.per_dataset[i] ? ordered_json(*imp.per_dataset[i]) : ordered_json(nullptr);
      }
      j.push_back({{"metric", imp.metric},
                   {"from", imp.from},
                   {"to", imp.to},
                   {"percent", per},
                   {"average_percent", imp.average ? ordered_json(*imp.average) : ordered_json(nullptr)}});
    }
    w.write(stem + ".json", j.dump(2) + "\n");
  }
}

void emit_details(ReportWriter& w, const ScenarioResult& r) {
  ordered_json j;
  j["scenario"] = r.scenario;
  j["cells"] = ordered_json::array();
  auto metrics_json = [](const MetricSet& m) {
    return ordered_json{{"accuracy", m.accuracy},
                        {"auc", m.auc},
                        {"f_measure", m.f_measure},
                        {"mcc", m.mcc},
                        {"degenerate",
                         {{"auc", m.auc_degenerate}, {"f_measure", m.f_measure_degenerate}, {"mcc", m.mcc_degenerate}}}};
  };
  for (const auto& rep : r.reports) {
    ordered_json folds = ordered_json::array();
    for (const auto& f : rep.fold_metrics) folds.push_back(metrics_json(f));
    j["cells"].push_back({{"dataset", rep.dataset},
                          {"model", rep.model},
                          {"seed", rep.seed},
                          {"k", rep.k},
                          {"confusion", {{"tp", rep.pooled.tp}, {"fp", rep.pooled.fp}, {"fn", rep.pooled.fn}, {"tn", rep.pooled.tn}}},
                          {"pooled", metrics_json(rep.metrics)},
                          {"folds", folds}});
  }
  w.write(scenario_tag(r.scenario) + "_details.json", j.dump(2) + "\n");
}

// Our cascade rows beside the published external rows, on shared datasets.
void emit_comparison(ReportWriter& w, const std::vector<ScenarioResult>& results, const ReferenceResults& ref,
                     const ExperimentConfig& config) {
  const ScenarioResult* source = nullptr;
  for (const auto& r : results) {
    if (r.tables.count(ref.metric)) {
      source = &r;
      break;
    }
  }
  if (!source) return;
  const ResultTable& t = source->tables.at(ref.metric);
  std::vector<std::string> datasets;
  for (const auto& d : ref.datasets) {
    if (std::find(t.datasets.begin(), t.datasets.end(), d) != t.datasets.end()) datasets.push_back(d);
  }
  if (datasets.empty()) return;

  struct Row {
    std::string model, source;
    std::vector<std::optional<double>> cells;
  };
  std::vector<Row> rows;
  for (const auto& m : t.models) {
    if (m.rfind("CG-", 0) != 0) continue;
    Row row{m, "computed", {}};
    for (const auto& d : datasets) row.cells.push_back(t.at(d, m));
    rows.push_back(std::move(row));
  }
  for (const auto& rr : ref.rows) {
    Row row{rr.model, "paper-reference", {}};
    for (const auto& d : datasets) row.cells.push_back(rr.values.at(d));
    rows.push_back(std::move(row));
  }

  const std::string stem = "comparison_" + ref.metric;
  const int dec = display_decimals(ref.metric);
  if (config.formats.count(Format::Csv)) {
    std::vector<std::string> header{"model", "source"};
    header.insert(header.end(), datasets.begin(), datasets.end());
    std::string s = csv_join(header);
    for (const auto& r : rows) {
      std::vector<std::string> line{r.model, r.source};
      for (const auto& c : r.cells) line.push_back(c ? exact(*c) : "");
      s += csv_join(line);
    }
    w.write(stem + ".csv", s);
  }
  if (config.formats.count(Format::Markdown)) {
    std::vector<std::string> header{"model", "source"};
    header.insert(header.end(), datasets.begin(), datasets.end());
    std::vector<std::vector<std::string>> lines;
    for (const auto& r : rows) {
      std::vector<std::string> line{r.model, r.source};
      for (const auto& c : r.cells) line.push_back(c ? fixed(*c, dec) : "-");
      lines.push_back(std::move(line));
    }
    w.write(stem + ".md", markdown_table(header, lines));
  }
  if (config.formats.count(Format::Json)) {
    ordered_json j;
    j["metric"] = ref.metric;
    j["computed_from_scenario"] = source->scenario;
    j["reference_provenance"] = ref.provenance;
    j["rows"] = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json cells = ordered_json::array();
      for (std::size_t i = 0; i < datasets.size(); ++i) {
        cells.push_back({{"dataset", datasets[i]},
                         {"value", r.cells[i] ? ordered_json(*r.cells[i]) : ordered_json(nullptr)},
                         {"source", r.source}});
      }
      j["rows"].push_back({{"model", r.model}, {"source", r.source}, {"cells", cells}});
    }
    w.write(stem + ".json", j.dump(2) + "\n");
  }
}

}  // namespace

std::vector<std::filesystem::path> emit_reports(const std::vector<ScenarioResult>& results,
                                                const ExperimentConfig& config, const std::vector<Dataset>& corpus) {
  if (results.empty()) throw Error("invalid_argument", "no result tables to emit");
  ReportWriter w(config.output_dir);
  for (const auto& r : results) {
    for (const auto& metric : metric_names()) {
      emit_table(w, r, r.tables.at(metric), config);
      emit_boxplot(w, r, compute_boxplot_summary(r.tables.at(metric)), config);
    }
    emit_improvements(w, r, config);
    if (config.formats.count(Format::Json)) emit_details(w, r);
  }
  emit_comparison(w, results, reference_accuracy(), config);
  emit_comparison(w, results, reference_auc(), config);

  ordered_json m;
  m["tool"] = "cgsdp";
  m["version"] = kVersion;
  m["seed"] = config.seed;
  m["k"] = config.k;
  m["meta_trees"] = config.meta_trees;
  m["ensemble_members"] = config.ensemble_members;
  m["scenarios"] = ordered_json::array();
  for (const auto& r : results) m["scenarios"].push_back(r.scenario);
  ordered_json formats = ordered_json::array();
  for (Format f : config.formats) formats.push_back(format_name(f));
  m["formats"] = formats;
  m["rng"] = "std::mt19937_64; child seeds by SplitMix64 mixing; string keys hashed with FNV-1a 64";
  m["quartile_method"] = kQuartileMethod;
  m["checksum"] = "fnv1a64";
  m["datasets"] = ordered_json::array();
  for (const auto& d : corpus) {
    ordered_json entry{{"name", d.name()}, {"instances", d.rows()}, {"predictors", d.cols()}};
    if (auto f = find_dataset_file(config.dataset_dir, d.name())) {
      std::ifstream in(*f, std::ios::binary);
      std::ostringstream ss;
      ss << in.rdbuf();
      entry["file"] = f->filename().string();
      entry["fnv1a64"] = hex64(fnv1a64(ss.str()));
    }
    m["datasets"].push_back(entry);
  }
  m["files"] = ordered_json::array();
  for (const auto& [name, sum] : w.files()) m["files"].push_back({{"name", name}, {"fnv1a64", hex64(sum)}});
  w.write("manifest.json", m.dump(2) + "\n");
  return w.paths();
}

}  // namespace cgsdp
