#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cgsdp/classifier_spec.hpp"
#include "cgsdp/dataset.hpp"
#include "cgsdp/evaluation.hpp"

namespace cgsdp {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr std::uint64_t kDefaultSeed = 20231017;

enum class Scenario { Baselines = 1, Ensembles = 2, All = 3 };
enum class Format { Csv, Markdown, Json };

struct ExperimentConfig {
  std::filesystem::path dataset_dir;
  std::vector<std::string> datasets{"CM1", "KC1", "KC3", "MC2", "MW1", "PC1", "PC3", "PC4", "PC5"};
  Scenario scenario = Scenario::All;
  std::size_t k = 10;
  std::uint64_t seed = kDefaultSeed;
  std::size_t meta_trees = 100;
  std::size_t ensemble_members = 10;
  std::filesystem::path output_dir = "results";
  std::set<Format> formats{Format::Csv, Format::Markdown, Format::Json};
  std::size_t threads = 0;  // 0 = hardware concurrency; results do not depend on it

  void validate() const;
};

/// One table column: display name plus the classifier it evaluates.
struct ModelEntry {
  std::string name;
  ClassifierSpec spec;
};

std::vector<ModelEntry> scenario1_models(const ExperimentConfig& config);
std::vector<ModelEntry> scenario2_models(const ExperimentConfig& config);

// Metric keys, in emission order.
inline const std::vector<std::string>& metric_names() {
  static const std::vector<std::string> names{"accuracy", "auc", "f_measure", "mcc"};
  return names;
}

/// Rows are datasets, columns are models. Accuracy cells are percentages;
/// the other metrics are raw values.
struct ResultTable {
  std::string metric;
  std::vector<std::string> datasets;
  std::vector<std::string> models;
  std::vector<std::vector<double>> values;  // [dataset][model]

  /// Column means over the dataset rows.
  std::vector<double> average() const;
  double at(const std::string& dataset, const std::string& model) const;
  double average_of(const std::string& model) const;
};

struct BoxPlotStats {
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
};

/// Per-model five-number summary over a table's dataset rows. Quartiles are
/// medians of the lower and upper halves, the median itself excluded when
/// the count is odd.
struct BoxPlotSummary {
  std::string metric;
  std::vector<std::string> models;
  std::vector<BoxPlotStats> stats;
};

inline constexpr const char* kQuartileMethod = "median-of-halves (Tukey hinges, median excluded)";

BoxPlotStats five_number_summary(std::vector<double> values);
BoxPlotSummary compute_boxplot_summary(const ResultTable& table);

/// 100 * (to - from) / from for one metric and model pair.
struct Improvement {
  std::string metric;
  std::string from;
  std::string to;
  std::vector<std::optional<double>> per_dataset;
  std::optional<double> average;  // computed from the average row
};

double improvement_percent(double from, double to);

struct ScenarioResult {
  int scenario = 1;
  std::vector<std::string> datasets;
  std::vector<std::string> models;
  std::map<std::string, ResultTable> tables;  // metric -> table
  std::vector<Improvement> improvements;
  std::vector<EvaluationReport> reports;     // [dataset][model] row-major
};

/// Loads every configured dataset; throws Error("missing_dataset") naming all
/// absent files before anything is evaluated.
std::vector<Dataset> load_corpus(const ExperimentConfig& config);

/// Finds <name>.arff or <name>.csv (stem compared case-insensitively).
std::optional<std::filesystem::path> find_dataset_file(const std::filesystem::path& dir,
                                                       const std::string& name);

/// Evaluations keyed by (dataset, model spec name); lets scenarios share
/// the cells they have in common.
using EvaluationCache = std::map<std::pair<std::string, std::string>, EvaluationReport>;

ScenarioResult run_scenario(int scenario, const std::vector<ModelEntry>& models,
                            const std::vector<std::pair<std::string, std::string>>& improvement_pairs,
                            const std::vector<Dataset>& corpus, const ExperimentConfig& config,
                            EvaluationCache* cache = nullptr);

ScenarioResult run_scenario1(const ExperimentConfig& config);
ScenarioResult run_scenario1(const ExperimentConfig& config, const std::vector<Dataset>& corpus);
ScenarioResult run_scenario2(const ExperimentConfig& config);
ScenarioResult run_scenario2(const ExperimentConfig& config, const std::vector<Dataset>& corpus);

/// Runs the scenarios selected by config.scenario, sharing common cells.
std::vector<ScenarioResult> run_experiment(const ExperimentConfig& config, const std::vector<Dataset>& corpus);

/// Published results of external defect predictors, keyed by model and
/// dataset; absent cells are nullopt.
struct ReferenceRow {
  std::string model;
  std::map<std::string, std::optional<double>> values;
};

struct ReferenceResults {
  std::string metric;      // "accuracy" (percent) or "auc"
  std::string provenance;  // which published comparison the rows come from
  std::vector<std::string> datasets;
  std::vector<ReferenceRow> rows;
};

const ReferenceResults& reference_accuracy();
const ReferenceResults& reference_auc();

/// Writes tables, box-plot summaries, improvements, reference comparisons and
/// manifest.json into config.output_dir. Returns the written paths in order.
std::vector<std::filesystem::path> emit_reports(const std::vector<ScenarioResult>& results,
                                                const ExperimentConfig& config,
                                                const std::vector<Dataset>& corpus);

std::string format_name(Format f);
std::optional<Format> parse_format(std::string_view s);

}  // namespace cgsdp
