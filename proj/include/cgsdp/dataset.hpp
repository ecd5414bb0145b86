#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cgsdp {

inline constexpr int kNonDefective = 0;
inline constexpr int kDefective = 1;

/// A binary-labelled table of numeric predictors.
///
/// Features are stored row-major. Construction validates the table: at least
/// two rows, finite values, labels in {0, 1} with both classes present, and
/// unique feature names. Class index 1 is always the defective (positive)
/// class.
class Dataset {
 public:
  Dataset(std::string name, std::vector<std::string> feature_names, std::vector<double> values,
          std::vector<int> labels, std::array<std::string, 2> class_names = {"N", "Y"});

  const std::string& name() const { return name_; }
  std::size_t rows() const { return labels_.size(); }
  std::size_t cols() const { return feature_names_.size(); }

  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * cols(), cols()};
  }
  double at(std::size_t i, std::size_t j) const { return values_[i * cols() + j]; }
  int label(std::size_t i) const { return labels_[i]; }

  const std::vector<double>& values() const { return values_; }
  const std::vector<int>& labels() const { return labels_; }
  const std::vector<std::string>& feature_names() const { return feature_names_; }
  const std::array<std::string, 2>& class_names() const { return class_names_; }

  std::size_t count(int label) const;

  /// Rows selected by `indices`, in that order (repeats allowed). Throws if the
  /// selection does not contain both classes.
  Dataset subset(std::span<const std::size_t> indices) const;

  bool operator==(const Dataset&) const = default;

 private:
  std::string name_;
  std::vector<std::string> feature_names_;
  std::vector<double> values_;
  std::vector<int> labels_;
  std::array<std::string, 2> class_names_;
};

/// Per-dataset counts. `attributes` includes the class attribute.
struct DatasetMeta {
  std::string name;
  std::size_t instances = 0;
  std::size_t attributes = 0;
  std::size_t defective = 0;
  std::size_t non_defective = 0;

  bool operator==(const DatasetMeta&) const = default;
};

struct FoldPlan {
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<std::size_t>> folds;  // each sorted ascending
};

// True for the raw class labels treated as "defective" (case-insensitive):
// Y, yes, true, 1, defective.
bool is_defective_label(std::string_view raw);

/// Loads the ARFF subset used by defect corpora: numeric predictors followed
/// by one two-valued nominal class attribute. The dataset is named after the
/// file stem.
Dataset load_arff(const std::filesystem::path& path);

/// Loads a CSV with a header row. The label column defaults to the last one.
Dataset load_csv(const std::filesystem::path& path,
                 const std::optional<std::string>& label_column = std::nullopt);

Dataset parse_arff(std::string_view text, std::string name);
Dataset parse_csv(std::string_view text, std::string name,
                  const std::optional<std::string>& label_column = std::nullopt);

/// Loads by extension (.arff or .csv).
Dataset load_dataset(const std::filesystem::path& path);

/// Writes features plus a trailing label column (raw class names), full
/// round-trip precision.
void write_csv(const Dataset& d, const std::filesystem::path& path);
std::string to_csv(const Dataset& d);

DatasetMeta dataset_stats(const Dataset& d);

/// Per-class shuffle, then a round-robin deal that continues across classes.
/// Requires 2 <= k <= minority class count.
FoldPlan stratified_folds(const Dataset& d, std::size_t k, std::uint64_t seed);

}  // namespace cgsdp
