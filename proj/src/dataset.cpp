#include "cgsdp/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "cgsdp/error.hpp"
#include "cgsdp/rng.hpp"

namespace cgsdp {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Splits a comma-separated line honoring single or double quotes.
std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  char quote = 0;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quote) {
      if (c == quote) {
        if (i + 1 < line.size() && line[i + 1] == quote) {
          cur.push_back(c);
          ++i;
        } else {
          quote = 0;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"' || c == '\'') {
      if (trim(cur).empty()) {
        cur.clear();
        quote = c;
        was_quoted = true;
      } else {
        cur.push_back(c);
      }
    } else if (c == ',') {
      out.push_back(was_quoted ? cur : std::string(trim(cur)));
      cur.clear();
      was_quoted = false;
    } else {
      cur.push_back(c);
    }
  }
  if (quote) throw Error("parse", "unterminated quote in: " + std::string(line));
  out.push_back(was_quoted ? cur : std::string(trim(cur)));
  return out;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

// Maps two raw class values to (non-defective, defective).
std::array<std::string, 2> orient_classes(const std::vector<std::string>& raw,
                                          const std::string& where) {
  if (raw.size() != 2) {
    throw Error("class_cardinality", where + ": class cardinality " + std::to_string(raw.size()) +
                                         ", expected 2");
  }
  const bool d0 = is_defective_label(raw[0]);
  const bool d1 = is_defective_label(raw[1]);
  if (d0 == d1) {
    throw Error("class_labels", where + ": cannot tell which of '" + raw[0] + "', '" + raw[1] +
                                    "' is the defective class");
  }
  return d1 ? std::array<std::string, 2>{raw[0], raw[1]}
            : std::array<std::string, 2>{raw[1], raw[0]};
}

}  // namespace

Dataset::Dataset(std::string name, std::vector<std::string> feature_names,
                 std::vector<double> values, std::vector<int> labels,
                 std::array<std::string, 2> class_names)
    : name_(std::move(name)),
      feature_names_(std::move(feature_names)),
      values_(std::move(values)),
      labels_(std::move(labels)),
      class_names_(std::move(class_names)) {
  if (labels_.size() < 2) {
    throw Error("no_instances", name_ + ": need at least 2 instances, got " +
                                    std::to_string(labels_.size()));
  }
  if (values_.size() != labels_.size() * feature_names_.size()) {
    throw Error("shape", name_ + ": feature matrix size does not match rows x columns");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error("non_finite", name_ + ": non-finite feature value");
  }
  std::size_t positives = 0;
  for (int y : labels_) {
    if (y != kNonDefective && y != kDefective) {
      throw Error("label", name_ + ": label outside {0, 1}");
    }
    positives += static_cast<std::size_t>(y == kDefective);
  }
  if (positives == 0 || positives == labels_.size()) {
    throw Error("single_class", name_ + ": both classes must be present");
  }
  std::set<std::string> seen;
  for (const auto& f : feature_names_) {
    if (!seen.insert(f).second) throw Error("duplicate_feature", name_ + ": duplicate feature " + f);
  }
}

std::size_t Dataset::count(int label) const {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), label));
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  std::vector<double> values;
  values.reserve(indices.size() * cols());
  std::vector<int> labels;
  labels.reserve(indices.size());
  for (std::size_t i : indices) {
    auto r = row(i);
    values.insert(values.end(), r.begin(), r.end());
    labels.push_back(labels_[i]);
  }
  return Dataset(name_, feature_names_, std::move(values), std::move(labels), class_names_);
}

bool is_defective_label(std::string_view raw) {
  static const std::array<std::string_view, 5> synonyms{"y", "yes", "true", "1", "defective"};
  const std::string l = lower(trim(raw));
  return std::find(synonyms.begin(), synonyms.end(), l) != synonyms.end();
}

Dataset parse_arff(std::string_view text, std::string name) {
  struct Attribute {
    std::string name;
    bool numeric = false;
    std::vector<std::string> nominal;
  };
  std::vector<Attribute> attrs;
  bool in_data = false;
  std::vector<std::vector<std::string>> rows;
  std::size_t line_no = 0;

  for (std::string_view raw : split_lines(text)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '%') continue;
    const std::string where = name + ":" + std::to_string(line_no);
    if (!in_data) {
      if (line.front() != '@') throw Error("parse", where + ": expected a header declaration");
      const auto space = line.find_first_of(" \t");
      const std::string keyword = lower(line.substr(0, space));
      std::string_view rest = space == std::string_view::npos ? "" : trim(line.substr(space));
      if (keyword == "@relation") continue;
      if (keyword == "@data") {
        in_data = true;
        continue;
      }
      if (keyword != "@attribute") throw Error("parse", where + ": unknown declaration " + keyword);
      Attribute a;
      std::size_t name_end;
      if (!rest.empty() && (rest.front() == '\'' || rest.front() == '"')) {
        name_end = rest.find(rest.front(), 1);
        if (name_end == std::string_view::npos) throw Error("parse", where + ": unterminated name");
        a.name = std::string(rest.substr(1, name_end - 1));
        ++name_end;
      } else {
        name_end = rest.find_first_of(" \t{");
        if (name_end == std::string_view::npos) throw Error("parse", where + ": missing type");
        a.name = std::string(rest.substr(0, name_end));
      }
      std::string_view type = trim(rest.substr(name_end));
      if (type.empty()) throw Error("parse", where + ": missing type");
      if (type.front() == '{') {
        if (type.back() != '}') throw Error("parse", where + ": unterminated nominal list");
        for (auto& v : split_fields(type.substr(1, type.size() - 2))) {
          if (v.empty()) throw Error("parse", where + ": empty nominal value");
          a.nominal.push_back(std::move(v));
        }
      } else {
        const std::string t = lower(type);
        if (t != "numeric" && t != "real" && t != "integer") {
          throw Error("non_numeric", where + ": unsupported attribute type '" + std::string(type) + "'");
        }
        a.numeric = true;
      }
      attrs.push_back(std::move(a));
    } else {
      if (line.front() == '{') throw Error("parse", where + ": sparse rows are not supported");
      auto fields = split_fields(line);
      if (fields.size() != attrs.size()) {
        throw Error("parse", where + ": expected " + std::to_string(attrs.size()) + " values, got " +
                                 std::to_string(fields.size()));
      }
      for (const auto& f : fields) {
        if (f == "?") throw Error("missing_value", where + ": missing value '?'");
      }
      rows.push_back(std::move(fields));
    }
  }

  if (!in_data) throw Error("parse", name + ": no @data section");
  if (attrs.size() < 2) throw Error("parse", name + ": need predictors and a class attribute");
  const Attribute& cls = attrs.back();
  if (cls.numeric) throw Error("class_cardinality", name + ": class attribute must be nominal");
  const auto class_names = orient_classes(cls.nominal, name);
  for (std::size_t j = 0; j + 1 < attrs.size(); ++j) {
    if (!attrs[j].numeric) {
      throw Error("non_numeric", name + ": predictor '" + attrs[j].name + "' is not numeric");
    }
  }
  if (rows.empty()) throw Error("no_instances", name + ": no instances");

  const std::size_t p = attrs.size() - 1;
  std::vector<std::string> feature_names;
  for (std::size_t j = 0; j < p; ++j) feature_names.push_back(attrs[j].name);
  std::vector<double> values;
  values.reserve(rows.size() * p);
  std::vector<int> labels;
  labels.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      auto v = parse_number(rows[i][j]);
      if (!v) {
        throw Error("non_numeric", name + ": row " + std::to_string(i + 1) + " attribute '" +
                                       feature_names[j] + "': not a number '" + rows[i][j] + "'");
      }
      values.push_back(*v);
    }
    const std::string& y = rows[i][p];
    if (y == class_names[kDefective]) {
      labels.push_back(kDefective);
    } else if (y == class_names[kNonDefective]) {
      labels.push_back(kNonDefective);
    } else {
      throw Error("parse", name + ": row " + std::to_string(i + 1) + ": undeclared class value '" + y + "'");
    }
  }
  return Dataset(std::move(name), std::move(feature_names), std::move(values), std::move(labels),
                 class_names);
}

Dataset parse_csv(std::string_view text, std::string name,
                  const std::optional<std::string>& label_column) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header;
  std::size_t line_no = 0;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_fields(line);
    if (header.empty()) {
      header = std::move(fields);
      continue;
    }
    if (fields.size() != header.size()) {
      throw Error("ragged_row", name + ":" + std::to_string(line_no) + ": expected " +
                                    std::to_string(header.size()) + " fields, got " +
                                    std::to_string(fields.size()));
    }
    rows.push_back(std::move(fields));
  }
  if (header.empty()) throw Error("parse", name + ": missing header row");
  if (header.size() < 2) throw Error("parse", name + ": need predictors and a label column");
  if (rows.empty()) throw Error("no_instances", name + ": no instances");

  std::size_t label_idx = header.size() - 1;
  if (label_column) {
    auto it = std::find(header.begin(), header.end(), *label_column);
    if (it == header.end()) throw Error("unknown_column", name + ": unknown label column '" + *label_column + "'");
    label_idx = static_cast<std::size_t>(it - header.begin());
  }

  std::vector<std::string> distinct;
  for (const auto& r : rows) {
    if (std::find(distinct.begin(), distinct.end(), r[label_idx]) == distinct.end()) {
      distinct.push_back(r[label_idx]);
    }
  }
  std::array<std::string, 2> class_names;
  if (distinct.size() == 1) {
    throw Error("single_class", name + ": label column holds a single value '" + distinct[0] + "'");
  }
  class_names = orient_classes(distinct, name);

  std::vector<std::string> feature_names;
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (j != label_idx) feature_names.push_back(header[j]);
  }
  std::vector<double> values;
  values.reserve(rows.size() * feature_names.size());
  std::vector<int> labels;
  labels.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < header.size(); ++j) {
      if (j == label_idx) continue;
      if (rows[i][j] == "?") throw Error("missing_value", name + ": missing value in row " + std::to_string(i + 1));
      auto v = parse_number(rows[i][j]);
      if (!v) {
        throw Error("non_numeric", name + ": row " + std::to_string(i + 1) + " column '" + header[j] +
                                       "': not a number '" + rows[i][j] + "'");
      }
      values.push_back(*v);
    }
    labels.push_back(rows[i][label_idx] == class_names[kDefective] ? kDefective : kNonDefective);
  }
  return Dataset(std::move(name), std::move(feature_names), std::move(values), std::move(labels),
                 class_names);
}

Dataset load_arff(const std::filesystem::path& path) {
  return parse_arff(read_file(path), path.stem().string());
}

Dataset load_csv(const std::filesystem::path& path, const std::optional<std::string>& label_column) {
  return parse_csv(read_file(path), path.stem().string(), label_column);
}

Dataset load_dataset(const std::filesystem::path& path) {
  const std::string ext = lower(path.extension().string());
  if (ext == ".arff") return load_arff(path);
  if (ext == ".csv") return load_csv(path);
  throw Error("parse", "unsupported dataset extension: " + path.string());
}

std::string to_csv(const Dataset& d) {
  auto field = [](const std::string& s) {
    if (s.find_first_of(",\"'\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q.push_back('"');
      q.push_back(c);
    }
    return q + "\"";
  };
  std::string out;
  for (const auto& f : d.feature_names()) out += field(f) + ",";
  out += "class\n";
  char buf[32];
  for (std::size_t i = 0; i < d.rows(); ++i) {
    for (double v : d.row(i)) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      out += ',';
    }
    out += field(d.class_names()[static_cast<std::size_t>(d.label(i))]) + "\n";
  }
  return out;
}

void write_csv(const Dataset& d, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("io", "cannot write " + path.string());
  out << to_csv(d);
}

DatasetMeta dataset_stats(const Dataset& d) {
  DatasetMeta m;
  m.name = d.name();
  m.instances = d.rows();
  m.attributes = d.cols() + 1;
  m.defective = d.count(kDefective);
  m.non_defective = d.count(kNonDefective);
  return m;
}

FoldPlan stratified_folds(const Dataset& d, std::size_t k, std::uint64_t seed) {
  const std::size_t minority = std::min(d.count(kDefective), d.count(kNonDefective));
  if (k < 2 || k > minority) {
    throw Error("fold_count", d.name() + ": fold count " + std::to_string(k) +
                                  " must be in [2, " + std::to_string(minority) + "]");
  }
  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.folds.resize(k);
  Rng rng(seed);
  std::size_t next = 0;
  for (int c : {kNonDefective, kDefective}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < d.rows(); ++i) {
      if (d.label(i) == c) members.push_back(i);
    }
    rng.shuffle(members);
    for (std::size_t i : members) {
      plan.folds[next].push_back(i);
      next = (next + 1) % k;
    }
  }
  for (auto& f : plan.folds) std::sort(f.begin(), f.end());
  return plan;
}

}  // namespace cgsdp
