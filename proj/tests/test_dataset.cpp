#include <algorithm>
#include <filesystem>
#include <set>

#include "cgsdp/dataset.hpp"
#include "cgsdp/error.hpp"
#include "doctest.h"

using namespace cgsdp;

namespace {

const std::filesystem::path kData = CGSDP_TEST_DATA;

std::string error_code(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return "none";
}

Dataset ten_rows() {
  std::vector<double> v;
  std::vector<int> y;
  for (int i = 0; i < 10; ++i) {
    v.push_back(i);
    y.push_back(i % 2);
  }
  return Dataset("ten", {"x"}, v, y);
}

}  // namespace

TEST_CASE("minimal arff") {
  const auto d = parse_arff(
      "@relation tiny\n@attribute a numeric\n@attribute b real\n@attribute c {false,true}\n@data\n"
      "1,2,false\n3,4,true\n",
      "tiny");
  CHECK(d.rows() == 2);
  CHECK(d.cols() == 2);
  CHECK(d.label(0) == kNonDefective);
  CHECK(d.label(1) == kDefective);
  CHECK(d.at(1, 0) == 3.0);
  const auto m = dataset_stats(d);
  CHECK(m == DatasetMeta{"tiny", 2, 3, 1, 1});
}

TEST_CASE("arff errors") {
  const std::string head = "@relation r\n@attribute a numeric\n";
  CHECK(error_code([&] { parse_arff(head + "@attribute c {x,y,z}\n@data\n1,x\n2,y\n", "r"); }) ==
        "class_cardinality");
  CHECK(error_code([&] { parse_arff(head + "@attribute c {N,Y}\n@data\n?,N\n2,Y\n", "r"); }) == "missing_value");
  CHECK(error_code([&] { parse_arff(head + "@attribute c {N,Y}\n@data\n", "r"); }) == "no_instances");
  CHECK(error_code([&] { parse_arff(head + "@attribute c {N,Y}\n@data\n1,N\n2,N\n", "r"); }) == "single_class");
  CHECK(error_code([&] { parse_arff(head + "@attribute c {N,Y}\n@data\nabc,N\n2,Y\n", "r"); }) == "non_numeric");
  CHECK(error_code([&] { parse_arff(head + "@attribute c {N,Y}\n@data\n1,N\n2,Q\n", "r"); }) == "parse");
  CHECK(error_code([&] { parse_arff(head + "@attribute s string\n@attribute c {N,Y}\n@data\n1,a,N\n", "r"); }) ==
        "non_numeric");
}

TEST_CASE("csv loading and errors") {
  const auto d = parse_csv("a,b,bug\n1,2,no\n3,4,yes\n5,6,no\n", "c");
  CHECK(d.rows() == 3);
  CHECK(d.cols() == 2);
  CHECK(d.count(kDefective) == 1);
  CHECK(error_code([] { parse_csv("a,b,bug\n", "c"); }) == "no_instances");
  CHECK(error_code([] { parse_csv("a,bug\n1,no\n2,yes\n3,maybe\n", "c"); }) != "none");
  CHECK(error_code([] { parse_csv("a,bug\n1,no\n2\n", "c"); }) == "ragged_row");
  CHECK(error_code([] { parse_csv("a,bug\n1,no\n2,yes\n", "c", std::string("nope")); }) == "unknown_column");
  const auto named = parse_csv("bug,a\nyes,1\nno,2\n", "c", std::string("bug"));
  CHECK(named.feature_names() == std::vector<std::string>{"a"});
  CHECK(named.label(0) == kDefective);
}

TEST_CASE("arff and csv copies of the synthetic data agree") {
  for (const char* name : {"SYNA", "SYNB", "SYNC"}) {
    const auto a = load_dataset(kData / (std::string(name) + ".arff"));
    const auto c = load_dataset(kData / "csv" / (std::string(name) + ".csv"));
    CHECK(a.name() == name);
    CHECK(a.values() == c.values());
    CHECK(a.labels() == c.labels());
    CHECK(a.feature_names() == c.feature_names());
  }
  const auto m = dataset_stats(load_dataset(kData / "SYNA.arff"));
  CHECK(m == DatasetMeta{"SYNA", 240, 9, 60, 180});
}

TEST_CASE("csv round trip is lossless") {
  const auto d = load_dataset(kData / "SYNB.arff");
  const auto back = parse_csv(to_csv(d), d.name());
  CHECK(back.values() == d.values());
  CHECK(back.labels() == d.labels());
}

TEST_CASE("stratified folds with exact divisibility") {
  const auto d = ten_rows();
  const auto plan = stratified_folds(d, 5, 7);
  REQUIRE(plan.folds.size() == 5);
  for (const auto& f : plan.folds) {
    REQUIRE(f.size() == 2);
    CHECK(d.label(f[0]) != d.label(f[1]));
  }
  const auto again = stratified_folds(d, 5, 7);
  CHECK(again.folds == plan.folds);
  CHECK(error_code([&] { stratified_folds(d, 6, 7); }) == "fold_count");
  CHECK(error_code([&] { stratified_folds(d, 1, 7); }) == "fold_count");
}

TEST_CASE("stratified folds partition and balance") {
  const auto d = load_dataset(kData / "SYNC.arff");  // 18 defective of 150
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto plan = stratified_folds(d, 10, seed);
    std::vector<int> seen(d.rows(), 0);
    for (const auto& f : plan.folds) {
      CHECK(std::is_sorted(f.begin(), f.end()));
      std::size_t minority = 0;
      for (auto i : f) {
        ++seen[i];
        minority += d.label(i) == kDefective;
      }
      // 18 / 10 -> each fold holds floor or ceil
      CHECK(minority >= 1);
      CHECK(minority <= 2);
      CHECK(f.size() >= 15);
      CHECK(f.size() <= 15 + 1);
    }
    CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
  }
  CHECK(stratified_folds(d, 10, 1).folds != stratified_folds(d, 10, 2).folds);
}

TEST_CASE("defective label spellings") {
  for (const char* s : {"Y", "yes", "TRUE", "1", "defective"}) CHECK(is_defective_label(s));
  for (const char* s : {"N", "no", "false", "0", "clean"}) CHECK_FALSE(is_defective_label(s));
}
