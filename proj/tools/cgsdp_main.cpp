// cgsdp: cascade-generalization defect prediction experiments.
//
//   cgsdp run --datasets DIR [--scenario 1|2|all] [--folds 10] [--seed N]
//             [--meta-trees 100] [--ensemble-members 10] [--out DIR]
//             [--format csv,md,json] [--threads N] [--list CM1,KC1,...]
//   cgsdp stats --datasets DIR
//   cgsdp validate --datasets DIR
//
// Any option may also come from an INI/TOML file given with --config, with
// keys in a section named after the subcommand ([run], [stats], ...).

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cgsdp/dataset.hpp"
#include "cgsdp/error.hpp"
#include "cgsdp/experiment.hpp"

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c == '\n' ? ' ' : c;
  }
  return out;
}

int fail(const std::string& code, const std::string& message) {
  std::cerr << "error code=" << code << " message=\"" << escape(message) << "\"\n";
  return 1;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cascade generalization experiments for software defect prediction"};
  app.set_config("--config", "", "INI/TOML file mirroring the command-line flags");
  app.require_subcommand(1);

  cgsdp::ExperimentConfig config;
  std::string scenario = "all";
  std::string formats = "csv,md,json";
  std::string list;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--datasets", config.dataset_dir, "Directory with <NAME>.arff or <NAME>.csv files")->required();
    sub->add_option("--list", list, "Comma-separated dataset names (default: the nine NASA datasets)");
  };

  auto* run = app.add_subcommand("run", "Run scenario 1 and/or 2 and write reports");
  add_common(run);
  run->add_option("--scenario", scenario, "1, 2 or all")->check(CLI::IsMember({"1", "2", "all"}));
  run->add_option("--folds", config.k, "Cross-validation folds")->check(CLI::Range(2, 1000000));
  run->add_option("--seed", config.seed, "Global seed");
  run->add_option("--meta-trees", config.meta_trees, "Trees in the cascade's random-forest meta learner")
      ->check(CLI::PositiveNumber);
  run->add_option("--ensemble-members", config.ensemble_members, "Bagging/boosting members")
      ->check(CLI::PositiveNumber);
  run->add_option("--out", config.output_dir, "Output directory");
  run->add_option("--format", formats, "Comma-separated subset of csv,md,json");
  run->add_option("--threads", config.threads, "Worker threads (0 = all cores); results do not depend on it");

  auto* stats = app.add_subcommand("stats", "Print instance/attribute/class counts per dataset");
  add_common(stats);
  auto* validate = app.add_subcommand("validate", "Check that every dataset loads");
  add_common(validate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error code=usage message=\"" << escape(e.what()) << "\"\n";
    return 2;
  }

  try {
    if (!list.empty()) config.datasets = split_list(list);
    if (scenario == "1") config.scenario = cgsdp::Scenario::Baselines;
    if (scenario == "2") config.scenario = cgsdp::Scenario::Ensembles;
    config.formats.clear();
    for (const auto& f : split_list(formats)) {
      auto parsed = cgsdp::parse_format(f);
      if (!parsed) return fail("usage", "unknown format '" + f + "' (expected csv, md or json)");
      config.formats.insert(*parsed);
    }
    if (config.formats.empty()) config.formats = {cgsdp::Format::Csv};

    const auto corpus = cgsdp::load_corpus(config);

    if (*stats) {
      std::printf("%-10s %10s %9s %10s %14s\n", "Dataset", "Instances", "Features", "Defective", "Non-Defective");
      for (const auto& d : corpus) {
        const auto m = cgsdp::dataset_stats(d);
        std::printf("%-10s %10zu %9zu %10zu %14zu\n", m.name.c_str(), m.instances, m.attributes, m.defective,
                    m.non_defective);
      }
      return 0;
    }
    if (*validate) {
      for (const auto& d : corpus) std::printf("%s ok %zu x %zu\n", d.name().c_str(), d.rows(), d.cols());
      return 0;
    }

    const auto start = std::chrono::steady_clock::now();
    const auto results = cgsdp::run_experiment(config, corpus);
    const auto written = cgsdp::emit_reports(results, config, corpus);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (const auto& r : results) {
      const auto& acc = r.tables.at("accuracy");
      const auto& auc = r.tables.at("auc");
      std::printf("scenario %d averages over %zu datasets:\n", r.scenario, acc.datasets.size());
      const auto acc_avg = acc.average();
      const auto auc_avg = auc.average();
      for (std::size_t c = 0; c < acc.models.size(); ++c) {
        std::printf("  %-8s accuracy %6.2f  auc %.3f\n", acc.models[c].c_str(), acc_avg[c], auc_avg[c]);
      }
    }
    std::printf("wrote %zu files to %s in %.1f s\n", written.size(), config.output_dir.string().c_str(), secs);
    return 0;
  } catch (const cgsdp::Error& e) {
    return fail(e.code(), e.what());
  } catch (const std::exception& e) {
    return fail("internal", e.what());
  }
}
