#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "latticefield/experiment.hpp"
#include "latticefield/output.hpp"

namespace {

using nlohmann::json;

struct GlobalFlags {
  std::string seed;
  int reps = -1;
  int workers = -1;
  std::string out_dir = "out";
  std::string config_path;
  bool no_output = false;
};

void add_common_flags(CLI::App* cmd, GlobalFlags& flags) {
  cmd->add_option("--seed", flags.seed, "seed, decimal or 0x-hex");
  cmd->add_option("--reps", flags.reps, "replication count");
  cmd->add_option("--workers", flags.workers, "worker thread count");
  cmd->add_option("--out-dir", flags.out_dir, "output directory");
  cmd->add_option("--config", flags.config_path, "JSON config file");
  cmd->add_flag("--no-output", flags.no_output, "skip writing result files");
}

int run(const std::string& experiment, const GlobalFlags& flags) {
  json doc = json::object();
  if (!flags.config_path.empty()) {
    std::ifstream in(flags.config_path);
    if (!in) throw lf::ConfigError("config: cannot open " + flags.config_path);
    try {
      in >> doc;
    } catch (const json::parse_error& e) {
      throw lf::ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw lf::ConfigError("config: expected a JSON object");
  }
  if (doc.contains("experiment") && doc["experiment"] != experiment)
    throw lf::ConfigError("config: experiment '" + doc["experiment"].dump() +
                          "' does not match the subcommand");
  doc["experiment"] = experiment;
  if (!flags.seed.empty()) doc["seed"] = lf::parse_seed_text(flags.seed);
  if (flags.reps > 0) doc["reps"] = flags.reps;
  if (flags.workers > 0) doc["workers"] = flags.workers;

  const lf::ExperimentConfig config = lf::parse_config(doc);
  const lf::ExperimentResult result = lf::run_experiment(config);

  std::printf("experiment %s  seed %llu  config %s\n", result.experiment.c_str(),
              static_cast<unsigned long long>(config.seed), result.config_hash.c_str());
  for (const auto& t : result.tests)
    std::printf("  [%s] %-28s statistic %.6g  threshold %.6g%s%s\n",
                t.pass ? "pass" : "FAIL", t.name.c_str(), t.statistic, t.threshold,
                t.note.empty() ? "" : "  ", t.note.c_str());
  for (const auto& [k, v] : result.scalars) std::printf("  %s = %.10g\n", k.c_str(), v);

  if (!flags.no_output) {
    const auto files = lf::emit_outputs(result, config, flags.out_dir);
    std::printf("wrote %zu files to %s\n", files.size(), flags.out_dir.c_str());
  }
  std::printf("%s\n", result.passed() ? "PASS" : "FAIL");
  return result.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simulation and verification toolkit for stationary lattice random fields"};
  app.require_subcommand(0, 1);

  bool list_presets = false;
  app.add_flag("--list-presets", list_presets, "print built-in model/scheme presets");

  GlobalFlags flags;
  int which = 1;
  auto* clt = app.add_subcommand("clt", "normality and variance of normalized weighted sums");
  auto* fdd = app.add_subcommand("fdd", "joint covariance at several evaluation points");
  auto* paths = app.add_subcommand("paths", "export replicated normalized paths on a grid");
  auto* counter =
      app.add_subcommand("counterexample", "constructions where the normalized sums do not converge");
  counter->add_option("--which", which, "1: interval-partition layers, 2: oscillating index sets")
      ->check(CLI::Range(1, 2));
  auto* dependence =
      app.add_subcommand("dependence", "projection, coupling, and covariance coefficients");
  auto* oracle = app.add_subcommand("oracle-check", "exact identity suite on small windows");
  for (auto* cmd : {clt, fdd, paths, counter, dependence, oracle}) add_common_flags(cmd, flags);

  CLI11_PARSE(app, argc, argv);

  if (list_presets) {
    std::cout << lf::list_presets();
    return 0;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return 2;
  }

  try {
    const auto* sub = app.get_subcommands().front();
    std::string experiment = sub->get_name();
    if (experiment == "counterexample") experiment += std::to_string(which);
    if (experiment == "oracle-check") experiment = "oracle";
    return run(experiment, flags);
  } catch (const lf::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const lf::OutputError& e) {
    std::cerr << "output error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
