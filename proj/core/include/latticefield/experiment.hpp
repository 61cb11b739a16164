#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "latticefield/fields.hpp"
#include "latticefield/harness.hpp"
#include "latticefield/weights.hpp"

namespace lf {

// config schema violations; the CLI maps this to exit code 2
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string experiment;
  std::uint64_t seed = 1;
  int reps = 10000;
  int workers = 1;
  nlohmann::json canonical;  // validated document with defaults filled

  // FNV-1a over the canonical serialization, stable across platforms
  std::string hash() const;
};

std::uint64_t fnv1a(const std::string& text);

// decimal or 0x-prefixed hex
std::uint64_t parse_seed_text(const std::string& text);

// Validates the document (unknown keys rejected, reps >= 100), fills
// defaults, and returns the typed header plus the canonical form.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig parse_config_file(const std::string& path);

// model descriptor: {"type": "kernel"|"iid"|"difference"|"volterra", ...}
std::shared_ptr<FieldModel> make_model(const nlohmann::json& descriptor, std::uint64_t seed);
// scheme descriptor: {"type": "rectangle"|"index_set"|"set_indexed"|"product_linear", ...}
std::shared_ptr<WeightScheme> make_scheme(const nlohmann::json& descriptor);

ExperimentResult run_experiment(const ExperimentConfig& config);

// printable catalog of built-in model and scheme presets
std::string list_presets();

}  // namespace lf
