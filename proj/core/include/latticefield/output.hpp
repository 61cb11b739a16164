#pragma once

#include <string>
#include <vector>

#include "latticefield/experiment.hpp"
#include "latticefield/harness.hpp"

namespace lf {

// IO failures while writing outputs; the CLI maps this to exit code 3
struct OutputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Deterministic serializations: byte-identical for identical (config, seed).
std::string results_json_string(const ExperimentResult& result);
std::string samples_csv_string(const ExperimentResult& result);

// dependency-free SVG plots
std::string histogram_svg(const std::vector<double>& samples, double overlay_mean,
                          double overlay_sd, const std::string& title);
std::string qq_plot_svg(const std::vector<double>& samples, const std::string& title);
std::string trace_svg(const std::vector<double>& x, const std::vector<double>& y,
                      const std::string& title);

// Writes results.json, samples.csv, the plot SVGs, and manifest.json (written
// atomically, includes timestamps and the emitted file list) into out_dir.
// Returns the list of files written.
std::vector<std::string> emit_outputs(const ExperimentResult& result,
                                      const ExperimentConfig& config,
                                      const std::string& out_dir);

}  // namespace lf
