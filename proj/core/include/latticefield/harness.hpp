#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "latticefield/fields.hpp"
#include "latticefield/sums.hpp"
#include "latticefield/weights.hpp"

namespace lf {

struct TestOutcome {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string note;
};

struct ExperimentResult {
  std::string experiment;
  std::vector<TestOutcome> tests;
  std::map<std::string, double> scalars;  // named statistics with their errors
  std::vector<std::string> column_names;  // per-replication output columns
  std::vector<std::vector<double>> columns;
  double runtime_seconds = 0.0;
  std::uint64_t seed = 0;
  std::string config_hash;  // filled by the CLI layer

  bool passed() const;
};

// seed stream for replication i; worker count never changes it
std::uint64_t sample_seed(std::uint64_t seed, int index);

// samples[i] = S(seed stream i) / normalizer, sharded across workers by
// index; identical output for any worker count.
std::vector<double> replicate_sums(const FieldModel& model, const WeightScheme& scheme, int reps,
                                   std::uint64_t seed, int workers, double normalizer,
                                   std::optional<Coord> truncation = std::nullopt,
                                   bool force_direct = false);

enum class Normalization { by_sigma_n, by_b_n };

struct CltOptions {
  Normalization normalization = Normalization::by_b_n;
  int reps = 10000;
  std::uint64_t seed = 1;
  int workers = 1;
  double ks_level = 0.01;
  double variance_rel_tol = 0.05;
  double sigma_floor = 1e-9;  // minimum sigma_n^2 / b_n^2 accepted for by_sigma_n
  std::optional<Coord> truncation;
  std::optional<double> sigma_n2;  // Var(S_n); computed exactly for kernel fields
  std::optional<double> sigma2;    // limit variance; computed for kernel fields
  std::vector<std::string> tests{"ks_normal", "variance_ratio"};
  bool force_direct = false;
};

// Replicates S_n under the chosen normalization and tests normality plus the
// variance ratio. by_sigma_n refuses degenerate schemes (sigma_n^2 / b_n^2
// under the floor), mirroring the liminf hypothesis of the CLT.
ExperimentResult run_clt(const FieldModel& model, const WeightScheme& scheme,
                         const CltOptions& opts);

// Empirical Lindeberg sum for the m-dependent blocks:
// (1/sigma_n^2) sum_j E[(b_j X_j)^2 ; |b_j X_j| > eps sigma_n].
double heinrich_lindeberg_sum(const FieldModel& model, const WeightScheme& scheme, double eps,
                              int reps, std::uint64_t seed);

struct Example1Options {
  Example1Params even_params = Example1Params::paper(2);
  int even_k = 2;
  Example1Params odd_params = Example1Params::small(3);
  int odd_k = 3;
  int reps = 10000;
  std::uint64_t seed = 1;
  int workers = 1;
  double level = 0.01;
  bool full_sum = false;  // default statistic is the single layer k
};

// Z_k = S_{n_k}(layer k) / (alpha_k sqrt(n_k)) at one even and one odd k.
// Even k should look N(0,2); odd k should be non-normal and match the
// count-representation simulation (difference of two binomial counts).
ExperimentResult run_counterexample1(const Example1Options& opts);

struct Example2Options {
  int n_max = 16;
  InnovationSpec innovation = InnovationSpec::rademacher();
  int mc_reps = 4000;
  std::vector<int> mc_check_n{6, 9, 12};
  std::uint64_t seed = 1;
  double spread_min = 1.5;   // required adjacent-step ratio spread for n >= 8
  double liminf_floor = 0.1;
};

// Exact variance recursion for the oscillating index sets; certifies that
// Var(S_n)/|Gamma_n| stays bounded away from 0 but does not converge.
ExperimentResult run_counterexample2(const Example2Options& opts);

struct FddPoint {
  std::string label;
  std::shared_ptr<WeightScheme> scheme;
};

struct FddOptions {
  int reps = 10000;
  std::uint64_t seed = 1;
  int workers = 1;
  double normalizer = 1.0;  // each sum divided by this before covariances
  std::vector<std::vector<double>> target;  // limit covariance matrix, may be empty
  double rel_tol = 0.10;
  std::optional<Coord> truncation;
};

// Empirical covariance matrix of the normalized sums at several evaluation
// points (same innovation realization per replication) against the limit
// kernel.
ExperimentResult run_fdd_covariance(const FieldModel& model, const std::vector<FddPoint>& points,
                                    const FddOptions& opts);

struct PathOptions {
  int reps = 200;
  std::uint64_t seed = 1;
  int workers = 1;
  double normalizer = 1.0;
  std::optional<Coord> truncation;
};

// Replicated normalized paths over a grid of evaluation points; points with
// empty support (t = 0) give the zero column. No tightness claim is tested.
ExperimentResult run_path_export(const FieldModel& model, const std::vector<FddPoint>& points,
                                 const PathOptions& opts);

}  // namespace lf
