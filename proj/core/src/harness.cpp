#include "latticefield/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "latticefield/stats.hpp"

namespace lf {

bool ExperimentResult::passed() const {
  for (const auto& t : tests)
    if (!t.pass) return false;
  return true;
}

std::uint64_t sample_seed(std::uint64_t seed, int index) {
  return mix64(seed + (static_cast<std::uint64_t>(index) + 1) * 0x9e3779b97f4a7c15ULL);
}

namespace {

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// fn(seed_i, i) -> value; output independent of the worker count because
// replication i always uses seed stream i.
template <typename Fn>
std::vector<double> replicate(int reps, std::uint64_t seed, int workers, const Fn& fn) {
  if (reps < 1) throw std::invalid_argument("replicate: reps >= 1");
  std::vector<double> out(static_cast<std::size_t>(reps));
  workers = std::clamp(workers, 1, reps);
  auto work = [&](int w) {
    for (int i = w; i < reps; i += workers)
      out[static_cast<std::size_t>(i)] = fn(sample_seed(seed, i), i);
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  return out;
}

const FieldModel& effective_model(const FieldModel& model, const std::optional<Coord>& truncation,
                                  std::shared_ptr<FieldModel>& keepalive) {
  if (!truncation.has_value()) return model;
  keepalive = model.truncate(*truncation);
  return *keepalive;
}

TestOutcome make_outcome(std::string name, double stat, double threshold, bool pass,
                         std::string note = {}) {
  TestOutcome t;
  t.name = std::move(name);
  t.statistic = stat;
  t.threshold = threshold;
  t.pass = pass;
  t.note = std::move(note);
  return t;
}

}  // namespace

std::vector<double> replicate_sums(const FieldModel& model, const WeightScheme& scheme, int reps,
                                   std::uint64_t seed, int workers, double normalizer,
                                   std::optional<Coord> truncation, bool force_direct) {
  if (normalizer == 0.0) throw std::invalid_argument("replicate_sums: zero normalizer");
  std::shared_ptr<FieldModel> keep;
  const FieldModel& eff = effective_model(model, truncation, keep);
  if (!force_direct) {
    if (const auto* kernel = dynamic_cast<const KernelFieldModel*>(&eff)) {
      CompiledSum compiled(*kernel, scheme);
      const InnovationSpec spec = kernel->innovation().spec();
      const int dim = kernel->dimension();
      return replicate(reps, seed, workers, [&](std::uint64_t s, int) {
        InnovationField innov(spec, s, dim);
        return compiled.evaluate(innov) / normalizer;
      });
    }
  }
  return replicate(reps, seed, workers, [&](std::uint64_t s, int) {
    return sample_sum(eff, scheme, s, std::nullopt, force_direct) / normalizer;
  });
}

ExperimentResult run_clt(const FieldModel& model, const WeightScheme& scheme,
                         const CltOptions& opts) {
  Timer timer;
  if (opts.reps < 100) throw std::invalid_argument("run_clt: reps >= 100");
  const double bn = scheme.norm();
  if (bn <= 0.0) throw std::invalid_argument("run_clt: degenerate scheme, b_n = 0");

  std::shared_ptr<FieldModel> keep;
  const FieldModel& eff = effective_model(model, opts.truncation, keep);
  const auto* kernel = dynamic_cast<const KernelFieldModel*>(&eff);

  double sigma_n2;
  if (opts.sigma_n2.has_value()) {
    sigma_n2 = *opts.sigma_n2;
  } else if (kernel) {
    sigma_n2 = exact_variance(*kernel, scheme);
  } else {
    const int pilot = std::max(2000, opts.reps / 5);
    const auto s = replicate_sums(eff, scheme, pilot, mix64(opts.seed ^ 0x70696c6f74ULL),
                                  opts.workers, 1.0, std::nullopt, opts.force_direct);
    sigma_n2 = sample_variance(s);
  }
  std::optional<double> sigma2 = opts.sigma2;
  if (kernel && !sigma2.has_value()) {
    const double ks = kernel->kernel_sum();
    sigma2 = kernel->innovation().spec().abs_moment(2) * ks * ks;
  }

  const bool by_sigma = opts.normalization == Normalization::by_sigma_n;
  if (by_sigma && sigma_n2 / (bn * bn) < opts.sigma_floor)
    throw std::invalid_argument(
        "run_clt: sigma_n^2/b_n^2 below floor; by_sigma_n normalization needs a "
        "nondegenerate limit variance");
  const double normalizer = by_sigma ? std::sqrt(sigma_n2) : bn;

  const auto samples = replicate_sums(eff, scheme, opts.reps, opts.seed, opts.workers, normalizer,
                                      std::nullopt, opts.force_direct);

  const double target_var = by_sigma ? 1.0 : sigma_n2 / (bn * bn);
  const double limit_var = by_sigma ? 1.0 : sigma2.value_or(target_var);
  const double emp_var = sample_variance(samples);

  ExperimentResult result;
  result.experiment = "clt";
  result.seed = opts.seed;
  result.column_names = {"sample"};
  result.columns = {samples};
  result.scalars["b_n"] = bn;
  result.scalars["sigma_n2"] = sigma_n2;
  if (sigma2.has_value()) result.scalars["sigma2"] = *sigma2;
  if (sigma2.has_value() && *sigma2 > 0.0)
    result.scalars["sigma_ratio"] = std::sqrt(sigma_n2) / (bn * std::sqrt(*sigma2));
  result.scalars["empirical_mean"] = sample_mean(samples);
  result.scalars["empirical_variance"] = emp_var;
  result.scalars["empirical_variance_se"] = variance_standard_error(samples);

  for (const auto& test : opts.tests) {
    if (test == "ks_normal") {
      if (limit_var <= 1e-12)
        throw std::invalid_argument("run_clt: ks_normal needs a nondegenerate limit variance");
      const double sd = std::sqrt(limit_var);
      const double ks =
          ks_statistic(samples, [sd](double x) { return normal_cdf(x / sd); });
      const double crit = ks_critical_value(samples.size(), opts.ks_level);
      result.tests.push_back(make_outcome("ks_normal", ks, crit, ks < crit,
                                          "KS distance to the limit normal"));
    } else if (test == "variance_ratio") {
      const double stat = std::abs(emp_var / target_var - 1.0);
      result.tests.push_back(make_outcome("variance_ratio", stat, opts.variance_rel_tol,
                                          stat <= opts.variance_rel_tol,
                                          "relative deviation from the exact variance"));
    } else {
      throw std::invalid_argument("run_clt: unknown test " + test);
    }
  }
  result.runtime_seconds = timer.seconds();
  return result;
}

double heinrich_lindeberg_sum(const FieldModel& model, const WeightScheme& scheme, double eps,
                              int reps, std::uint64_t seed) {
  if (eps <= 0.0 || reps < 1) throw std::invalid_argument("heinrich_lindeberg_sum: bad arguments");
  double sigma_n2;
  if (const auto* kernel = dynamic_cast<const KernelFieldModel*>(&model)) {
    sigma_n2 = exact_variance(*kernel, scheme);
  } else {
    sigma_n2 = sample_variance(
        replicate_sums(model, scheme, std::max(reps, 2000), mix64(seed ^ 0x70696c6f74ULL), 1, 1.0));
  }
  if (sigma_n2 <= 0.0) throw std::invalid_argument("heinrich_lindeberg_sum: degenerate variance");
  const double cut = eps * std::sqrt(sigma_n2);
  MeanVar acc;
  for (int i = 0; i < reps; ++i) {
    auto m = reseed(model, sample_seed(seed, i));
    double s = 0.0;
    scheme.for_each([&](const LatticePoint& j, double b) {
      const double term = b * m->evaluate(j);
      if (std::abs(term) > cut) s += term * term;
    });
    acc.add(s);
  }
  return acc.mean / sigma_n2;
}

namespace {

int layer_label(double omega, const std::vector<double>& d_seq, int k) {
  return example1_labels(omega, d_seq, k).back();
}

// Z_k = sum_{n=0}^{n_k-1} (label_k(w_n) - label_k(w_{n-n_k})) / sqrt(d_k n_k);
// full-sum variant aggregates every layer and renormalizes by alpha_k.
double example1_statistic(const Example1Params& p, int k, std::uint64_t seed, bool full_sum) {
  InnovationField omega(InnovationSpec::uniform01(), seed, 1);
  const auto uk = static_cast<std::size_t>(k - 1);
  const Coord nk = p.n_seq[uk];
  if (!full_sum) {
    double acc = 0.0;
    for (Coord n = 0; n < nk; ++n) {
      acc += layer_label(omega.value({n}), p.d_seq, k) -
             layer_label(omega.value({n - nk}), p.d_seq, k);
    }
    return acc / std::sqrt(p.d_seq[uk] * static_cast<double>(nk));
  }
  const Coord n_max = *std::max_element(p.n_seq.begin(), p.n_seq.end());
  // labels for every needed site, indexed by site + n_max
  std::vector<std::vector<int>> labels(static_cast<std::size_t>(n_max + nk));
  for (Coord s = -n_max; s < nk; ++s)
    labels[static_cast<std::size_t>(s + n_max)] = example1_labels(omega.value({s}), p.d_seq, p.k_max);
  double sum = 0.0;
  for (Coord n = 0; n < nk; ++n) {
    for (int l = 1; l <= p.k_max; ++l) {
      const auto ul = static_cast<std::size_t>(l - 1);
      const auto& here = labels[static_cast<std::size_t>(n + n_max)];
      const auto& back = labels[static_cast<std::size_t>(n - p.n_seq[ul] + n_max)];
      sum += p.alpha[ul] * (here[ul] - back[ul]) / std::sqrt(p.d_seq[ul]);
    }
  }
  return sum / (p.alpha[uk] * std::sqrt(static_cast<double>(nk)));
}

// Same law as the odd-layer statistic: 2 n_k trials, each +1 or -1 with
// probability 1/(2 n_k), summed.
double example1_count_statistic(Coord nk, std::uint64_t seed) {
  const std::uint64_t key = site_key(seed, {0});
  const double q = 1.0 / (2.0 * static_cast<double>(nk));
  double z = 0.0;
  for (Coord t = 0; t < 2 * nk; ++t) {
    const double u = u64_to_unit(site_draw(key, static_cast<std::uint64_t>(t)));
    if (u <= q)
      z += 1.0;
    else if (u <= 2.0 * q)
      z -= 1.0;
  }
  return z;
}

std::vector<double> standardized(std::vector<double> v) {
  MeanVar mv;
  for (double x : v) mv.add(x);
  const double sd = mv.stddev();
  if (sd <= 0.0) throw std::invalid_argument("standardized: constant sample");
  for (double& x : v) x = (x - mv.mean) / sd;
  return v;
}

// chi-square p-value of an integer-valued sample against the difference of
// two independent Poisson(1) counts, tails pooled at |z| >= 5
double skellam_chi2_pvalue(const std::vector<double>& sample) {
  std::vector<double> pois(26, 0.0);
  pois[0] = std::exp(-1.0);
  for (std::size_t i = 1; i < pois.size(); ++i) pois[i] = pois[i - 1] / static_cast<double>(i);
  const int span = 4;
  std::vector<double> prob(2 * span + 3, 0.0);  // [-5+] , -4..4, [5+]
  double interior = 0.0;
  for (int z = -span; z <= span; ++z) {
    double pz = 0.0;
    for (int m = std::max(0, -z); m + z < static_cast<int>(pois.size()) && m < static_cast<int>(pois.size()); ++m)
      pz += pois[static_cast<std::size_t>(m)] * pois[static_cast<std::size_t>(m + z)];
    prob[static_cast<std::size_t>(z + span + 1)] = pz;
    interior += pz;
  }
  prob.front() = prob.back() = (1.0 - interior) / 2.0;
  std::vector<double> observed(prob.size(), 0.0);
  for (double x : sample) {
    const int z = static_cast<int>(std::lround(x));
    const int bin = std::clamp(z, -span - 1, span + 1) + span + 1;
    observed[static_cast<std::size_t>(bin)] += 1.0;
  }
  std::vector<double> expected;
  expected.reserve(prob.size());
  const double n = static_cast<double>(sample.size());
  for (double pr : prob) expected.push_back(std::max(pr, 1e-12) * n);
  const double stat = chi_square_statistic(observed, expected);
  return chi_square_pvalue(stat, static_cast<int>(prob.size()) - 1);
}

}  // namespace

ExperimentResult run_counterexample1(const Example1Options& opts) {
  Timer timer;
  if (opts.reps < 2000)
    throw std::invalid_argument("run_counterexample1: the discrete odd-layer limit needs >= 2000 replications");
  if (opts.even_k % 2 != 0 || opts.even_k < 1 || opts.even_k > opts.even_params.k_max)
    throw std::invalid_argument("run_counterexample1: even_k must be even and <= k_max");
  if (opts.odd_k % 2 != 1 || opts.odd_k > opts.odd_params.k_max)
    throw std::invalid_argument("run_counterexample1: odd_k must be odd and <= k_max");

  const auto even = replicate(opts.reps, mix64(opts.seed ^ 0x6576656eULL), opts.workers,
                              [&](std::uint64_t s, int) {
                                return example1_statistic(opts.even_params, opts.even_k, s,
                                                          opts.full_sum);
                              });
  const auto odd = replicate(opts.reps, mix64(opts.seed ^ 0x6f6464ULL), opts.workers,
                             [&](std::uint64_t s, int) {
                               return example1_statistic(opts.odd_params, opts.odd_k, s,
                                                         opts.full_sum);
                             });
  const Coord nk_odd = opts.odd_params.n_seq[static_cast<std::size_t>(opts.odd_k - 1)];
  const auto count = replicate(opts.reps, mix64(opts.seed ^ 0x636f756e74ULL), opts.workers,
                               [&](std::uint64_t s, int) {
                                 return example1_count_statistic(nk_odd, s);
                               });

  ExperimentResult result;
  result.experiment = "counterexample1";
  result.seed = opts.seed;
  result.column_names = {"even_z", "odd_z", "odd_count_z"};
  result.columns = {even, odd, count};

  const double crit1 = ks_critical_value(even.size(), opts.level);
  const double crit2 = ks_critical_value_two_sample(even.size(), odd.size(), opts.level);
  const double sqrt2 = std::sqrt(2.0);

  const double ks_even =
      ks_statistic(even, [sqrt2](double x) { return normal_cdf(x / sqrt2); });
  result.tests.push_back(make_outcome("even_ks_normal02", ks_even, crit1, ks_even < crit1,
                                      "even layer vs N(0,2)"));

  const double ks_odd = ks_statistic(standardized(odd), [](double x) { return normal_cdf(x); });
  result.tests.push_back(make_outcome("odd_non_normal", ks_odd, crit1, ks_odd > crit1,
                                      "pass means normality is rejected"));

  const double ks_match = ks_statistic_two_sample(odd, count);
  result.tests.push_back(make_outcome("odd_matches_count_law", ks_match, crit2, ks_match < crit2,
                                      "odd layer vs direct count-representation simulation"));

  const double ks_distinct = ks_statistic_two_sample(standardized(even), standardized(odd));
  result.tests.push_back(make_outcome("even_odd_distinct", ks_distinct, crit2,
                                      ks_distinct > crit2,
                                      "pass means the standardized laws differ"));

  result.scalars["even_variance"] = sample_variance(even);
  result.scalars["odd_variance"] = sample_variance(odd);
  result.scalars["odd_chi2_skellam_pvalue"] = skellam_chi2_pvalue(odd);  // diagnostic only
  result.runtime_seconds = timer.seconds();
  return result;
}

ExperimentResult run_counterexample2(const Example2Options& opts) {
  Timer timer;
  if (opts.n_max < 9 || opts.n_max > 20)
    throw std::invalid_argument("run_counterexample2: n_max in [9, 20]");
  const double m2 = opts.innovation.abs_moment(2);
  auto model = make_difference_field(InnovationField(opts.innovation, opts.seed, 1));

  std::vector<std::vector<LatticePoint>> gammas;
  gammas.reserve(static_cast<std::size_t>(opts.n_max));
  for (int n = 1; n <= opts.n_max; ++n) gammas.push_back(example2_gamma(n));

  double size_dev = 0.0;
  std::vector<double> variances(static_cast<std::size_t>(opts.n_max));
  for (int n = 1; n <= opts.n_max; ++n) {
    const auto& g = gammas[static_cast<std::size_t>(n - 1)];
    size_dev = std::max(size_dev,
                        std::abs(static_cast<double>(g.size()) - std::pow(2.0, n)));
    variances[static_cast<std::size_t>(n - 1)] =
        exact_variance(*model, IndexSetWeights(g));
  }

  // appended blocks B_n = Gamma_{n+1} \ Gamma_n (the builder appends in order)
  double block_dev = 0.0, additivity_dev = 0.0;
  for (int n = 1; n < opts.n_max; ++n) {
    const auto& big = gammas[static_cast<std::size_t>(n)];
    std::vector<LatticePoint> block(big.begin() + (Coord{1} << n), big.end());
    const double var_b = exact_variance(*model, IndexSetWeights(block));
    const double expected = (n % 2 == 0) ? 2.0 * m2 : std::pow(2.0, n + 1) * m2;
    block_dev = std::max(block_dev, std::abs(var_b / expected - 1.0));
    additivity_dev = std::max(
        additivity_dev, std::abs(variances[static_cast<std::size_t>(n)] -
                                 variances[static_cast<std::size_t>(n - 1)] - var_b) /
                            variances[static_cast<std::size_t>(n)]);
  }

  std::vector<double> n_column, ratio;
  for (int n = 1; n <= opts.n_max; ++n) {
    n_column.push_back(static_cast<double>(n));
    ratio.push_back(variances[static_cast<std::size_t>(n - 1)] / std::pow(2.0, n));
  }
  double liminf = std::numeric_limits<double>::infinity(), spread = 0.0;
  for (int n = 8; n <= opts.n_max; ++n) {
    const double r = ratio[static_cast<std::size_t>(n - 1)];
    liminf = std::min(liminf, r);
    if (n < opts.n_max) {
      const double r2 = ratio[static_cast<std::size_t>(n)];
      spread = std::max(spread, std::max(r, r2) / std::min(r, r2));
    }
  }

  ExperimentResult result;
  result.experiment = "counterexample2";
  result.seed = opts.seed;
  result.column_names = {"n", "variance_ratio"};
  result.columns = {n_column, ratio};
  result.tests.push_back(make_outcome("gamma_size", size_dev, 0.5, size_dev < 0.5,
                                      "|Gamma_n| = 2^n"));
  result.tests.push_back(make_outcome("block_variance", block_dev, 1e-10, block_dev <= 1e-10,
                                      "Var(S_{B_n}) = 2 m_2 (n even) or 2^{n+1} m_2 (n odd)"));
  result.tests.push_back(make_outcome("variance_additivity", additivity_dev, 1e-10,
                                      additivity_dev <= 1e-10,
                                      "Var over Gamma_{n+1} splits into Gamma_n and B_n"));
  result.tests.push_back(make_outcome("ratio_liminf", liminf, opts.liminf_floor,
                                      liminf > opts.liminf_floor,
                                      "Var(S_n)/|Gamma_n| bounded away from 0 for n >= 8"));
  result.tests.push_back(make_outcome("ratio_spread", spread, opts.spread_min,
                                      spread >= opts.spread_min,
                                      "adjacent-step ratio oscillation certifies non-convergence"));

  for (int n : opts.mc_check_n) {
    if (n < 1 || n > opts.n_max) throw std::invalid_argument("run_counterexample2: mc_check_n out of range");
    IndexSetWeights scheme(gammas[static_cast<std::size_t>(n - 1)]);
    const auto samples = replicate_sums(*model, scheme, opts.mc_reps,
                                        mix64(opts.seed + static_cast<std::uint64_t>(n)), 1, 1.0);
    const double emp = sample_variance(samples);
    const double se = variance_standard_error(samples);
    const double exact = variances[static_cast<std::size_t>(n - 1)];
    result.tests.push_back(make_outcome("mc_variance_n" + std::to_string(n),
                                        std::abs(emp - exact), 3.0 * se,
                                        std::abs(emp - exact) <= 3.0 * se,
                                        "Monte Carlo cross-check within 3 SE"));
  }
  result.runtime_seconds = timer.seconds();
  return result;
}

namespace {

std::vector<std::vector<double>> replicate_matrix(const FieldModel& model,
                                                  const std::vector<FddPoint>& points, int reps,
                                                  std::uint64_t seed, int workers,
                                                  double normalizer,
                                                  const std::optional<Coord>& truncation) {
  std::shared_ptr<FieldModel> keep;
  const FieldModel& eff = effective_model(model, truncation, keep);
  std::vector<std::vector<double>> columns(points.size(),
                                           std::vector<double>(static_cast<std::size_t>(reps)));
  const auto* kernel = dynamic_cast<const KernelFieldModel*>(&eff);
  if (kernel) {
    std::vector<CompiledSum> compiled;
    compiled.reserve(points.size());
    for (const auto& pt : points) compiled.emplace_back(*kernel, *pt.scheme);
    const InnovationSpec spec = kernel->innovation().spec();
    const int dim = kernel->dimension();
    replicate(reps, seed, workers, [&](std::uint64_t s, int i) {
      InnovationField innov(spec, s, dim);
      for (std::size_t p = 0; p < points.size(); ++p)
        columns[p][static_cast<std::size_t>(i)] = compiled[p].evaluate(innov) / normalizer;
      return 0.0;
    });
    return columns;
  }
  replicate(reps, seed, workers, [&](std::uint64_t s, int i) {
    auto m = reseed(eff, s);
    for (std::size_t p = 0; p < points.size(); ++p) {
      double acc = 0.0;
      points[p].scheme->for_each(
          [&](const LatticePoint& j, double b) { acc += b * m->evaluate(j); });
      columns[p][static_cast<std::size_t>(i)] = acc / normalizer;
    }
    return 0.0;
  });
  return columns;
}

double column_covariance(const std::vector<double>& a, const std::vector<double>& b) {
  const double ma = sample_mean(a), mb = sample_mean(b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - ma) * (b[i] - mb);
  return s / static_cast<double>(a.size() - 1);
}

}  // namespace

ExperimentResult run_fdd_covariance(const FieldModel& model, const std::vector<FddPoint>& points,
                                    const FddOptions& opts) {
  Timer timer;
  if (points.size() < 2) throw std::invalid_argument("run_fdd_covariance: needs >= 2 points");
  if (opts.reps < 100) throw std::invalid_argument("run_fdd_covariance: reps >= 100");
  if (opts.normalizer <= 0.0) throw std::invalid_argument("run_fdd_covariance: normalizer > 0");
  for (const auto& pt : points) {
    if (!pt.scheme) throw std::invalid_argument("run_fdd_covariance: missing scheme");
    if (pt.scheme->norm() <= 0.0)
      throw std::invalid_argument("run_fdd_covariance: degenerate point " + pt.label);
  }
  if (!opts.target.empty() &&
      (opts.target.size() != points.size() || opts.target[0].size() != points.size()))
    throw std::invalid_argument("run_fdd_covariance: target matrix shape mismatch");

  auto columns = replicate_matrix(model, points, opts.reps, opts.seed, opts.workers,
                                  opts.normalizer, opts.truncation);

  ExperimentResult result;
  result.experiment = "fdd";
  result.seed = opts.seed;
  for (const auto& pt : points) result.column_names.push_back(pt.label);
  result.columns = std::move(columns);

  for (std::size_t r = 0; r < points.size(); ++r) {
    for (std::size_t s = r; s < points.size(); ++s) {
      const double emp = column_covariance(result.columns[r], result.columns[s]);
      const std::string key = points[r].label + ":" + points[s].label;
      result.scalars["cov " + key] = emp;
      if (opts.target.empty()) continue;
      const double tgt = opts.target[r][s];
      // relative tolerance against the limit entry; absolute when it vanishes
      const double stat = std::abs(emp - tgt);
      const double threshold = opts.rel_tol * std::max(std::abs(tgt), tgt == 0.0 ? 1.0 : 0.0);
      result.tests.push_back(make_outcome("cov " + key, stat, threshold, stat <= threshold,
                                          "empirical vs limit covariance"));
    }
  }
  result.runtime_seconds = timer.seconds();
  return result;
}

ExperimentResult run_path_export(const FieldModel& model, const std::vector<FddPoint>& points,
                                 const PathOptions& opts) {
  Timer timer;
  if (points.empty()) throw std::invalid_argument("run_path_export: empty grid");
  if (opts.reps < 1) throw std::invalid_argument("run_path_export: reps >= 1");
  for (const auto& pt : points)
    if (!pt.scheme) throw std::invalid_argument("run_path_export: missing scheme");

  ExperimentResult result;
  result.experiment = "paths";
  result.seed = opts.seed;
  result.columns = replicate_matrix(model, points, opts.reps, opts.seed, opts.workers,
                                    opts.normalizer, opts.truncation);
  for (std::size_t p = 0; p < points.size(); ++p) {
    result.column_names.push_back(points[p].label);
    result.scalars["var " + points[p].label] = sample_variance(result.columns[p]);
  }
  result.runtime_seconds = timer.seconds();
  return result;
}

}  // namespace lf
