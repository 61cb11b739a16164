#include "latticefield/dependence.hpp"

#include <algorithm>
#include <cmath>

#include "latticefield/stats.hpp"
#include "latticefield/sums.hpp"

namespace lf {

namespace {

constexpr std::uint64_t kOuterStride = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kInnerStride = 0xc2b2ae3d27d4eb4fULL;
constexpr int kBatches = 10;

double batch_se(const std::vector<double>& batch_values) {
  MeanVar mv;
  for (double v : batch_values) mv.add(v);
  return mv.standard_error();
}

}  // namespace

double delta_p_analytic(const KernelFieldModel& model, int p) {
  const double mp = model.innovation().spec().abs_moment(p);  // throws on unsupported p
  return std::pow(mp, 1.0 / p) * model.kernel_abs_sum();
}

McEstimate projection_norm_monte_carlo(const FieldModel& model, const LatticePoint& i, int p,
                                       const NestedMcOptions& opts) {
  if (opts.n_inner < 2) throw std::invalid_argument("delta_p_monte_carlo: n_inner >= 2");
  if (opts.n_outer < kBatches) throw std::invalid_argument("delta_p_monte_carlo: n_outer too small");
  const int d = model.dimension();
  const auto& spec = model.innovation().spec();
  const auto n_delta = std::size_t{1} << static_cast<std::size_t>(d);

  // quadrant membership s <= -delta (componentwise)
  auto in_quadrant = [&](const LatticePoint& s, std::size_t delta) {
    for (int q = 0; q < d; ++q)
      if (s[static_cast<std::size_t>(q)] > -static_cast<Coord>((delta >> q) & 1u)) return false;
    return true;
  };

  // p = 2 uses a split-sample product: two independent inner means multiply
  // to an unbiased estimate of (P_0 X_i)^2, removing the O(1/n_inner) noise
  // inflation of the plug-in |mean|^p. Other p keep the plug-in estimator.
  const bool split = (p == 2);
  const int half = opts.n_inner / 2;

  std::vector<double> batch_means(kBatches, 0.0);
  std::vector<int> batch_counts(kBatches, 0);
  for (int o = 0; o < opts.n_outer; ++o) {
    const std::uint64_t outer_key = mix64(opts.seed + static_cast<std::uint64_t>(o) * kOuterStride);
    const std::uint64_t base_seed = mix64(outer_key ^ 0xa5a5a5a5a5a5a5a5ULL);
    double p0_full = 0.0, p0_a = 0.0, p0_b = 0.0;
    for (std::size_t delta = 0; delta < n_delta; ++delta) {
      int parity = 0;
      for (int q = 0; q < d; ++q) parity += static_cast<int>((delta >> q) & 1u);
      const double sign = parity % 2 == 0 ? 1.0 : -1.0;
      double sum_a = 0.0, sum_b = 0.0;
      for (int t = 0; t < opts.n_inner; ++t) {
        // common random numbers: the redraw stream depends on t only, not delta
        const std::uint64_t redraw_seed =
            mix64(outer_key + static_cast<std::uint64_t>(t + 1) * kInnerStride);
        auto source = [&](const LatticePoint& s) {
          const std::uint64_t seed = in_quadrant(s, delta) ? base_seed : redraw_seed;
          return InnovationField::draw_from_key(spec, site_key(seed, s));
        };
        (t < half ? sum_a : sum_b) += model.evaluate_under(source, i);
      }
      p0_full += sign * (sum_a + sum_b) / static_cast<double>(opts.n_inner);
      p0_a += sign * sum_a / static_cast<double>(half);
      p0_b += sign * sum_b / static_cast<double>(opts.n_inner - half);
    }
    const int b = o % kBatches;
    batch_means[static_cast<std::size_t>(b)] +=
        split ? p0_a * p0_b : std::pow(std::abs(p0_full), p);
    batch_counts[static_cast<std::size_t>(b)] += 1;
  }
  std::vector<double> batch_norms(kBatches);
  double total = 0.0;
  int total_n = 0;
  for (int b = 0; b < kBatches; ++b) {
    total += batch_means[static_cast<std::size_t>(b)];
    total_n += batch_counts[static_cast<std::size_t>(b)];
    batch_norms[static_cast<std::size_t>(b)] = std::pow(
        std::max(0.0, batch_means[static_cast<std::size_t>(b)] /
                          batch_counts[static_cast<std::size_t>(b)]),
        1.0 / p);
  }
  McEstimate est;
  est.value = std::pow(std::max(0.0, total / total_n), 1.0 / p);
  est.se = batch_se(batch_norms);
  return est;
}

McEstimate delta_p_monte_carlo(const FieldModel& model, int p, const NestedMcOptions& opts) {
  McEstimate total;
  double shell_sum = 0.0;
  double se_sq = 0.0;
  for (const auto& i : linf_ball(model.dimension(), opts.window_radius)) {
    NestedMcOptions site_opts = opts;
    site_opts.seed = mix64(opts.seed ^ PointHash{}(i));
    const auto est = projection_norm_monte_carlo(model, i, p, site_opts);
    total.value += est.value;
    se_sq += est.se * est.se;
    if (linf_norm(i) == opts.window_radius) shell_sum += est.value;
  }
  total.se = std::sqrt(se_sq);
  total.tail_warning = shell_sum > 0.1 * total.value;
  return total;
}

double sigma2_analytic(const KernelFieldModel& model) {
  const double s = model.kernel_sum();
  return model.innovation().spec().abs_moment(2) * s * s;
}

double covariance_abs_sum_analytic(const KernelFieldModel& model) {
  // Cov(X_0, X_j) = m_2 sum_k a_k a_{k+j}; support |j|inf <= 2R
  const double m2 = model.innovation().spec().abs_moment(2);
  double total = 0.0;
  for (const auto& j : linf_ball(model.dimension(), 2 * model.dependence_radius())) {
    double c = 0.0;
    for (const auto& e : model.kernel()) c += e.coeff * model.coefficient(add(e.offset, j));
    total += std::abs(m2 * c);
  }
  return total;
}

namespace {

// shared covariance scan: per-batch Cov(X_0, X_j) over the window
struct CovarianceScan {
  std::vector<LatticePoint> window;
  // [batch][site] accumulators
  std::vector<std::vector<double>> sum_xy;
  std::vector<std::vector<double>> sum_y;
  std::vector<double> sum_x;
  std::vector<int> count;

  CovarianceScan(const FieldModel& model, int radius, int n_samples, std::uint64_t seed) {
    window = linf_ball(model.dimension(), radius);
    sum_xy.assign(kBatches, std::vector<double>(window.size(), 0.0));
    sum_y.assign(kBatches, std::vector<double>(window.size(), 0.0));
    sum_x.assign(kBatches, 0.0);
    count.assign(kBatches, 0);
    const auto o0 = origin(model.dimension());
    for (int s = 0; s < n_samples; ++s) {
      auto m = reseed(model, mix64(seed + static_cast<std::uint64_t>(s) * kOuterStride));
      const double x0 = m->evaluate(o0);
      const int b = s % kBatches;
      sum_x[static_cast<std::size_t>(b)] += x0;
      count[static_cast<std::size_t>(b)] += 1;
      for (std::size_t j = 0; j < window.size(); ++j) {
        const double xj = m->evaluate(window[j]);
        sum_xy[static_cast<std::size_t>(b)][j] += x0 * xj;
        sum_y[static_cast<std::size_t>(b)][j] += xj;
      }
    }
  }

  // per-batch window covariance sums; absolute: sum |Cov|, else signed sum
  std::vector<double> batch_sums(bool absolute, int radius, double* shell_out) const {
    std::vector<double> out(kBatches, 0.0);
    double shell = 0.0;
    for (std::size_t j = 0; j < window.size(); ++j) {
      double pooled = 0.0;
      for (int b = 0; b < kBatches; ++b) {
        const auto ub = static_cast<std::size_t>(b);
        const double n = count[ub];
        const double cov = sum_xy[ub][j] / n - (sum_x[ub] / n) * (sum_y[ub][j] / n);
        out[ub] += absolute ? std::abs(cov) : cov;
        pooled += (absolute ? std::abs(cov) : cov) / kBatches;
      }
      if (linf_norm(window[j]) == radius) shell += std::abs(pooled);
    }
    if (shell_out) *shell_out = shell;
    return out;
  }
};

McEstimate scan_estimate(const FieldModel& model, int radius, int n_samples, std::uint64_t seed,
                         bool absolute) {
  CovarianceScan scan(model, radius, n_samples, seed);
  double shell = 0.0;
  const auto batches = scan.batch_sums(absolute, radius, &shell);
  MeanVar mv;
  for (double v : batches) mv.add(v);
  McEstimate est;
  est.value = mv.mean;
  est.se = mv.standard_error();
  est.tail_warning = shell > 0.1 * std::abs(est.value) && std::abs(est.value) > 0;
  return est;
}

}  // namespace

McEstimate sigma2_monte_carlo(const FieldModel& model, int window_radius, int n_samples,
                              std::uint64_t seed) {
  return scan_estimate(model, window_radius, n_samples, seed, false);
}

McEstimate covariance_abs_sum_monte_carlo(const FieldModel& model, int window_radius,
                                          int n_samples, std::uint64_t seed) {
  return scan_estimate(model, window_radius, n_samples, seed, true);
}

double star_increment_norm(const InnovationSpec& spec, int p) {
  switch (spec.dist) {
    case Distribution::Rademacher:
      // |eps - eps*| is 2 with probability 1/2
      return 2.0 * std::pow(0.5, 1.0 / p);
    case Distribution::StandardGaussian:
      // eps - eps* ~ N(0, 2)
      return std::sqrt(2.0) * std::pow(spec.abs_moment(p), 1.0 / p);
    case Distribution::UniformUnitInterval:
      // E|U - V|^p = 2 / ((p+1)(p+2))
      return std::pow(2.0 / ((p + 1.0) * (p + 2.0)), 1.0 / p);
    case Distribution::TwoPoint: {
      const double q = spec.prob;
      const double e = 2.0 * q * (1.0 - q) * std::pow(std::abs(spec.a - spec.b), p);
      return std::pow(e, 1.0 / p);
    }
  }
  throw std::logic_error("unreachable");
}

double wu_coefficient_analytic(const KernelFieldModel& model, int p) {
  return star_increment_norm(model.innovation().spec(), p) * model.kernel_abs_sum();
}

McEstimate wu_coefficient_monte_carlo(const FieldModel& model, int p, int window_radius,
                                      int n_samples, std::uint64_t seed) {
  const auto window = linf_ball(model.dimension(), window_radius);
  std::vector<std::vector<double>> batch_moment(window.size(),
                                                std::vector<double>(kBatches, 0.0));
  std::vector<int> counts(kBatches, 0);
  for (int s = 0; s < n_samples; ++s) {
    auto m = reseed(model, mix64(seed + static_cast<std::uint64_t>(s) * kOuterStride));
    auto star = m->star();
    const int b = s % kBatches;
    counts[static_cast<std::size_t>(b)] += 1;
    for (std::size_t j = 0; j < window.size(); ++j) {
      const double diff = m->evaluate(window[j]) - star->evaluate(window[j]);
      batch_moment[j][static_cast<std::size_t>(b)] += std::pow(std::abs(diff), p);
    }
  }
  std::vector<double> batch_totals(kBatches, 0.0);
  McEstimate est;
  double shell = 0.0;
  for (std::size_t j = 0; j < window.size(); ++j) {
    double pooled = 0.0;
    int pooled_n = 0;
    for (int b = 0; b < kBatches; ++b) {
      const auto ub = static_cast<std::size_t>(b);
      pooled += batch_moment[j][ub];
      pooled_n += counts[ub];
      batch_totals[ub] += std::pow(batch_moment[j][ub] / counts[ub], 1.0 / p);
    }
    const double norm_j = std::pow(pooled / pooled_n, 1.0 / p);
    est.value += norm_j;
    if (linf_norm(window[j]) == window_radius) shell += norm_j;
  }
  est.se = batch_se(batch_totals);
  est.tail_warning = shell > 0.1 * est.value && est.value > 0;
  return est;
}

DependenceReport dependence_report(const FieldModel& model, const DependenceOptions& opts) {
  DependenceReport report;
  if (const auto* kernel = dynamic_cast<const KernelFieldModel*>(&model)) {
    report.method = "analytic";
    for (int p : opts.p_orders) report.delta_p[p] = delta_p_analytic(*kernel, p);
    report.wu2 = wu_coefficient_analytic(*kernel, 2);
    report.cov_sum_abs = covariance_abs_sum_analytic(*kernel);
    report.sigma2 = sigma2_analytic(*kernel);
    return report;
  }
  report.method = "monte_carlo";
  for (int p : opts.p_orders) {
    const auto est = delta_p_monte_carlo(model, p, opts.nested);
    report.delta_p[p] = est.value;
    report.delta_p_se[p] = est.se;
    report.tail_warning = report.tail_warning || est.tail_warning;
  }
  const int radius = opts.nested.window_radius;
  const auto wu = wu_coefficient_monte_carlo(model, 2, radius, opts.n_samples, opts.nested.seed);
  report.wu2 = wu.value;
  report.wu2_se = wu.se;
  const auto cov = covariance_abs_sum_monte_carlo(model, radius, opts.n_samples, opts.nested.seed);
  report.cov_sum_abs = cov.value;
  report.cov_sum_abs_se = cov.se;
  const auto s2 = sigma2_monte_carlo(model, radius, opts.n_samples, opts.nested.seed);
  report.sigma2 = s2.value;
  report.sigma2_se = s2.se;
  report.tail_warning = report.tail_warning || s2.tail_warning;
  return report;
}

}  // namespace lf
