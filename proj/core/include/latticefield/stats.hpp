#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace lf {

double normal_cdf(double x);
// Inverse of the standard normal CDF (Acklam's rational approximation,
// refined by one Halley step; |error| < 1e-12 on (0,1)).
double normal_quantile(double p);

// One-sample Kolmogorov-Smirnov distance sup|F_n - F|. Sorts a copy.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

// Two-sample KS distance between empirical CDFs. Sorts copies.
double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b);

// Asymptotic critical value sqrt(-log(alpha/2)/2) / sqrt(n); valid for n >= 35.
double ks_critical_value(std::size_t n, double alpha);
double ks_critical_value_two_sample(std::size_t n, std::size_t m, double alpha);

// Regularized incomplete gamma P(a, x) and Q(a, x) = 1 - P(a, x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Upper tail p-value of a chi-square statistic with dof degrees of freedom.
double chi_square_pvalue(double stat, int dof);

// Chi-square goodness-of-fit on pre-binned counts vs expected counts
// (expected from a model, dof = #bins - 1 - extra_constraints).
double chi_square_statistic(const std::vector<double>& observed,
                            const std::vector<double>& expected);

struct MeanVar {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;  // sum of squared deviations

  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  // Associative merge; replication shards combine with this.
  void merge(const MeanVar& o) {
    if (o.n == 0) return;
    if (n == 0) { *this = o; return; }
    const double d = o.mean - mean;
    const double nn = static_cast<double>(n + o.n);
    m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) / nn;
    mean = (mean * static_cast<double>(n) + o.mean * static_cast<double>(o.n)) / nn;
    n += o.n;
  }
  double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
  double stddev() const;
  double standard_error() const;
};

double sample_mean(const std::vector<double>& v);
double sample_variance(const std::vector<double>& v);

// Monte Carlo standard error of the sample variance (uses the fourth moment).
double variance_standard_error(const std::vector<double>& v);

}  // namespace lf
