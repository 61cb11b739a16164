#pragma once

#include <map>
#include <string>

#include "latticefield/fields.hpp"

namespace lf {

struct McEstimate {
  double value = 0.0;
  double se = 0.0;
  bool tail_warning = false;  // last window shell contributes > 10% of the sum
};

// Delta_p = m_p^{1/p} * sum_i |a_i| for kernel fields (P_0 X_i = a_i eps_0).
double delta_p_analytic(const KernelFieldModel& model, int p);

struct NestedMcOptions {
  int window_radius = 2;
  int n_outer = 200;
  int n_inner = 64;
  std::uint64_t seed = 1;
};

// Nested Monte Carlo estimate of Delta_p: for each i in the window, P_0 X_i
// is sampled as the 2^d alternating sum of conditional expectations, inner
// averages sharing common random numbers across the alternating terms.
McEstimate delta_p_monte_carlo(const FieldModel& model, int p, const NestedMcOptions& opts);

// ||P_0 X_i||_p for one site (same estimator, exposed for diagnostics/tests)
McEstimate projection_norm_monte_carlo(const FieldModel& model, const LatticePoint& i, int p,
                                       const NestedMcOptions& opts);

// sigma^2 = m_2 (sum_k a_k)^2, exact
double sigma2_analytic(const KernelFieldModel& model);

// sigma^2 estimated as sum over |j|inf <= window_radius of Cov(X_0, X_j)
McEstimate sigma2_monte_carlo(const FieldModel& model, int window_radius, int n_samples,
                              std::uint64_t seed);

// sum_j |Cov(X_0, X_j)|, exact for kernel fields over the full support
double covariance_abs_sum_analytic(const KernelFieldModel& model);
McEstimate covariance_abs_sum_monte_carlo(const FieldModel& model, int window_radius,
                                          int n_samples, std::uint64_t seed);

// ||eps - eps*||_p, closed form where available (p=2 always; any p for
// Rademacher and Gaussian).
double star_increment_norm(const InnovationSpec& spec, int p);

// Wu coefficient sum_j ||X_j - X_j*||_p = ||eps - eps*||_p sum_j |a_j| (exact
// for kernel fields).
double wu_coefficient_analytic(const KernelFieldModel& model, int p);
McEstimate wu_coefficient_monte_carlo(const FieldModel& model, int p, int window_radius,
                                      int n_samples, std::uint64_t seed);

struct DependenceReport {
  std::map<int, double> delta_p;
  std::map<int, double> delta_p_se;
  double wu2 = 0.0;
  double wu2_se = 0.0;
  double cov_sum_abs = 0.0;
  double cov_sum_abs_se = 0.0;
  double sigma2 = 0.0;
  double sigma2_se = 0.0;
  std::string method;  // "analytic" or "monte_carlo"
  bool tail_warning = false;
};

struct DependenceOptions {
  std::vector<int> p_orders{2};
  NestedMcOptions nested;
  int n_samples = 20000;  // for covariance-based estimates
};

DependenceReport dependence_report(const FieldModel& model, const DependenceOptions& opts);

}  // namespace lf
