#include <cmath>

#include <doctest.h>

#include "latticefield/dependence.hpp"

using namespace lf;

namespace {

KernelFieldModel gaussian_kernel(std::vector<KernelEntry> k, int dim = 1,
                                 std::uint64_t seed = 31) {
  return KernelFieldModel(std::move(k), InnovationField(InnovationSpec::gaussian(), seed, dim));
}

}  // namespace

TEST_CASE("analytic dependence coefficients for simple kernels") {
  const auto id = gaussian_kernel({{{0}, 1.0}});
  CHECK(delta_p_analytic(id, 2) == doctest::Approx(1.0));
  CHECK(sigma2_analytic(id) == doctest::Approx(1.0));
  CHECK(covariance_abs_sum_analytic(id) == doctest::Approx(1.0));

  const auto ma = gaussian_kernel({{{0}, 1.0}, {{1}, 1.0}});
  CHECK(delta_p_analytic(ma, 2) == doctest::Approx(2.0));
  CHECK(sigma2_analytic(ma) == doctest::Approx(4.0));
  // Cov(X_0, X_j): 2 at j=0, 1 at j=+-1
  CHECK(covariance_abs_sum_analytic(ma) == doctest::Approx(4.0));

  const auto planar = gaussian_kernel({{{0, 0}, 0.5}, {{1, -1}, 0.5}}, 2);
  CHECK(delta_p_analytic(planar, 2) == doctest::Approx(1.0));
  CHECK(sigma2_analytic(planar) == doctest::Approx(1.0));
}

TEST_CASE("fourth order uses the fourth absolute moment") {
  const auto m = gaussian_kernel({{{0}, 2.0}});
  // Delta_4 = (E eps^4)^{1/4} * |a_0| = 3^{1/4} * 2
  CHECK(delta_p_analytic(m, 4) == doctest::Approx(std::pow(3.0, 0.25) * 2.0));
}

TEST_CASE("covariance sum never exceeds Delta_2 squared") {
  for (auto kernel : {std::vector<KernelEntry>{{{0}, 1.0}, {{1}, 0.5}},
                      std::vector<KernelEntry>{{{0}, 1.0}, {{1}, -0.7}, {{3}, 0.2}}}) {
    const auto m = gaussian_kernel(kernel);
    const double d2 = delta_p_analytic(m, 2);
    CHECK(covariance_abs_sum_analytic(m) <= d2 * d2 + 1e-12);
  }
}

TEST_CASE("nested Monte Carlo recovers the analytic projection norm") {
  const auto m = gaussian_kernel({{{0}, 1.0}, {{1}, 0.5}});
  NestedMcOptions opts;
  opts.n_outer = 1500;
  opts.n_inner = 128;
  opts.seed = 5;
  // ||P_0 X_1||_2 = |a_1| for the linear field
  const auto est = projection_norm_monte_carlo(m, {1}, 2, opts);
  CHECK(std::abs(est.value - 0.5) < 4.0 * est.se + 0.02);
  const auto zero = projection_norm_monte_carlo(m, {-1}, 2, opts);
  CHECK(zero.value < 4.0 * zero.se + 0.02);
}

TEST_CASE("windowed Delta_2 estimate matches the analytic value") {
  const auto m = gaussian_kernel({{{0}, 1.0}, {{1}, 0.5}});
  NestedMcOptions opts;
  opts.window_radius = 2;
  opts.n_outer = 1200;
  opts.n_inner = 96;
  opts.seed = 11;
  const auto est = delta_p_monte_carlo(m, 2, opts);
  CHECK(std::abs(est.value - 1.5) < 4.0 * est.se + 0.05);
  CHECK_FALSE(est.tail_warning);
}

TEST_CASE("tail warning fires when the window cuts the kernel") {
  const auto m = gaussian_kernel({{{0}, 1.0}, {{2}, 1.0}});
  NestedMcOptions opts;
  opts.window_radius = 2;  // the kernel mass at distance 2 sits on the last shell
  opts.n_outer = 400;
  opts.n_inner = 64;
  const auto est = delta_p_monte_carlo(m, 2, opts);
  CHECK(est.tail_warning);
}

TEST_CASE("Monte Carlo sigma2 and covariance sum agree with closed forms") {
  const auto m = gaussian_kernel({{{0}, 1.0}, {{1}, 0.5}});
  const auto s2 = sigma2_monte_carlo(m, 3, 30000, 17);
  CHECK(std::abs(s2.value - sigma2_analytic(m)) < 4.0 * s2.se);
  const auto cs = covariance_abs_sum_monte_carlo(m, 3, 30000, 17);
  CHECK(std::abs(cs.value - covariance_abs_sum_analytic(m)) < 4.0 * cs.se + 0.02);
}

TEST_CASE("star increment norms") {
  CHECK(star_increment_norm(InnovationSpec::rademacher(), 2) == doctest::Approx(std::sqrt(2.0)));
  // |eps - eps*|^p is 2^p with probability 1/2: (2^p / 2)^{1/p}
  CHECK(star_increment_norm(InnovationSpec::rademacher(), 4) ==
        doctest::Approx(2.0 * std::pow(0.5, 0.25)));
  CHECK(star_increment_norm(InnovationSpec::gaussian(), 2) == doctest::Approx(std::sqrt(2.0)));
  // uniform: E|U - U'|^2 = 1/6
  CHECK(star_increment_norm(InnovationSpec::uniform01(), 2) ==
        doctest::Approx(std::sqrt(1.0 / 6.0)));
}

TEST_CASE("Wu coefficient for kernel fields") {
  const auto m = KernelFieldModel({{{0}, 1.0}, {{1}, -0.5}},
                                  InnovationField(InnovationSpec::rademacher(), 41, 1));
  CHECK(wu_coefficient_analytic(m, 2) == doctest::Approx(std::sqrt(2.0) * 1.5));
  const auto est = wu_coefficient_monte_carlo(m, 2, 2, 20000, 3);
  CHECK(std::abs(est.value - std::sqrt(2.0) * 1.5) < 4.0 * est.se + 0.02);
}

TEST_CASE("dependence report picks the analytic path for kernel fields") {
  const auto m = gaussian_kernel({{{0}, 1.0}, {{1}, 0.5}});
  DependenceOptions opts;
  opts.p_orders = {2, 4};
  const auto rep = dependence_report(m, opts);
  CHECK(rep.method == "analytic");
  CHECK(rep.delta_p.at(2) == doctest::Approx(1.5));
  CHECK(rep.sigma2 == doctest::Approx(sigma2_analytic(m)));
  CHECK(rep.cov_sum_abs <= rep.delta_p.at(2) * rep.delta_p.at(2) + 1e-12);
}

TEST_CASE("dependence report falls back to Monte Carlo for nonlinear fields") {
  VolterraFieldModel m({{{0}, 1.0}}, {{{1}, {2}, 0.5}},
                       InnovationField(InnovationSpec::rademacher(), 19, 1));
  DependenceOptions opts;
  opts.nested.n_outer = 300;
  opts.nested.n_inner = 48;
  opts.n_samples = 8000;
  const auto rep = dependence_report(m, opts);
  CHECK(rep.method == "monte_carlo");
  CHECK(rep.delta_p.at(2) > 0.0);
  CHECK(rep.delta_p_se.at(2) > 0.0);
  // Var(X_0) = 1 + 0.25
  CHECK(std::abs(rep.sigma2) < 10.0);
}
