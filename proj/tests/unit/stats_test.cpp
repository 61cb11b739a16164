#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "latticefield/stats.hpp"

using namespace lf;

TEST_CASE("normal quantile inverts the cdf") {
  for (double p : {0.001, 0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99, 0.999}) {
    CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-9));
  }
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0).scale(1).epsilon(1e-12));
  CHECK_THROWS_AS((void)normal_quantile(0.0), std::invalid_argument);
}

TEST_CASE("one-sample KS on an exact grid is small") {
  std::vector<double> grid;
  const int n = 1000;
  for (int i = 0; i < n; ++i)
    grid.push_back(normal_quantile((i + 0.5) / n));
  const double d = ks_statistic(grid, [](double x) { return normal_cdf(x); });
  CHECK(d < 1.0 / n + 1e-9);
}

TEST_CASE("KS critical values") {
  CHECK_THROWS_AS((void)ks_critical_value(10, 0.05), std::invalid_argument);
  CHECK(ks_critical_value(100, 0.01) > ks_critical_value(100, 0.05));
  CHECK(ks_critical_value(400, 0.01) == doctest::Approx(ks_critical_value(100, 0.01) / 2.0));
}

TEST_CASE("two-sample KS handles ties") {
  std::vector<double> a{0, 0, 1, 1, 2, 2};
  CHECK(ks_statistic_two_sample(a, a) == 0.0);
  std::vector<double> b{0, 0, 0, 0, 0, 0};
  // F_a jumps to 1/3 at 0, F_b to 1; gap 2/3
  CHECK(ks_statistic_two_sample(a, b) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("regularized incomplete gamma against erf") {
  for (double x : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    CHECK(gamma_p(0.5, x) == doctest::Approx(std::erf(std::sqrt(x))).epsilon(1e-12));
  }
  CHECK(gamma_p(3.0, 0.0) == 0.0);
  CHECK(gamma_q(3.0, 100.0) == doctest::Approx(0.0).scale(1).epsilon(1e-12));
}

TEST_CASE("chi-square p-values") {
  CHECK(chi_square_pvalue(0.0, 5) == 1.0);
  // chi2 with 2 dof is Exp(1/2): P(X > x) = exp(-x/2)
  CHECK(chi_square_pvalue(3.0, 2) == doctest::Approx(std::exp(-1.5)).epsilon(1e-12));
  CHECK(chi_square_statistic({10, 20}, {15, 15}) == doctest::Approx(25.0 / 15.0 + 25.0 / 15.0));
}

TEST_CASE("MeanVar merge is order independent") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> dist;
  std::vector<double> data(5000);
  for (double& x : data) x = dist(rng);

  MeanVar whole;
  for (double x : data) whole.add(x);

  for (int parts : {2, 3, 7}) {
    std::vector<MeanVar> shards(static_cast<std::size_t>(parts));
    for (std::size_t i = 0; i < data.size(); ++i)
      shards[i % static_cast<std::size_t>(parts)].add(data[i]);
    MeanVar merged;
    for (const auto& s : shards) merged.merge(s);
    CHECK(merged.n == whole.n);
    CHECK(merged.mean == doctest::Approx(whole.mean).epsilon(1e-12));
    CHECK(merged.variance() == doctest::Approx(whole.variance()).epsilon(1e-12));
  }
}

TEST_CASE("variance standard error shrinks like 1/sqrt(n)") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> dist;
  std::vector<double> small(1000), large(16000);
  for (double& x : small) x = dist(rng);
  for (double& x : large) x = dist(rng);
  CHECK(variance_standard_error(large) < variance_standard_error(small));
  // N(0,1): Var(sample variance) ~ 2/n
  CHECK(variance_standard_error(large) ==
        doctest::Approx(std::sqrt(2.0 / 16000.0)).epsilon(0.15));
}
