#include <cmath>

#include <doctest.h>

#include "latticefield/harness.hpp"
#include "latticefield/stats.hpp"

using namespace lf;

namespace {

std::shared_ptr<KernelFieldModel> ma1(std::uint64_t seed = 51) {
  return std::make_shared<KernelFieldModel>(
      std::vector<KernelEntry>{{{0}, 1.0}, {{1}, 0.5}},
      InnovationField(InnovationSpec::gaussian(), seed, 1));
}

}  // namespace

TEST_CASE("seed streams are distinct and stable") {
  CHECK(sample_seed(1, 0) == sample_seed(1, 0));
  CHECK(sample_seed(1, 0) != sample_seed(1, 1));
  CHECK(sample_seed(1, 0) != sample_seed(2, 0));
}

TEST_CASE("replicated sums do not depend on the worker count") {
  auto model = ma1();
  RectangleWeights scheme(32, {1.0});
  const auto one = replicate_sums(*model, scheme, 500, 9, 1, scheme.norm());
  const auto four = replicate_sums(*model, scheme, 500, 9, 4, scheme.norm());
  const auto seven = replicate_sums(*model, scheme, 500, 9, 7, scheme.norm());
  REQUIRE(one.size() == four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i] == four[i]);  // bitwise
    CHECK(one[i] == seven[i]);
  }
}

TEST_CASE("compiled and direct replication agree") {
  auto model = ma1();
  RectangleWeights scheme(16, {1.0});
  const auto fast = replicate_sums(*model, scheme, 50, 3, 1, 1.0);
  const auto slow = replicate_sums(*model, scheme, 50, 3, 1, 1.0, std::nullopt, true);
  for (std::size_t i = 0; i < fast.size(); ++i)
    CHECK(fast[i] == doctest::Approx(slow[i]).epsilon(1e-10));
}

TEST_CASE("clt run on a kernel field passes both tests") {
  auto model = ma1();
  RectangleWeights scheme(256, {1.0});
  CltOptions opts;
  opts.reps = 4000;
  opts.seed = 2;
  const auto result = run_clt(*model, scheme, opts);
  REQUIRE(result.tests.size() == 2);
  CHECK(result.passed());
  CHECK(result.scalars.at("b_n") == doctest::Approx(16.0));
  // sigma_n^2 / b_n^2 -> sigma^2 = (sum a)^2 = 2.25
  CHECK(result.scalars.at("sigma_n2") / (16.0 * 16.0) ==
        doctest::Approx(2.25).epsilon(0.05));
  CHECK(result.scalars.at("sigma2") == doctest::Approx(2.25));
  CHECK(result.scalars.at("sigma_ratio") == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("normalization choices give proportional samples") {
  auto model = ma1();
  RectangleWeights scheme(64, {1.0});
  CltOptions by_b;
  by_b.reps = 300;
  CltOptions by_s = by_b;
  by_s.normalization = Normalization::by_sigma_n;
  const auto rb = run_clt(*model, scheme, by_b);
  const auto rs = run_clt(*model, scheme, by_s);
  const double ratio = rb.columns[0][5] / rs.columns[0][5];
  for (std::size_t i = 0; i < 50; ++i)
    CHECK(rb.columns[0][i] / rs.columns[0][i] == doctest::Approx(ratio).epsilon(1e-9));
}

TEST_CASE("by_sigma_n refuses a degenerate scheme") {
  auto model = ma1();
  RectangleWeights scheme(64, {1.0});
  CltOptions opts;
  opts.reps = 200;
  opts.normalization = Normalization::by_sigma_n;
  opts.sigma_floor = 0.01;
  opts.sigma_n2 = 1e-6 * scheme.norm() * scheme.norm();  // below the floor
  CHECK_THROWS_AS(run_clt(*model, scheme, opts), std::invalid_argument);
}

TEST_CASE("lindeberg sum decreases along the block sizes") {
  auto model = ma1();
  RectangleWeights small(16, {1.0});
  RectangleWeights large(256, {1.0});
  const double ls = heinrich_lindeberg_sum(*model, small, 0.5, 400, 3);
  const double ll = heinrich_lindeberg_sum(*model, large, 0.5, 400, 3);
  CHECK(ll <= ls + 1e-12);
  CHECK(ll == doctest::Approx(0.0).scale(1));  // single terms never cross eps sigma_n
}

TEST_CASE("counterexample1 separates even and odd layers") {
  Example1Options opts;
  opts.reps = 3000;
  opts.seed = 4;
  const auto result = run_counterexample1(opts);
  REQUIRE(result.tests.size() == 4);
  for (const auto& t : result.tests) {
    INFO(t.name);
    CHECK(t.pass);
  }
  // even layer variance close to 2
  CHECK(result.scalars.at("even_variance") == doctest::Approx(2.0).epsilon(0.15));
  Example1Options bad = opts;
  bad.reps = 500;
  CHECK_THROWS_AS(run_counterexample1(bad), std::invalid_argument);
  bad = opts;
  bad.even_k = 3;
  CHECK_THROWS_AS(run_counterexample1(bad), std::invalid_argument);
}

TEST_CASE("counterexample2 certifies the oscillating variance") {
  Example2Options opts;
  opts.n_max = 12;
  opts.mc_check_n = {6, 9};
  opts.mc_reps = 2000;
  const auto result = run_counterexample2(opts);
  for (const auto& t : result.tests) {
    INFO(t.name);
    CHECK(t.pass);
  }
  // ratio column oscillates: even n near 2/3 + o(1), odd n near 4/3
  REQUIRE(result.column_names.size() == 2);
  CHECK(result.column_names[0] == "n");
  const auto& ratio = result.columns[1];
  CHECK(ratio[9] / ratio[10] != doctest::Approx(1.0).epsilon(0.2));
}

TEST_CASE("fdd covariance matches the exact cross moments") {
  auto model = ma1();
  std::vector<FddPoint> points{
      {"t=0.5", std::make_shared<RectangleWeights>(64, std::vector<double>{0.5})},
      {"t=1", std::make_shared<RectangleWeights>(64, std::vector<double>{1.0})}};
  FddOptions opts;
  opts.reps = 4000;
  opts.seed = 8;
  opts.normalizer = 8.0;  // sqrt(64)
  CompiledSum c0(*model, *points[0].scheme), c1(*model, *points[1].scheme);
  const double norm2 = opts.normalizer * opts.normalizer;
  opts.target = {{c0.exact_variance(1.0) / norm2,
                  CompiledSum::exact_cross_moment(c0, c1, 1.0) / norm2},
                 {CompiledSum::exact_cross_moment(c0, c1, 1.0) / norm2,
                  c1.exact_variance(1.0) / norm2}};
  const auto result = run_fdd_covariance(*model, points, opts);
  CHECK(result.passed());
  CHECK(result.scalars.count("cov t=0.5:t=1") == 1);
}

TEST_CASE("fdd rejects degenerate points and tiny configurations") {
  auto model = ma1();
  std::vector<FddPoint> one{{"a", std::make_shared<RectangleWeights>(8, std::vector<double>{1.0})}};
  FddOptions opts;
  CHECK_THROWS_AS(run_fdd_covariance(*model, one, opts), std::invalid_argument);
  std::vector<FddPoint> degenerate{
      {"a", std::make_shared<RectangleWeights>(8, std::vector<double>{1.0})},
      {"b", std::make_shared<RectangleWeights>(8, std::vector<double>{0.0})}};
  CHECK_THROWS_AS(run_fdd_covariance(*model, degenerate, opts), std::invalid_argument);
}

TEST_CASE("path export keeps the zero column for t = 0") {
  auto model = ma1();
  std::vector<FddPoint> grid{
      {"t=0", std::make_shared<RectangleWeights>(16, std::vector<double>{0.0})},
      {"t=1", std::make_shared<RectangleWeights>(16, std::vector<double>{1.0})}};
  PathOptions opts;
  opts.reps = 50;
  const auto result = run_path_export(*model, grid, opts);
  REQUIRE(result.columns.size() == 2);
  for (double v : result.columns[0]) CHECK(v == 0.0);
  CHECK(result.scalars.at("var t=0") == 0.0);
  CHECK(result.scalars.at("var t=1") > 0.0);
}
