#include <cmath>

#include <doctest.h>

#include "latticefield/weights.hpp"

using namespace lf;

TEST_CASE("rectangle weights count lattice points exactly") {
  RectangleWeights w(10, {0.75, 1.0});
  CHECK(w.coefficient({1, 1}) == 1.0);
  CHECK(w.coefficient({7, 10}) == 1.0);
  CHECK(w.coefficient({8, 1}) == 0.0);
  CHECK(w.coefficient({0, 5}) == 0.0);
  CHECK(w.norm() == doctest::Approx(std::sqrt(7.0 * 10.0)));
  std::size_t count = 0;
  w.for_each([&](const LatticePoint&, double b) {
    ++count;
    CHECK(b == 1.0);
  });
  CHECK(count == 70);
}

TEST_CASE("index set weights") {
  IndexSetWeights w({{0, 0}, {2, 1}, {-1, 3}});
  CHECK(w.size() == 3);
  CHECK(w.norm() == doctest::Approx(std::sqrt(3.0)));
  CHECK(w.coefficient({2, 1}) == 1.0);
  CHECK(w.coefficient({1, 1}) == 0.0);
  CHECK(w.contains({-1, 3}));
}

TEST_CASE("power measure masses in closed form") {
  PowerMeasure leb = PowerMeasure::lebesgue(2);
  CHECK(leb.beta() == doctest::Approx(2.0));
  Box unit{{0.0, 0.0}, {1.0, 1.0}};
  CHECK(leb.box_mass(unit) == doctest::Approx(1.0));
  CHECK(leb.box_mass(unit.scaled(3.0)) == doctest::Approx(9.0));

  PowerMeasure pm{{1.0, 0.0}};  // d mu = |x| dx dy, beta = 3
  CHECK(pm.beta() == doctest::Approx(3.0));
  // integral of |x| over [0,2] is 2, times length 1 on the y axis
  CHECK(pm.box_mass({{0.0, 0.0}, {2.0, 1.0}}) == doctest::Approx(2.0));
  // symmetric across x = 0
  CHECK(pm.box_mass({{-2.0, 0.0}, {0.0, 1.0}}) == doctest::Approx(2.0));
  // self-similarity mu(nA) = n^beta mu(A)
  Box a{{0.25, -0.5}, {1.0, 0.75}};
  CHECK(pm.box_mass(a.scaled(4.0)) == doctest::Approx(std::pow(4.0, 3.0) * pm.box_mass(a)));
}

TEST_CASE("set-indexed weights square-sum to the scaled region mass") {
  // sum_j b_{n,j}^2 = sum_j mu(nA ∩ R_j) = mu(nA) = n^beta mu(A)
  std::vector<Box> region{{{0.0, 0.0}, {1.0, 0.5}}, {{-0.5, -1.0}, {0.0, 0.0}}};
  for (const PowerMeasure& pm : {PowerMeasure::lebesgue(2), PowerMeasure{{1.0, 0.0}}}) {
    SetIndexedWeights w(pm, region, 8);
    double sq = 0.0;
    w.for_each([&](const LatticePoint&, double b) { sq += b * b; });
    CHECK(sq == doctest::Approx(w.scaled_region_mass()).epsilon(1e-10));
    CHECK(w.norm() * w.norm() == doctest::Approx(w.scaled_region_mass()).epsilon(1e-10));
    CHECK(w.scaled_region_mass() ==
          doctest::Approx(std::pow(8.0, pm.beta()) * pm.region_mass(region)).epsilon(1e-12));
  }
}

TEST_CASE("set-indexed weights agree with direct cell intersections") {
  PowerMeasure pm{{0.5}};
  std::vector<Box> region{{{0.2}, {0.9}}};
  SetIndexedWeights w(pm, region, 5);
  // nA = [1, 4.5]; cell R_3 = [3, 4): full overlap
  Box cell{{3.0}, {4.0}};
  CHECK(w.coefficient({3}) ==
        doctest::Approx(std::sqrt(pm.box_mass(cell))).epsilon(1e-12));
  // cell R_4 = [4, 5) clipped to [4, 4.5]
  CHECK(w.coefficient({4}) ==
        doctest::Approx(std::sqrt(pm.box_mass({{4.0}, {4.5}}))).epsilon(1e-12));
  CHECK(w.coefficient({5}) == 0.0);
}

TEST_CASE("product-linear weights are partial sums of the axis kernel") {
  std::vector<double> a{1.0, 0.5, 0.25};
  ProductLinearWeights w({a}, 6, {1.0});
  // b_{m,j} = sum_{i=1..m} a_{i-j}, kernel indexed 1..3
  CHECK(w.axis_coefficient(0, 6, 6) == doctest::Approx(0.0));  // i-j ranges -5..0
  CHECK(w.axis_coefficient(0, 6, 5) == doctest::Approx(1.0));
  CHECK(w.axis_coefficient(0, 6, 4) == doctest::Approx(1.5));
  CHECK(w.axis_coefficient(0, 6, 3) == doctest::Approx(1.75));
  CHECK(w.axis_coefficient(0, 6, 0) == doctest::Approx(1.75));
  CHECK(w.coefficient({4}) == doctest::Approx(1.5));
  double sq = 0.0;
  w.for_each([&](const LatticePoint& j, double b) {
    CHECK(w.coefficient(j) == doctest::Approx(b));
    sq += b * b;
  });
  CHECK(w.norm() * w.norm() == doctest::Approx(sq).epsilon(1e-12));
  CHECK(w.axis_norm_sq(0, 6) == doctest::Approx(sq).epsilon(1e-12));
}

TEST_CASE("product form multiplies axis coefficients") {
  std::vector<double> a{1.0, -0.5};
  std::vector<double> b{2.0};
  ProductLinearWeights w({a, b}, 4, {1.0, 0.5});
  const double bx = w.axis_coefficient(0, 4, 2);
  const double by = w.axis_coefficient(1, 2, 1);
  CHECK(w.coefficient({2, 1}) == doctest::Approx(bx * by));
}

TEST_CASE("negligibility and shift diagnostics") {
  RectangleWeights w(100, {1.0});
  CHECK(check_negligibility(w) == doctest::Approx(0.1));
  // shifting an interval indicator changes two sites out of 100
  CHECK(check_shift_condition(w, 0) == doctest::Approx(std::sqrt(2.0 / 100.0)));
}

TEST_CASE("boundary ratio of a square block") {
  std::vector<LatticePoint> sites;
  for (Coord x = 0; x < 10; ++x)
    for (Coord y = 0; y < 10; ++y) sites.push_back({x, y});
  IndexSetWeights gamma(std::move(sites));
  // all sites within linf distance 1 of the complement: the outer ring (36)
  CHECK(boundary_ratio(gamma) == doctest::Approx(36.0 / 100.0));
}

TEST_CASE("hurst profile of the flat kernel is close to 2H = 1") {
  // a = {1}: b_{m,j} is an indicator, b_m^2 = m, ratio = floor(ns)/n
  auto profile = hurst_scaling_profile({1.0}, 1000, {0.2, 0.4, 0.6, 0.8, 1.0});
  CHECK(profile.fitted_2h == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("fractional kernel scaling holds while the kernel spans the window") {
  // a_i = i^{H-3/2} gives b_m^2 ~ m^{2H} as long as floor(ns) <= L; past the
  // kernel length the coefficients saturate and the exponent drifts to 1
  const auto kernel = fractional_kernel(0.8, 512);
  const std::vector<double> grid{0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  const auto in_regime = hurst_scaling_profile(kernel, 512, grid);
  CHECK(std::abs(in_regime.fitted_2h - 1.6) < 0.05);
  const auto saturated = hurst_scaling_profile(kernel, 4096, grid);
  CHECK(saturated.fitted_2h < 1.3);
}

TEST_CASE("fractional kernel values") {
  auto k = fractional_kernel(0.8, 4);
  REQUIRE(k.size() == 4);
  CHECK(k[0] == doctest::Approx(1.0));
  CHECK(k[2] == doctest::Approx(std::pow(3.0, 0.8 - 1.5)));
}

TEST_CASE("example2 index sets double in size and nest") {
  auto g1 = example2_gamma(1);
  CHECK(g1.size() == 2);
  for (int n = 2; n <= 10; ++n) {
    auto g = example2_gamma(n);
    CHECK(g.size() == (std::size_t{1} << n));
    auto prev = example2_gamma(n - 1);
    // the recursion appends a block: the previous set is a prefix
    for (std::size_t i = 0; i < prev.size(); ++i) CHECK(g[i] == prev[i]);
  }
}
