#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "latticefield/lattice.hpp"

namespace lf {

// A family {b_{n,j}} with finite support.
class WeightScheme {
 public:
  using Visitor = std::function<void(const LatticePoint&, double)>;

  virtual ~WeightScheme() = default;
  virtual int dimension() const = 0;
  virtual std::string name() const = 0;
  virtual double coefficient(const LatticePoint& j) const = 0;  // 0 outside support
  virtual void for_each(const Visitor& visit) const = 0;

  // b_n = (sum_j b_{n,j}^2)^{1/2}
  virtual double norm() const;

  PointMap support_map() const;
};

// b_{n,j}(t) = 1 iff 1 <= j_q <= n t_q for all q.
class RectangleWeights : public WeightScheme {
 public:
  RectangleWeights(Coord n, std::vector<double> t);

  int dimension() const override { return static_cast<int>(t_.size()); }
  std::string name() const override { return "rectangle"; }
  double coefficient(const LatticePoint& j) const override;
  void for_each(const Visitor& visit) const override;
  double norm() const override;

  Coord scale() const { return n_; }
  const std::vector<double>& t() const { return t_; }
  LatticePoint upper() const;  // floor(n t_q) per axis

 private:
  Coord n_;
  std::vector<double> t_;
};

// b_{n,j} = 1 iff j in Gamma.
class IndexSetWeights : public WeightScheme {
 public:
  explicit IndexSetWeights(std::vector<LatticePoint> gamma);

  int dimension() const override { return dim_; }
  std::string name() const override { return "index_set"; }
  double coefficient(const LatticePoint& j) const override;
  void for_each(const Visitor& visit) const override;
  double norm() const override;

  std::size_t size() const { return gamma_.size(); }
  const std::vector<LatticePoint>& sites() const { return gamma_; }
  bool contains(const LatticePoint& j) const { return lookup_.count(j) > 0; }

 private:
  std::vector<LatticePoint> gamma_;
  PointSet lookup_;
  int dim_;
};

// Axis-aligned box [lo, hi) in R^d.
struct Box {
  std::vector<double> lo, hi;
  Box scaled(double factor) const;
  double overlap_length(int axis, double a, double b) const;  // clip [a,b] to the box on one axis
};

// Product power density: d mu = prod_q |x_q|^{gamma_q} dx, gamma_q > -1.
// Self-similar with mu(nA) = n^beta mu(A), beta = sum (gamma_q + 1).
struct PowerMeasure {
  std::vector<double> gamma;

  static PowerMeasure lebesgue(int dim) { return {std::vector<double>(static_cast<std::size_t>(dim), 0.0)}; }

  int dimension() const { return static_cast<int>(gamma.size()); }
  double beta() const;
  // Sign-aware antiderivative of |x|^g: F(x) = sign(x) |x|^{g+1} / (g+1).
  double axis_mass(int axis, double a, double b) const;
  double box_mass(const Box& box) const;
  double region_mass(const std::vector<Box>& region) const;
  // mu(region ∩ box)
  double intersection_mass(const std::vector<Box>& region, const Box& box) const;
};

// b_{n,j}(A) = mu(nA ∩ R_j)^{1/2}, R_j the unit cube with lower corner j.
class SetIndexedWeights : public WeightScheme {
 public:
  SetIndexedWeights(PowerMeasure measure, std::vector<Box> region, Coord n);

  int dimension() const override { return measure_.dimension(); }
  std::string name() const override { return "set_indexed"; }
  double coefficient(const LatticePoint& j) const override;
  void for_each(const Visitor& visit) const override;

  const PowerMeasure& measure() const { return measure_; }
  const std::vector<Box>& region() const { return region_; }
  Coord scale() const { return n_; }
  // mu(nA) = n^beta mu(A), closed form
  double scaled_region_mass() const;

 private:
  Box scaled_bounds() const;

  PowerMeasure measure_;
  std::vector<Box> region_;
  Coord n_;
};

// b_{n,j}(t) = prod_q b^{(q)}_{floor(n t_q), j_q} with
// b^{(q)}_{m,j} = sum_{i=1}^{m} a^{(q)}_{i-j}. Axis kernels are indexed 1..L.
class ProductLinearWeights : public WeightScheme {
 public:
  ProductLinearWeights(std::vector<std::vector<double>> axis_kernels, Coord n,
                       std::vector<double> t);

  int dimension() const override { return static_cast<int>(axis_kernels_.size()); }
  std::string name() const override { return "product_linear"; }
  double coefficient(const LatticePoint& j) const override;
  void for_each(const Visitor& visit) const override;
  double norm() const override;

  // per-axis coefficient b^{(q)}_{m,j}
  double axis_coefficient(int axis, Coord m, Coord j) const;
  double axis_norm_sq(int axis, Coord m) const;
  Coord scale() const { return n_; }

 private:
  std::vector<std::vector<double>> axis_kernels_;  // a^{(q)}_1 .. a^{(q)}_L
  std::vector<std::vector<double>> axis_prefix_;   // prefix sums of the kernels
  Coord n_;
  std::vector<double> t_;
};

// --- condition diagnostics ---

// sup_j |b_{n,j}| / b_n
double check_negligibility(const WeightScheme& scheme);

// ||T_{e_q} b_n - b_n||_{l2} / b_n
double check_shift_condition(const WeightScheme& scheme, int axis);

// |boundary(Gamma)| / |Gamma|; boundary = sites with an linf-neighbor outside.
double boundary_ratio(const IndexSetWeights& gamma);

struct HurstProfile {
  std::vector<double> s;
  std::vector<double> ratio;  // b^2_{floor(ns)} / b^2_n per grid point
  double fitted_2h = 0.0;     // least squares of log ratio on log s
};

// One-axis scaling profile for a kernel a_1..a_L.
HurstProfile hurst_scaling_profile(const std::vector<double>& axis_kernel, Coord n,
                                   const std::vector<double>& s_grid);

// Fractional kernel a_i = i^{H - 3/2}, i = 1..L.
std::vector<double> fractional_kernel(double hurst, std::size_t length);

// Example 2 recursion: Gamma_1 = {0,1}, Gamma_{n+1} = Gamma_n ∪ B_n.
std::vector<LatticePoint> example2_gamma(int n);

}  // namespace lf
