#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "latticefield/innovations.hpp"
#include "latticefield/lattice.hpp"

namespace lf {

// Stationary Bernoulli field X_j = f(shifted innovations). Immutable after
// construction; evaluation is pure and concurrently callable.
class FieldModel {
 public:
  // Innovation source used by nested conditional-expectation estimators.
  using Source = std::function<double(const LatticePoint&)>;

  virtual ~FieldModel() = default;

  virtual int dimension() const = 0;
  virtual const InnovationField& innovation() const = 0;
  virtual std::string name() const = 0;

  virtual double evaluate(const LatticePoint& site) const = 0;
  // Same functional f, evaluated on an arbitrary innovation assignment.
  virtual double evaluate_under(const Source& source, const LatticePoint& site) const = 0;

  // X_site depends only on innovations within linf distance <= this of site.
  virtual Coord dependence_radius() const = 0;

  // m-dependent approximation X^(m) = E(X | innovations within distance m).
  // Supported for closed-form conditional expectations only.
  virtual std::shared_ptr<FieldModel> truncate(Coord m) const;

  virtual std::shared_ptr<FieldModel> with_innovation(InnovationField innov) const = 0;

  // Star-coupled version: same f on the star copy of the innovations.
  std::shared_ptr<FieldModel> star() const { return with_innovation(innovation().star_copy()); }
};

struct KernelEntry {
  LatticePoint offset;
  double coeff;
};

// Linear field X_j = sum_k a_k eps_{j-k}, finite kernel support.
class KernelFieldModel : public FieldModel {
 public:
  KernelFieldModel(std::vector<KernelEntry> kernel, InnovationField innov);

  int dimension() const override { return innov_.dimension(); }
  const InnovationField& innovation() const override { return innov_; }
  std::string name() const override { return "kernel"; }
  double evaluate(const LatticePoint& site) const override;
  double evaluate_under(const Source& source, const LatticePoint& site) const override;
  Coord dependence_radius() const override { return radius_; }
  std::shared_ptr<FieldModel> truncate(Coord m) const override;
  std::shared_ptr<FieldModel> with_innovation(InnovationField innov) const override;

  const std::vector<KernelEntry>& kernel() const { return kernel_; }
  double coefficient(const LatticePoint& offset) const;
  double kernel_sum() const { return sum_; }
  double kernel_abs_sum() const { return abs_sum_; }
  double kernel_sq_sum() const { return sq_sum_; }

 private:
  std::vector<KernelEntry> kernel_;
  PointMap lookup_;
  InnovationField innov_;
  Coord radius_ = 0;
  double sum_ = 0.0, abs_sum_ = 0.0, sq_sum_ = 0.0;
};

// X_i = eps_i - eps_{i-1} in d=1, as a kernel field {0: +1, 1: -1}.
std::shared_ptr<KernelFieldModel> make_difference_field(InnovationField innov);

struct VolterraPair {
  LatticePoint k, l;
  double coeff;
};

// First-order kernel plus centered second-order products
// sum c_{k,l} eps_{j-k} eps_{j-l}, k != l.
class VolterraFieldModel : public FieldModel {
 public:
  VolterraFieldModel(std::vector<KernelEntry> kernel, std::vector<VolterraPair> pairs,
                     InnovationField innov);

  int dimension() const override { return innov_.dimension(); }
  const InnovationField& innovation() const override { return innov_; }
  std::string name() const override { return "volterra"; }
  double evaluate(const LatticePoint& site) const override;
  double evaluate_under(const Source& source, const LatticePoint& site) const override;
  Coord dependence_radius() const override { return radius_; }
  std::shared_ptr<FieldModel> truncate(Coord m) const override;
  std::shared_ptr<FieldModel> with_innovation(InnovationField innov) const override;

  const std::vector<KernelEntry>& kernel() const { return kernel_; }
  const std::vector<VolterraPair>& pairs() const { return pairs_; }

 private:
  std::vector<KernelEntry> kernel_;
  std::vector<VolterraPair> pairs_;
  InnovationField innov_;
  Coord radius_ = 0;
};

// Interval-partition labels: label_k = +1 on A_k^+, -1 on A_k^-, else 0,
// computed by the iterated relative-position scheme on omega in (0,1].
std::vector<int> example1_labels(double omega, const std::vector<double>& d_seq, int levels);

struct Example1Params {
  std::vector<double> alpha;    // alpha_k > 0, summable
  std::vector<Coord> n_seq;     // increasing positive integers n_k
  std::vector<double> d_seq;    // d_k in (0,1]; 1 for even k, 1/n_k for odd k
  int k_max = 0;

  // alpha_k = 2^{-k^2}, n_k = 2^{3k^2}
  static Example1Params paper(int k_max);
  // alpha_k = 2^{-k}, n_k = 2^{2k+2}
  static Example1Params small(int k_max);
};

// X_n = sum_{k<=K} alpha_k (zeta^k_n - zeta^k_{n-n_k}),
// zeta^k_n = label_k(omega_n) / sqrt(d_k). One uniform omega per site.
class Example1Model : public FieldModel {
 public:
  Example1Model(Example1Params params, InnovationField omega);

  int dimension() const override { return 1; }
  const InnovationField& innovation() const override { return omega_; }
  std::string name() const override { return "example1"; }
  double evaluate(const LatticePoint& site) const override;
  double evaluate_under(const Source& source, const LatticePoint& site) const override;
  Coord dependence_radius() const override;
  std::shared_ptr<FieldModel> with_innovation(InnovationField innov) const override;

  const Example1Params& params() const { return params_; }
  double zeta(double omega, int k) const;  // zeta^k(omega), k is 1-based

 private:
  Example1Params params_;
  InnovationField omega_;
};

}  // namespace lf
