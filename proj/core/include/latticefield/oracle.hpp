#pragma once

#include <vector>

#include "latticefield/fields.hpp"
#include "latticefield/lattice.hpp"

namespace lf {

// Exact verifier on the finite probability space of Rademacher innovations
// over a small window: all +-1 assignments, uniform probability 2^{-|window|}.
class FiniteSpace {
 public:
  // A random variable: one value per outcome.
  using Var = std::vector<double>;

  explicit FiniteSpace(std::vector<LatticePoint> window);

  int dimension() const { return dim_; }
  std::size_t n_sites() const { return sites_.size(); }
  std::size_t n_outcomes() const { return std::size_t{1} << sites_.size(); }
  const std::vector<LatticePoint>& sites() const { return sites_; }
  bool contains(const LatticePoint& s) const;
  LatticePoint min_corner() const;
  LatticePoint max_corner() const;

  double eps(std::size_t outcome, std::size_t site_index) const {
    return (outcome >> site_index) & 1u ? 1.0 : -1.0;
  }

  Var innovation(const LatticePoint& site) const;
  // X_site = sum_k a_k eps_{site-k}; every needed site must be in the window.
  Var kernel_field(const std::vector<KernelEntry>& kernel, const LatticePoint& site) const;

  double expect(const Var& y) const;
  double pnorm(const Var& y, int p) const;  // (E|Y|^p)^{1/p}
  double covariance(const Var& y, const Var& z) const;

  // E(Y | sigma(eps_s : mask[s])), exact average over the atoms.
  Var cond_expect(const Var& y, const std::vector<bool>& mask) const;

  std::vector<bool> quadrant_mask(const LatticePoint& i) const;        // {s : s <= i}
  std::vector<bool> halfspace_mask(int axis, Coord iq) const;          // {s : s_q <= iq}
  std::vector<bool> block_mask(const LatticePoint& j, Coord m) const;  // {s : |s-j|inf <= m}

  // P_j Y, the product of per-axis conditional-expectation differences,
  // expanded as the alternating sum over delta in {0,1}^d of E(Y | F_{j-delta}).
  Var project(const Var& y, const LatticePoint& j) const;

 private:
  std::vector<LatticePoint> sites_;
  PointSet lookup_;
  int dim_;
};

// max over outcomes of |E[E(Y|F_i)|F_k] - E(Y|F_{i ^ k})| (both nesting orders).
double check_commuting(const FiniteSpace& space, const FiniteSpace::Var& y, const LatticePoint& i,
                       const LatticePoint& k);

// max over outcomes of |Y - sum_j P_j Y|, j over the window's bounding box.
// Requires E Y = 0.
double check_decomposition(const FiniteSpace& space, const FiniteSpace::Var& y);

struct MomentBound {
  double lhs;  // ||sum_i w_i X_i||_p
  double rhs;  // (p-1)^{d/2} (sum w_i^2)^{1/2} Delta_p
  double delta_p;
};

// Moment inequality for the kernel field restricted to the window, with exact
// Delta_p by enumeration. Sites where X_i is not window-computable get zero weight.
MomentBound check_moment_inequality(const FiniteSpace& space,
                                    const std::vector<KernelEntry>& kernel,
                                    const std::vector<std::pair<LatticePoint, double>>& weights,
                                    int p);

// Sites i in the window such that all of i - k, k in kernel, are in the window.
std::vector<LatticePoint> computable_sites(const FiniteSpace& space,
                                           const std::vector<KernelEntry>& kernel);

// Runs the full identity suite (used by the `oracle-check` CLI subcommand).
struct OracleCheckResult {
  std::string name;
  double discrepancy;
  double tolerance;
  bool pass;
};
std::vector<OracleCheckResult> run_oracle_suite(std::uint64_t seed);

}  // namespace lf
