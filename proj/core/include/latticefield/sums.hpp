#pragma once

#include <optional>

#include "latticefield/fields.hpp"
#include "latticefield/weights.hpp"

namespace lf {

// Effective innovation coefficients of S = sum_j b_j X_j for a kernel field:
// S = sum_u c_u eps_u with c_u = sum_k a_k b_{u+k}. Precomputing the map makes
// replicated sampling O(#sites) per seed.
class CompiledSum {
 public:
  CompiledSum(const KernelFieldModel& model, const WeightScheme& scheme);

  double evaluate(const InnovationField& innov) const;
  // exact Var(S) = m_2 * sum_u c_u^2
  double exact_variance(double m2) const;
  // exact E(S S') for two sums over the same field
  static double exact_cross_moment(const CompiledSum& a, const CompiledSum& b, double m2);

  const std::vector<std::pair<LatticePoint, double>>& coefficients() const { return coeffs_; }

 private:
  std::vector<std::pair<LatticePoint, double>> coeffs_;
};

// Rebind a model to a fresh innovation seed (same spec and dimension).
std::shared_ptr<FieldModel> reseed(const FieldModel& model, std::uint64_t seed);

// S = sum over the scheme support of b_{n,j} X_j (or X_j^(m) when m is set).
// Kernel fields use the compiled path unless force_direct is set.
double sample_sum(const FieldModel& model, const WeightScheme& scheme, std::uint64_t seed,
                  std::optional<Coord> m = std::nullopt, bool force_direct = false);

// sigma_n^2 = Var(S_n), exact for kernel fields.
double exact_variance(const KernelFieldModel& model, const WeightScheme& scheme);

// exact Var(S_n - S_n^(m)) for kernel fields
double exact_variance_difference(const KernelFieldModel& model, const WeightScheme& scheme,
                                 Coord m);

// Var(S_n) = sum_{l<=K} 2 min(n, n_l) alpha_l^2 for the contiguous block {0..n-1}.
double example1_exact_variance(const Example1Model& model, Coord n);

}  // namespace lf
