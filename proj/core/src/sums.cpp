#include "latticefield/sums.hpp"

#include <algorithm>
#include <cmath>

namespace lf {

CompiledSum::CompiledSum(const KernelFieldModel& model, const WeightScheme& scheme) {
  if (model.dimension() != scheme.dimension())
    throw std::invalid_argument("CompiledSum: model/scheme dimension mismatch");
  PointMap effective;
  scheme.for_each([&](const LatticePoint& j, double b) {
    for (const auto& e : model.kernel()) {
      // b_j X_j contributes b_j a_k at innovation site j - k
      effective[sub(j, e.offset)] += b * e.coeff;
    }
  });
  coeffs_.assign(effective.begin(), effective.end());
  std::sort(coeffs_.begin(), coeffs_.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
}

double CompiledSum::evaluate(const InnovationField& innov) const {
  double s = 0.0;
  for (const auto& [u, c] : coeffs_) s += c * innov.value(u);
  return s;
}

double CompiledSum::exact_variance(double m2) const {
  double s = 0.0;
  for (const auto& [u, c] : coeffs_) s += c * c;
  return m2 * s;
}

double CompiledSum::exact_cross_moment(const CompiledSum& a, const CompiledSum& b, double m2) {
  // merge-join on sorted coefficient lists
  double s = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.coeffs_.size() && j < b.coeffs_.size()) {
    if (a.coeffs_[i].first < b.coeffs_[j].first) {
      ++i;
    } else if (b.coeffs_[j].first < a.coeffs_[i].first) {
      ++j;
    } else {
      s += a.coeffs_[i].second * b.coeffs_[j].second;
      ++i;
      ++j;
    }
  }
  return m2 * s;
}

std::shared_ptr<FieldModel> reseed(const FieldModel& model, std::uint64_t seed) {
  const InnovationField& base = model.innovation();
  return model.with_innovation(InnovationField(base.spec(), seed, base.dimension()));
}

double sample_sum(const FieldModel& model, const WeightScheme& scheme, std::uint64_t seed,
                  std::optional<Coord> m, bool force_direct) {
  std::shared_ptr<FieldModel> working = reseed(model, seed);
  if (m.has_value()) working = working->truncate(*m);
  if (!force_direct) {
    if (const auto* kernel = dynamic_cast<const KernelFieldModel*>(working.get())) {
      CompiledSum compiled(*kernel, scheme);
      return compiled.evaluate(kernel->innovation());
    }
  }
  double s = 0.0;
  scheme.for_each([&](const LatticePoint& j, double b) { s += b * working->evaluate(j); });
  return s;
}

double exact_variance(const KernelFieldModel& model, const WeightScheme& scheme) {
  if (!model.innovation().spec().centered())
    throw std::invalid_argument("exact_variance: innovations must be centered");
  CompiledSum compiled(model, scheme);
  return compiled.exact_variance(model.innovation().spec().abs_moment(2));
}

double exact_variance_difference(const KernelFieldModel& model, const WeightScheme& scheme,
                                 Coord m) {
  auto truncated = std::dynamic_pointer_cast<KernelFieldModel>(model.truncate(m));
  // tail kernel: entries with |k|_inf > m
  std::vector<KernelEntry> tail;
  for (const auto& e : model.kernel())
    if (linf_norm(e.offset) > m) tail.push_back(e);
  if (tail.empty()) return 0.0;
  KernelFieldModel tail_model(std::move(tail), model.innovation());
  return exact_variance(tail_model, scheme);
}

double example1_exact_variance(const Example1Model& model, Coord n) {
  if (n < 1) throw std::invalid_argument("example1_exact_variance: n >= 1");
  const auto& p = model.params();
  double v = 0.0;
  for (int k = 1; k <= p.k_max; ++k) {
    const auto uk = static_cast<std::size_t>(k - 1);
    v += 2.0 * static_cast<double>(std::min(n, p.n_seq[uk])) * p.alpha[uk] * p.alpha[uk];
  }
  return v;
}

}  // namespace lf
