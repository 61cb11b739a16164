#include "latticefield/fields.hpp"

#include <algorithm>
#include <cmath>

namespace lf {

std::shared_ptr<FieldModel> FieldModel::truncate(Coord) const {
  throw std::logic_error("m_truncate unsupported for model '" + name() +
                         "': no closed-form conditional expectation");
}

namespace {

void sort_kernel(std::vector<KernelEntry>& kernel) {
  std::sort(kernel.begin(), kernel.end(),
            [](const KernelEntry& x, const KernelEntry& y) { return x.offset < y.offset; });
}

}  // namespace

KernelFieldModel::KernelFieldModel(std::vector<KernelEntry> kernel, InnovationField innov)
    : kernel_(std::move(kernel)), innov_(std::move(innov)) {
  if (kernel_.empty()) throw std::invalid_argument("KernelFieldModel: empty kernel");
  sort_kernel(kernel_);
  for (const auto& e : kernel_) {
    check_dimension(e.offset, dimension(), "KernelFieldModel kernel offset");
    if (!lookup_.emplace(e.offset, e.coeff).second)
      throw std::invalid_argument("KernelFieldModel: duplicate kernel offset");
    radius_ = std::max(radius_, linf_norm(e.offset));
    sum_ += e.coeff;
    abs_sum_ += std::abs(e.coeff);
    sq_sum_ += e.coeff * e.coeff;
  }
  if (sq_sum_ <= 0.0) throw std::invalid_argument("KernelFieldModel: kernel must be nonzero");
}

double KernelFieldModel::coefficient(const LatticePoint& offset) const {
  auto it = lookup_.find(offset);
  return it == lookup_.end() ? 0.0 : it->second;
}

double KernelFieldModel::evaluate(const LatticePoint& site) const {
  check_dimension(site, dimension(), "KernelFieldModel::evaluate");
  double s = 0.0;
  for (const auto& e : kernel_) s += e.coeff * innov_.value(sub(site, e.offset));
  return s;
}

double KernelFieldModel::evaluate_under(const Source& source, const LatticePoint& site) const {
  double s = 0.0;
  for (const auto& e : kernel_) s += e.coeff * source(sub(site, e.offset));
  return s;
}

std::shared_ptr<FieldModel> KernelFieldModel::truncate(Coord m) const {
  if (m < 0) throw std::invalid_argument("m_truncate: m must be >= 0");
  if (m >= radius_) return std::make_shared<KernelFieldModel>(kernel_, innov_);
  std::vector<KernelEntry> kept;
  for (const auto& e : kernel_)
    if (linf_norm(e.offset) <= m) kept.push_back(e);
  if (kept.empty())
    throw std::invalid_argument("m_truncate: truncation removes the whole kernel");
  return std::make_shared<KernelFieldModel>(std::move(kept), innov_);
}

std::shared_ptr<FieldModel> KernelFieldModel::with_innovation(InnovationField innov) const {
  return std::make_shared<KernelFieldModel>(kernel_, std::move(innov));
}

std::shared_ptr<KernelFieldModel> make_difference_field(InnovationField innov) {
  if (innov.dimension() != 1)
    throw std::invalid_argument("difference field requires d = 1");
  std::vector<KernelEntry> kernel{{{0}, 1.0}, {{1}, -1.0}};
  return std::make_shared<KernelFieldModel>(std::move(kernel), std::move(innov));
}

VolterraFieldModel::VolterraFieldModel(std::vector<KernelEntry> kernel,
                                       std::vector<VolterraPair> pairs, InnovationField innov)
    : kernel_(std::move(kernel)), pairs_(std::move(pairs)), innov_(std::move(innov)) {
  sort_kernel(kernel_);
  for (const auto& e : kernel_) {
    check_dimension(e.offset, dimension(), "Volterra kernel offset");
    radius_ = std::max(radius_, linf_norm(e.offset));
  }
  for (const auto& p : pairs_) {
    check_dimension(p.k, dimension(), "Volterra pair offset");
    check_dimension(p.l, dimension(), "Volterra pair offset");
    if (p.k == p.l)
      throw std::invalid_argument("VolterraFieldModel: diagonal pairs (k == l) are rejected");
    radius_ = std::max({radius_, linf_norm(p.k), linf_norm(p.l)});
  }
  if (kernel_.empty() && pairs_.empty())
    throw std::invalid_argument("VolterraFieldModel: empty model");
}

double VolterraFieldModel::evaluate(const LatticePoint& site) const {
  check_dimension(site, dimension(), "VolterraFieldModel::evaluate");
  return evaluate_under([this](const LatticePoint& s) { return innov_.value(s); }, site);
}

double VolterraFieldModel::evaluate_under(const Source& source, const LatticePoint& site) const {
  double s = 0.0;
  for (const auto& e : kernel_) s += e.coeff * source(sub(site, e.offset));
  for (const auto& p : pairs_)
    s += p.coeff * source(sub(site, p.k)) * source(sub(site, p.l));
  return s;
}

std::shared_ptr<FieldModel> VolterraFieldModel::truncate(Coord m) const {
  if (m < 0) throw std::invalid_argument("m_truncate: m must be >= 0");
  std::vector<KernelEntry> kernel;
  for (const auto& e : kernel_)
    if (linf_norm(e.offset) <= m) kernel.push_back(e);
  std::vector<VolterraPair> pairs;
  // A product term survives conditioning iff both factors are inside the
  // window; a single out-of-window factor has zero conditional mean.
  for (const auto& p : pairs_)
    if (linf_norm(p.k) <= m && linf_norm(p.l) <= m) pairs.push_back(p);
  if (kernel.empty() && pairs.empty())
    throw std::invalid_argument("m_truncate: truncation removes the whole model");
  return std::make_shared<VolterraFieldModel>(std::move(kernel), std::move(pairs), innov_);
}

std::shared_ptr<FieldModel> VolterraFieldModel::with_innovation(InnovationField innov) const {
  return std::make_shared<VolterraFieldModel>(kernel_, pairs_, std::move(innov));
}

std::vector<int> example1_labels(double omega, const std::vector<double>& d_seq, int levels) {
  if (!(omega > 0.0 && omega <= 1.0))
    throw std::domain_error("example1_labels: omega must be in (0, 1]");
  if (levels < 1 || levels > static_cast<int>(d_seq.size()))
    throw std::invalid_argument("example1_labels: levels out of range");
  std::vector<int> labels(static_cast<std::size_t>(levels));
  double r = omega;
  for (int k = 0; k < levels; ++k) {
    const double d = d_seq[static_cast<std::size_t>(k)];
    if (!(d > 0.0 && d <= 1.0))
      throw std::invalid_argument("example1_labels: d_k must be in (0, 1]");
    if (r <= d / 2.0) {
      labels[static_cast<std::size_t>(k)] = 1;
      r = r / (d / 2.0);
    } else if (r <= d) {
      labels[static_cast<std::size_t>(k)] = -1;
      r = (r - d / 2.0) / (d / 2.0);
    } else {
      // unreachable when d == 1, so no division by zero
      labels[static_cast<std::size_t>(k)] = 0;
      r = (r - d) / (1.0 - d);
    }
  }
  return labels;
}

Example1Params Example1Params::paper(int k_max) {
  Example1Params p;
  p.k_max = k_max;
  for (int k = 1; k <= k_max; ++k) {
    p.alpha.push_back(std::pow(2.0, -static_cast<double>(k) * k));
    p.n_seq.push_back(Coord{1} << (3 * k * k));
  }
  p.d_seq.resize(p.n_seq.size());
  for (int k = 1; k <= k_max; ++k)
    p.d_seq[static_cast<std::size_t>(k - 1)] =
        (k % 2 == 0) ? 1.0 : 1.0 / static_cast<double>(p.n_seq[static_cast<std::size_t>(k - 1)]);
  return p;
}

Example1Params Example1Params::small(int k_max) {
  Example1Params p;
  p.k_max = k_max;
  for (int k = 1; k <= k_max; ++k) {
    p.alpha.push_back(std::pow(2.0, -k));
    p.n_seq.push_back(Coord{1} << (2 * k + 2));
  }
  p.d_seq.resize(p.n_seq.size());
  for (int k = 1; k <= k_max; ++k)
    p.d_seq[static_cast<std::size_t>(k - 1)] =
        (k % 2 == 0) ? 1.0 : 1.0 / static_cast<double>(p.n_seq[static_cast<std::size_t>(k - 1)]);
  return p;
}

Example1Model::Example1Model(Example1Params params, InnovationField omega)
    : params_(std::move(params)), omega_(std::move(omega)) {
  if (params_.k_max < 1) throw std::invalid_argument("Example1Model: k_max >= 1");
  if (omega_.dimension() != 1) throw std::invalid_argument("Example1Model: omega field is d = 1");
  if (omega_.spec().dist != Distribution::UniformUnitInterval)
    throw std::invalid_argument("Example1Model: omega field must be UniformUnitInterval");
  const auto n = static_cast<std::size_t>(params_.k_max);
  if (params_.alpha.size() < n || params_.n_seq.size() < n || params_.d_seq.size() < n)
    throw std::invalid_argument("Example1Model: parameter sequences shorter than k_max");
  for (std::size_t k = 0; k < n; ++k) {
    if (params_.alpha[k] <= 0.0) throw std::invalid_argument("Example1Model: alpha_k > 0");
    if (params_.n_seq[k] <= 0 || (k > 0 && params_.n_seq[k] <= params_.n_seq[k - 1]))
      throw std::invalid_argument("Example1Model: n_k must be increasing positive");
  }
}

double Example1Model::zeta(double omega, int k) const {
  const auto labels = example1_labels(omega, params_.d_seq, k);
  return labels[static_cast<std::size_t>(k - 1)] /
         std::sqrt(params_.d_seq[static_cast<std::size_t>(k - 1)]);
}

double Example1Model::evaluate(const LatticePoint& site) const {
  return evaluate_under([this](const LatticePoint& s) { return omega_.value(s); }, site);
}

double Example1Model::evaluate_under(const Source& source, const LatticePoint& site) const {
  check_dimension(site, 1, "Example1Model::evaluate");
  const Coord n = site[0];
  double x = 0.0;
  const double omega_here = source(LatticePoint{n});
  for (int k = 1; k <= params_.k_max; ++k) {
    const Coord nk = params_.n_seq[static_cast<std::size_t>(k - 1)];
    const double omega_lag = source(LatticePoint{n - nk});
    x += params_.alpha[static_cast<std::size_t>(k - 1)] * (zeta(omega_here, k) - zeta(omega_lag, k));
  }
  return x;
}

Coord Example1Model::dependence_radius() const {
  return params_.n_seq[static_cast<std::size_t>(params_.k_max - 1)];
}

std::shared_ptr<FieldModel> Example1Model::with_innovation(InnovationField innov) const {
  return std::make_shared<Example1Model>(params_, std::move(innov));
}

}  // namespace lf
