#include "latticefield/weights.hpp"

#include <algorithm>
#include <cmath>

namespace lf {

double WeightScheme::norm() const {
  double s = 0.0;
  for_each([&](const LatticePoint&, double b) { s += b * b; });
  return std::sqrt(s);
}

PointMap WeightScheme::support_map() const {
  PointMap m;
  for_each([&](const LatticePoint& j, double b) { m[j] = b; });
  return m;
}

RectangleWeights::RectangleWeights(Coord n, std::vector<double> t) : n_(n), t_(std::move(t)) {
  if (n_ < 1) throw std::invalid_argument("RectangleWeights: n >= 1");
  if (t_.empty()) throw std::invalid_argument("RectangleWeights: empty t");
  for (double v : t_)
    if (v < 0.0 || v > 1.0) throw std::invalid_argument("RectangleWeights: t in [0,1]^d");
}

LatticePoint RectangleWeights::upper() const {
  LatticePoint u(t_.size());
  for (std::size_t q = 0; q < t_.size(); ++q)
    u[q] = static_cast<Coord>(std::floor(static_cast<double>(n_) * t_[q] + 1e-9));
  return u;
}

double RectangleWeights::coefficient(const LatticePoint& j) const {
  check_dimension(j, dimension(), "RectangleWeights::coefficient");
  const LatticePoint u = upper();
  for (std::size_t q = 0; q < t_.size(); ++q)
    if (j[q] < 1 || j[q] > u[q]) return 0.0;
  return 1.0;
}

void RectangleWeights::for_each(const Visitor& visit) const {
  const LatticePoint u = upper();
  for (Coord c : u)
    if (c < 1) return;  // empty box
  for (const auto& j : lattice_box(LatticePoint(t_.size(), 1), u)) visit(j, 1.0);
}

double RectangleWeights::norm() const {
  double count = 1.0;
  for (Coord c : upper()) count *= static_cast<double>(std::max<Coord>(c, 0));
  return std::sqrt(count);
}

IndexSetWeights::IndexSetWeights(std::vector<LatticePoint> gamma) : gamma_(std::move(gamma)) {
  if (gamma_.empty()) throw std::invalid_argument("IndexSetWeights: empty set");
  dim_ = static_cast<int>(gamma_.front().size());
  for (const auto& p : gamma_) {
    check_dimension(p, dim_, "IndexSetWeights site");
    lookup_.insert(p);
  }
  if (lookup_.size() != gamma_.size())
    throw std::invalid_argument("IndexSetWeights: duplicate sites");
  std::sort(gamma_.begin(), gamma_.end());
}

double IndexSetWeights::coefficient(const LatticePoint& j) const {
  return lookup_.count(j) ? 1.0 : 0.0;
}

void IndexSetWeights::for_each(const Visitor& visit) const {
  for (const auto& j : gamma_) visit(j, 1.0);
}

double IndexSetWeights::norm() const { return std::sqrt(static_cast<double>(gamma_.size())); }

Box Box::scaled(double factor) const {
  Box b(*this);
  for (auto& v : b.lo) v *= factor;
  for (auto& v : b.hi) v *= factor;
  return b;
}

double PowerMeasure::beta() const {
  double b = 0.0;
  for (double g : gamma) b += g + 1.0;
  return b;
}

double PowerMeasure::axis_mass(int axis, double a, double b) const {
  if (b <= a) return 0.0;
  const double g = gamma[static_cast<std::size_t>(axis)];
  if (g <= -1.0) throw std::invalid_argument("PowerMeasure: gamma_q > -1 required");
  auto F = [g](double x) {
    const double ax = std::abs(x);
    return (x < 0 ? -1.0 : 1.0) * std::pow(ax, g + 1.0) / (g + 1.0);
  };
  return F(b) - F(a);
}

double PowerMeasure::box_mass(const Box& box) const {
  double m = 1.0;
  for (int q = 0; q < dimension(); ++q)
    m *= axis_mass(q, box.lo[static_cast<std::size_t>(q)], box.hi[static_cast<std::size_t>(q)]);
  return m;
}

double PowerMeasure::region_mass(const std::vector<Box>& region) const {
  double m = 0.0;
  for (const auto& b : region) m += box_mass(b);
  return m;
}

double PowerMeasure::intersection_mass(const std::vector<Box>& region, const Box& cube) const {
  double m = 0.0;
  for (const auto& b : region) {
    double part = 1.0;
    for (int q = 0; q < dimension(); ++q) {
      const auto uq = static_cast<std::size_t>(q);
      const double lo = std::max(b.lo[uq], cube.lo[uq]);
      const double hi = std::min(b.hi[uq], cube.hi[uq]);
      if (hi <= lo) { part = 0.0; break; }
      part *= axis_mass(q, lo, hi);
    }
    m += part;
  }
  return m;
}

namespace {

bool boxes_overlap(const Box& a, const Box& b) {
  for (std::size_t q = 0; q < a.lo.size(); ++q)
    if (std::min(a.hi[q], b.hi[q]) <= std::max(a.lo[q], b.lo[q])) return false;
  return true;
}

}  // namespace

SetIndexedWeights::SetIndexedWeights(PowerMeasure measure, std::vector<Box> region, Coord n)
    : measure_(std::move(measure)), region_(std::move(region)), n_(n) {
  if (n_ < 1) throw std::invalid_argument("SetIndexedWeights: n >= 1");
  if (region_.empty()) throw std::invalid_argument("SetIndexedWeights: empty region");
  const auto dim = static_cast<std::size_t>(measure_.dimension());
  for (const auto& b : region_) {
    if (b.lo.size() != dim || b.hi.size() != dim)
      throw std::invalid_argument("SetIndexedWeights: box dimension mismatch");
    for (std::size_t q = 0; q < dim; ++q)
      if (b.hi[q] <= b.lo[q]) throw std::invalid_argument("SetIndexedWeights: degenerate box");
  }
  for (std::size_t i = 0; i < region_.size(); ++i)
    for (std::size_t j = i + 1; j < region_.size(); ++j)
      if (boxes_overlap(region_[i], region_[j]))
        throw std::invalid_argument("SetIndexedWeights: region boxes must be disjoint");
}

Box SetIndexedWeights::scaled_bounds() const {
  Box bounds = region_.front().scaled(static_cast<double>(n_));
  for (const auto& b : region_) {
    const Box s = b.scaled(static_cast<double>(n_));
    for (std::size_t q = 0; q < bounds.lo.size(); ++q) {
      bounds.lo[q] = std::min(bounds.lo[q], s.lo[q]);
      bounds.hi[q] = std::max(bounds.hi[q], s.hi[q]);
    }
  }
  return bounds;
}

double SetIndexedWeights::coefficient(const LatticePoint& j) const {
  check_dimension(j, dimension(), "SetIndexedWeights::coefficient");
  Box cube;
  cube.lo.resize(j.size());
  cube.hi.resize(j.size());
  for (std::size_t q = 0; q < j.size(); ++q) {
    cube.lo[q] = static_cast<double>(j[q]);
    cube.hi[q] = static_cast<double>(j[q]) + 1.0;
  }
  std::vector<Box> scaled;
  scaled.reserve(region_.size());
  for (const auto& b : region_) scaled.push_back(b.scaled(static_cast<double>(n_)));
  return std::sqrt(measure_.intersection_mass(scaled, cube));
}

void SetIndexedWeights::for_each(const Visitor& visit) const {
  const Box bounds = scaled_bounds();
  LatticePoint lo(bounds.lo.size()), hi(bounds.hi.size());
  for (std::size_t q = 0; q < lo.size(); ++q) {
    lo[q] = static_cast<Coord>(std::floor(bounds.lo[q])) - 1;
    hi[q] = static_cast<Coord>(std::ceil(bounds.hi[q])) + 1;
  }
  for (const auto& j : lattice_box(lo, hi)) {
    const double b = coefficient(j);
    if (b > 0.0) visit(j, b);
  }
}

double SetIndexedWeights::scaled_region_mass() const {
  return std::pow(static_cast<double>(n_), measure_.beta()) * measure_.region_mass(region_);
}

ProductLinearWeights::ProductLinearWeights(std::vector<std::vector<double>> axis_kernels, Coord n,
                                           std::vector<double> t)
    : axis_kernels_(std::move(axis_kernels)), n_(n), t_(std::move(t)) {
  if (axis_kernels_.empty()) throw std::invalid_argument("ProductLinearWeights: no kernels");
  if (t_.size() != axis_kernels_.size())
    throw std::invalid_argument("ProductLinearWeights: t dimension mismatch");
  if (n_ < 1) throw std::invalid_argument("ProductLinearWeights: n >= 1");
  for (const auto& k : axis_kernels_) {
    if (k.empty()) throw std::invalid_argument("ProductLinearWeights: empty axis kernel");
    std::vector<double> prefix(k.size() + 1, 0.0);
    for (std::size_t i = 0; i < k.size(); ++i) prefix[i + 1] = prefix[i] + k[i];
    axis_prefix_.push_back(std::move(prefix));
  }
}

double ProductLinearWeights::axis_coefficient(int axis, Coord m, Coord j) const {
  // sum_{i=1..m} a_{i-j} with kernel support 1..L
  const auto& prefix = axis_prefix_[static_cast<std::size_t>(axis)];
  const auto L = static_cast<Coord>(prefix.size() - 1);
  const Coord kmin = std::max<Coord>(1, 1 - j);
  const Coord kmax = std::min<Coord>(L, m - j);
  if (kmax < kmin) return 0.0;
  return prefix[static_cast<std::size_t>(kmax)] - prefix[static_cast<std::size_t>(kmin - 1)];
}

double ProductLinearWeights::axis_norm_sq(int axis, Coord m) const {
  const auto L = static_cast<Coord>(axis_kernels_[static_cast<std::size_t>(axis)].size());
  double s = 0.0;
  for (Coord j = 1 - L; j <= m - 1; ++j) {
    const double b = axis_coefficient(axis, m, j);
    s += b * b;
  }
  return s;
}

double ProductLinearWeights::coefficient(const LatticePoint& j) const {
  check_dimension(j, dimension(), "ProductLinearWeights::coefficient");
  double b = 1.0;
  for (int q = 0; q < dimension(); ++q) {
    const auto m = static_cast<Coord>(
        std::floor(static_cast<double>(n_) * t_[static_cast<std::size_t>(q)] + 1e-9));
    b *= axis_coefficient(q, m, j[static_cast<std::size_t>(q)]);
    if (b == 0.0) return 0.0;
  }
  return b;
}

void ProductLinearWeights::for_each(const Visitor& visit) const {
  LatticePoint lo(t_.size()), hi(t_.size());
  for (std::size_t q = 0; q < t_.size(); ++q) {
    const auto L = static_cast<Coord>(axis_kernels_[q].size());
    const auto m = static_cast<Coord>(std::floor(static_cast<double>(n_) * t_[q] + 1e-9));
    lo[q] = 1 - L;
    hi[q] = m - 1;
    if (hi[q] < lo[q]) return;
  }
  for (const auto& j : lattice_box(lo, hi)) {
    const double b = coefficient(j);
    if (b != 0.0) visit(j, b);
  }
}

double ProductLinearWeights::norm() const {
  double s = 1.0;
  for (int q = 0; q < dimension(); ++q) {
    const auto m = static_cast<Coord>(
        std::floor(static_cast<double>(n_) * t_[static_cast<std::size_t>(q)] + 1e-9));
    s *= axis_norm_sq(q, m);
  }
  return std::sqrt(s);
}

double check_negligibility(const WeightScheme& scheme) {
  double max_abs = 0.0, norm_sq = 0.0;
  scheme.for_each([&](const LatticePoint&, double b) {
    max_abs = std::max(max_abs, std::abs(b));
    norm_sq += b * b;
  });
  if (norm_sq <= 0.0) throw std::invalid_argument("check_negligibility: degenerate scheme (b_n = 0)");
  return max_abs / std::sqrt(norm_sq);
}

double check_shift_condition(const WeightScheme& scheme, int axis) {
  if (axis < 0 || axis >= scheme.dimension())
    throw std::invalid_argument("check_shift_condition: axis out of range");
  const PointMap support = scheme.support_map();
  auto value = [&](const LatticePoint& j) {
    auto it = support.find(j);
    return it == support.end() ? 0.0 : it->second;
  };
  // union of support and support - e_q covers all sites where the difference
  // T_{e_q} b - b can be nonzero
  PointSet sites;
  double norm_sq = 0.0;
  for (const auto& [j, b] : support) {
    norm_sq += b * b;
    sites.insert(j);
    LatticePoint shifted(j);
    shifted[static_cast<std::size_t>(axis)] -= 1;
    sites.insert(shifted);
  }
  if (norm_sq <= 0.0) throw std::invalid_argument("check_shift_condition: degenerate scheme");
  double diff_sq = 0.0;
  for (const auto& j : sites) {
    LatticePoint up(j);
    up[static_cast<std::size_t>(axis)] += 1;
    const double d = value(up) - value(j);
    diff_sq += d * d;
  }
  return std::sqrt(diff_sq / norm_sq);
}

double boundary_ratio(const IndexSetWeights& gamma) {
  const int dim = gamma.dimension();
  const auto neighbors = linf_ball(dim, 1);
  std::size_t boundary = 0;
  for (const auto& site : gamma.sites()) {
    for (const auto& off : neighbors) {
      if (is_origin(off)) continue;
      if (!gamma.contains(add(site, off))) {
        ++boundary;
        break;
      }
    }
  }
  return static_cast<double>(boundary) / static_cast<double>(gamma.size());
}

HurstProfile hurst_scaling_profile(const std::vector<double>& axis_kernel, Coord n,
                                   const std::vector<double>& s_grid) {
  ProductLinearWeights w({axis_kernel}, n, {1.0});
  const double bn2 = w.axis_norm_sq(0, n);
  HurstProfile profile;
  profile.s = s_grid;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (double s : s_grid) {
    const auto m = static_cast<Coord>(std::floor(static_cast<double>(n) * s + 1e-9));
    const double r = w.axis_norm_sq(0, m) / bn2;
    profile.ratio.push_back(r);
    const double x = std::log(s), y = std::log(r);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const auto k = static_cast<double>(s_grid.size());
  profile.fitted_2h = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  return profile;
}

std::vector<double> fractional_kernel(double hurst, std::size_t length) {
  std::vector<double> a(length);
  for (std::size_t i = 0; i < length; ++i)
    a[i] = std::pow(static_cast<double>(i + 1), hurst - 1.5);
  return a;
}

std::vector<LatticePoint> example2_gamma(int n) {
  if (n < 1 || n > 20) throw std::invalid_argument("example2_gamma: n in [1, 20]");
  std::vector<Coord> gamma{0, 1};
  for (int step = 1; step < n; ++step) {
    const Coord a = gamma.back();  // max, kept sorted by construction
    const Coord block = Coord{1} << step;
    if (step % 2 == 0) {
      for (Coord i = a + 2; i <= a + block + 1; ++i) gamma.push_back(i);
    } else {
      for (Coord i = 1; i <= block; ++i) gamma.push_back(a + 2 * i);
    }
  }
  std::vector<LatticePoint> out;
  out.reserve(gamma.size());
  for (Coord c : gamma) out.push_back({c});
  return out;
}

}  // namespace lf
