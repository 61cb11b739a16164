#include "latticefield/innovations.hpp"

#include <cmath>
#include <numbers>

namespace lf {

InnovationSpec InnovationSpec::two_point(double prob, double a, double b) {
  if (prob <= 0.0 || prob >= 1.0) throw std::invalid_argument("TwoPoint: prob must be in (0,1)");
  InnovationSpec s;
  s.dist = Distribution::TwoPoint;
  s.prob = prob;
  s.a = a;
  s.b = b;
  return s;
}

bool InnovationSpec::centered() const { return std::abs(mean()) < 1e-15; }

double InnovationSpec::mean() const {
  switch (dist) {
    case Distribution::Rademacher: return 0.0;
    case Distribution::StandardGaussian: return 0.0;
    case Distribution::UniformUnitInterval: return 0.5;
    case Distribution::TwoPoint: return prob * a + (1.0 - prob) * b;
  }
  throw std::logic_error("unreachable");
}

double InnovationSpec::abs_moment(int p) const {
  if (p < 1) throw std::invalid_argument("abs_moment: p must be >= 1");
  switch (dist) {
    case Distribution::Rademacher:
      return 1.0;
    case Distribution::StandardGaussian: {
      // E|Z|^p = 2^{p/2} Gamma((p+1)/2) / sqrt(pi)
      switch (p) {
        case 1: return std::sqrt(2.0 / std::numbers::pi);
        case 2: return 1.0;
        case 3: return 2.0 * std::sqrt(2.0 / std::numbers::pi);
        case 4: return 3.0;
        case 6: return 15.0;
        default: throw std::invalid_argument("Gaussian abs_moment: p in {1,2,3,4,6}");
      }
    }
    case Distribution::UniformUnitInterval:
      return 1.0 / (p + 1.0);
    case Distribution::TwoPoint:
      return prob * std::pow(std::abs(a), p) + (1.0 - prob) * std::pow(std::abs(b), p);
  }
  throw std::logic_error("unreachable");
}

std::string InnovationSpec::name() const {
  switch (dist) {
    case Distribution::Rademacher: return "rademacher";
    case Distribution::StandardGaussian: return "gaussian";
    case Distribution::UniformUnitInterval: return "uniform01";
    case Distribution::TwoPoint: return "two_point";
  }
  throw std::logic_error("unreachable");
}

InnovationSpec spec_from_name(const std::string& name) {
  if (name == "rademacher") return InnovationSpec::rademacher();
  if (name == "gaussian") return InnovationSpec::gaussian();
  if (name == "uniform01") return InnovationSpec::uniform01();
  throw std::invalid_argument("unknown innovation distribution: " + name);
}

namespace {
constexpr std::uint64_t kCoordSalt = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kDrawStride = 0xd1342543de82ef95ULL;
constexpr std::uint64_t kStarSalt = 0x6a09e667f3bcc909ULL;
}  // namespace

std::uint64_t site_key(std::uint64_t seed, const LatticePoint& site) {
  std::uint64_t state = seed;
  for (Coord c : site) state = mix64(state ^ (zigzag(c) + kCoordSalt));
  return state;
}

std::uint64_t site_draw(std::uint64_t key, std::uint64_t k) {
  return mix64(key + k * kDrawStride);
}

InnovationField::InnovationField(InnovationSpec spec, std::uint64_t seed, int dim)
    : spec_(spec), seed_(seed), dim_(dim) {
  if (dim < 1) throw std::invalid_argument("InnovationField: dimension must be >= 1");
}

double InnovationField::draw_from_key(const InnovationSpec& spec, std::uint64_t key) {
  switch (spec.dist) {
    case Distribution::Rademacher:
      return (site_draw(key, 0) & 1u) ? 1.0 : -1.0;
    case Distribution::StandardGaussian: {
      const double u1 = u64_to_unit(site_draw(key, 0));
      const double u2 = u64_to_unit(site_draw(key, 1));
      return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }
    case Distribution::UniformUnitInterval:
      return u64_to_unit(site_draw(key, 0));
    case Distribution::TwoPoint:
      return u64_to_unit(site_draw(key, 0)) <= spec.prob ? spec.a : spec.b;
  }
  throw std::logic_error("unreachable");
}

double InnovationField::raw_value(const LatticePoint& site) const {
  check_dimension(site, dim_, "InnovationField::value");
  return draw_from_key(spec_, site_key(seed_, site));
}

double InnovationField::value(const LatticePoint& site) const {
  if (!overrides_.empty()) {
    auto it = overrides_.find(site);
    if (it != overrides_.end()) {
      check_dimension(site, dim_, "InnovationField::value");
      return it->second;
    }
  }
  return raw_value(site);
}

void InnovationField::set_override(const LatticePoint& site, double v) {
  check_dimension(site, dim_, "InnovationField::set_override");
  overrides_[site] = v;
}

InnovationField InnovationField::star_copy() const {
  InnovationField out(*this);
  out.star_depth_ = star_depth_ + 1;
  // Independent stream: distinct salt plus the redraw depth, keyed at the origin.
  const std::uint64_t star_seed = mix64(seed_ ^ kStarSalt) + out.star_depth_;
  out.set_override(origin(dim_), draw_from_key(spec_, site_key(star_seed, origin(dim_))));
  return out;
}

}  // namespace lf
