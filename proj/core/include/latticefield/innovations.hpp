#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "latticefield/lattice.hpp"

namespace lf {

enum class Distribution {
  Rademacher,
  StandardGaussian,
  UniformUnitInterval,
  TwoPoint,
};

// Marginal law of the i.i.d. innovations. UniformUnitInterval is only the
// omega-source for the interval-partition construction, never an X-innovation.
struct InnovationSpec {
  Distribution dist = Distribution::Rademacher;
  // TwoPoint: P(eps = a) = prob, P(eps = b) = 1 - prob.
  double prob = 0.5;
  double a = 1.0;
  double b = -1.0;

  static InnovationSpec rademacher() { return {Distribution::Rademacher}; }
  static InnovationSpec gaussian() { return {Distribution::StandardGaussian}; }
  static InnovationSpec uniform01() { return {Distribution::UniformUnitInterval}; }
  static InnovationSpec two_point(double prob, double a, double b);

  bool centered() const;
  double mean() const;
  // m_p = E|eps|^p, closed form, p in {1,2,3,4,6} (and any p for the discrete laws).
  double abs_moment(int p) const;
  double variance() const { return abs_moment(2) - mean() * mean(); }

  std::string name() const;
};

InnovationSpec spec_from_name(const std::string& name);

// Zig-zag code for signed coordinates; keeps the site hash bit-exact across
// platforms regardless of signed-shift behavior.
inline std::uint64_t zigzag(Coord c) {
  return (static_cast<std::uint64_t>(c) << 1) ^ static_cast<std::uint64_t>(c >> 63);
}

// Documented site hash: state = seed, then for each coordinate c (in order)
// state = mix64(state ^ (zigzag(c) + 0x9e3779b97f4a7c15)). Draw k of the
// per-site stream is mix64(state + k * 0xd1342543de82ef95).
std::uint64_t site_key(std::uint64_t seed, const LatticePoint& site);
std::uint64_t site_draw(std::uint64_t key, std::uint64_t k);

// uniform in (0, 1], 53-bit resolution
inline double u64_to_unit(std::uint64_t x) {
  return static_cast<double>((x >> 11) + 1) * 0x1.0p-53;
}

// Reproducible i.i.d. innovation field: value(site) is a pure function of
// (seed, spec, site). Read-only after construction.
class InnovationField {
 public:
  InnovationField(InnovationSpec spec, std::uint64_t seed, int dim);

  double value(const LatticePoint& site) const;

  const InnovationSpec& spec() const { return spec_; }
  std::uint64_t seed() const { return seed_; }
  int dimension() const { return dim_; }
  const PointMap& overrides() const { return overrides_; }

  // Single-threaded setup step; fixes the value at one site (Wu coupling).
  void set_override(const LatticePoint& site, double v);

  // Same field except the origin carries an independent draw, realized as an
  // override from a distinct seed stream. Repeated calls redraw again.
  InnovationField star_copy() const;

  // Value ignoring overrides (the underlying deterministic draw).
  double raw_value(const LatticePoint& site) const;

  static double draw_from_key(const InnovationSpec& spec, std::uint64_t key);

 private:
  InnovationSpec spec_;
  std::uint64_t seed_;
  int dim_;
  PointMap overrides_;
  std::uint32_t star_depth_ = 0;
};

}  // namespace lf
