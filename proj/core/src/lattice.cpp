#include "latticefield/lattice.hpp"

namespace lf {

std::vector<LatticePoint> lattice_box(const LatticePoint& lo, const LatticePoint& hi) {
  const int dim = static_cast<int>(lo.size());
  check_dimension(hi, dim, "lattice_box");
  std::size_t count = 1;
  for (int q = 0; q < dim; ++q) {
    if (hi[q] < lo[q]) return {};
    count *= static_cast<std::size_t>(hi[q] - lo[q] + 1);
  }
  std::vector<LatticePoint> out;
  out.reserve(count);
  LatticePoint p(lo);
  while (true) {
    out.push_back(p);
    int q = dim - 1;
    while (q >= 0) {
      if (++p[q] <= hi[q]) break;
      p[q] = lo[q];
      --q;
    }
    if (q < 0) break;
  }
  return out;
}

std::vector<LatticePoint> linf_ball(int dim, Coord radius) {
  LatticePoint lo(static_cast<std::size_t>(dim), -radius);
  LatticePoint hi(static_cast<std::size_t>(dim), radius);
  return lattice_box(lo, hi);
}

}  // namespace lf
