#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace lf {

using Coord = std::int64_t;

// A site j in Z^d. Dimension is the vector length and must agree across
// all points of one experiment.
using LatticePoint = std::vector<Coord>;

inline LatticePoint origin(int dim) { return LatticePoint(static_cast<std::size_t>(dim), 0); }

inline bool is_origin(const LatticePoint& p) {
  for (Coord c : p)
    if (c != 0) return false;
  return true;
}

inline Coord linf_norm(const LatticePoint& p) {
  Coord m = 0;
  for (Coord c : p) m = std::max(m, c < 0 ? -c : c);
  return m;
}

inline LatticePoint add(const LatticePoint& a, const LatticePoint& b) {
  LatticePoint r(a);
  for (std::size_t q = 0; q < r.size(); ++q) r[q] += b[q];
  return r;
}

inline LatticePoint sub(const LatticePoint& a, const LatticePoint& b) {
  LatticePoint r(a);
  for (std::size_t q = 0; q < r.size(); ++q) r[q] -= b[q];
  return r;
}

inline void check_dimension(const LatticePoint& p, int dim, const char* what) {
  if (static_cast<int>(p.size()) != dim)
    throw std::invalid_argument(std::string(what) + ": lattice point dimension " +
                                std::to_string(p.size()) + " != " + std::to_string(dim));
}

// splitmix64 finalizer, also reused for hashing coordinates.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct PointHash {
  std::size_t operator()(const LatticePoint& p) const {
    std::uint64_t h = 0x51ab2fd70a3c1e4bULL;
    for (Coord c : p) h = mix64(h ^ static_cast<std::uint64_t>(c));
    return static_cast<std::size_t>(h);
  }
};

using PointMap = std::unordered_map<LatticePoint, double, PointHash>;
using PointSet = std::unordered_set<LatticePoint, PointHash>;

// Enumerates the box [-r, r]^d.
std::vector<LatticePoint> linf_ball(int dim, Coord radius);

// Enumerates [lo_q, hi_q] per axis (inclusive).
std::vector<LatticePoint> lattice_box(const LatticePoint& lo, const LatticePoint& hi);

}  // namespace lf
