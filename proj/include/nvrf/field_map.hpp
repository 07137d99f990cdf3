#pragma once

/**
 * @file field_map.hpp
 * @brief Regular-grid samples of the field-to-power ratio alpha(r).
 *
 * A FieldMap holds the sensing-relevant field component per sqrt(W) on a
 * regular two-dimensional lattice: (x, z) across the waveguide cross section,
 * or (rho, z) for an axisymmetric loop. Nodes inside a conductor exclusion
 * zone carry a mask flag and are skipped by all downstream integrals. Once
 * generated a map is immutable and freely shareable across threads.
 */

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <vector>

#include "nvrf/errors.hpp"
#include "nvrf/format.hpp"

namespace nvrf {

/// Which field component the map stores.
enum class FieldComponent {
  InPlaneX, ///< horizontal in-plane component (waveguide cross section)
  AxialZ,   ///< axial component (loop axis)
};

/// Node counts and extent of a sampling grid. The extent is measured in
/// multiples of the concentrator's characteristic size (track width or loop
/// radius) and must cover the probe regions of interest.
struct GridSpec {
  int nx = 120;
  int nz = 120;
  double extent = 3.0;

  GridSpec() = default;
  GridSpec(int nx_, int nz_, double extent_) : nx(nx_), nz(nz_), extent(extent_) {
    if (nx < 16 || nz < 16) throw std::domain_error("grid node counts must be >= 16");
    if (!(extent >= 2.0)) throw std::domain_error("grid extent must be >= 2");
  }
};

/// Immutable sampled alpha(r) lattice. values[i * n2 + j] is the node at
/// (coord1(i), coord2(j)); all alpha values are >= 0 (magnitude of the
/// relevant component, in T W^-1/2).
struct FieldMap {
  FieldComponent component = FieldComponent::InPlaneX;
  int n1 = 0;          ///< nodes along x (or rho)
  int n2 = 0;          ///< nodes along z
  double origin1 = 0.0; ///< coordinate of node (0, *) on the first axis [m]
  double origin2 = 0.0; ///< coordinate of node (*, 0) on the second axis [m]
  double d1 = 0.0;     ///< node spacing, first axis [m]
  double d2 = 0.0;     ///< node spacing, second axis [m]
  std::vector<double> alpha;       ///< size n1 * n2, T W^-1/2
  std::vector<std::uint8_t> masked; ///< size n1 * n2, 1 = inside a conductor

  double coord1(int i) const { return origin1 + i * d1; }
  double coord2(int j) const { return origin2 + j * d2; }
  double at(int i, int j) const { return alpha[static_cast<std::size_t>(i) * n2 + j]; }
  bool is_masked(int i, int j) const {
    return masked[static_cast<std::size_t>(i) * n2 + j] != 0;
  }
  std::size_t size() const { return alpha.size(); }
};

/// Writes `x,z,alpha,masked` (or `rho,z,alpha,masked`) rows in row-major
/// grid order, coordinates in meters, alpha in T W^-1/2.
inline void write_field_map_csv(const FieldMap &map, std::ostream &os) {
  const char *axis1 = map.component == FieldComponent::AxialZ ? "rho" : "x";
  os << axis1 << ",z,alpha,masked\n";
  for (int i = 0; i < map.n1; ++i) {
    for (int j = 0; j < map.n2; ++j) {
      os << format_sci(map.coord1(i)) << ',' << format_sci(map.coord2(j)) << ','
         << format_sci(map.at(i, j)) << ',' << (map.is_masked(i, j) ? '1' : '0')
         << '\n';
    }
  }
}

} // namespace nvrf
