#pragma once

/**
 * @file cpw_field.hpp
 * @brief Magnetostatic field of a coplanar-waveguide track.
 *
 * The track is modelled as an infinitely long, infinitely thin sheet of
 * width w in the z = 0 plane carrying a uniform surface current. For a sheet
 * centred at x = xc the in-plane horizontal component at (x, z >= 0) is
 *
 *   Bx(x, z) = mu0 I / (2 pi w) * [ atan2(w/2 - u, z) + atan2(w/2 + u, z) ],
 *   u = x - xc,
 *
 * which tends to mu0 I / (2 w) at the sheet surface and to the thin-wire
 * field mu0 I / (2 pi z) far away. The line current per sqrt(W) follows the
 * lossless transmission line relation I_RF = sqrt(P_RF / Z).
 *
 * Skin and proximity edge concentration is not modelled; the uniform current
 * density biases the sampled field toward more lateral uniformity than a
 * frequency-resolved solver would produce.
 *
 * Return conductors are optional and off by default. When enabled, two
 * sheets of the same width w carrying -I/2 each are placed at a gap of w/2
 * on either side of the track.
 */

#include <cmath>

#include "nvrf/constants.hpp"
#include "nvrf/field_map.hpp"
#include "nvrf/geometry.hpp"
#include "nvrf/parallel.hpp"

namespace nvrf {

/// In-plane horizontal field of a uniform current sheet of width `width`
/// centred at x = xc, carrying total current `current` [T].
inline double strip_bx(double current, double width, double xc, double x,
                       double z) {
  const double u = x - xc;
  const double h = 0.5 * width;
  return constants::mu0 * current / (2.0 * constants::pi * width) *
         (std::atan2(h - u, z) + std::atan2(h + u, z));
}

/// Vertical field component of the same sheet [T].
inline double strip_bz(double current, double width, double xc, double x,
                       double z) {
  const double u = x - xc;
  const double h = 0.5 * width;
  const double num = (u - h) * (u - h) + z * z;
  const double den = (u + h) * (u + h) + z * z;
  return constants::mu0 * current / (4.0 * constants::pi * width) *
         std::log(num / den);
}

/// Track-surface field-to-power ratio, alpha = mu0 / (2 w sqrt(Z)).
inline double cpw_alpha_ref(const CpwGeometry &geom) {
  return constants::mu0 / (2.0 * geom.width * std::sqrt(geom.impedance));
}

/// Line current per sqrt(W) of input power.
inline double cpw_current_per_sqrt_watt(const CpwGeometry &geom) {
  return 1.0 / std::sqrt(geom.impedance);
}

/// |Bx| per sqrt(W) at a point of the cross section. Coordinates are
/// relative to the track centre; z = 0 is the track surface.
inline double cpw_alpha_at(const CpwGeometry &geom, double x, double z,
                           bool include_returns = false) {
  const double i_rf = cpw_current_per_sqrt_watt(geom);
  const double w = geom.width;
  double bx = strip_bx(i_rf, w, 0.0, x, z);
  if (include_returns) {
    // gap w/2, return sheets of width w carrying -I/2 each
    const double xc = w + 0.5 * w;
    bx -= strip_bx(0.5 * i_rf, w, xc, x, z);
    bx -= strip_bx(0.5 * i_rf, w, -xc, x, z);
  }
  return std::abs(bx);
}

/// Samples |Bx| per sqrt(W) over the cross section above the track.
///
/// The lattice is cell centred: it spans x in [-E w/2, E w/2] and
/// z in [standoff, standoff + E w] with nodes at cell midpoints, so region
/// edges that are multiples of the cell size fall on cell boundaries and
/// nodal averages act as midpoint quadrature. Node spacing coarser than w/8
/// is rejected.
inline FieldMap cpw_field_map(const CpwGeometry &geom, const GridSpec &grid,
                              bool include_returns = false, int threads = 1) {
  const double w = geom.width;
  const double span_x = grid.extent * w;
  const double span_z = grid.extent * w;
  const double dx = span_x / grid.nx;
  const double dz = span_z / grid.nz;
  if (dx > w / 8.0 || dz > w / 8.0) {
    throw ResolutionError("cpw_field_map: node spacing exceeds w/8");
  }
  FieldMap map;
  map.component = FieldComponent::InPlaneX;
  map.n1 = grid.nx;
  map.n2 = grid.nz;
  map.d1 = dx;
  map.d2 = dz;
  map.origin1 = -0.5 * span_x + 0.5 * dx;
  map.origin2 = geom.standoff + 0.5 * dz;
  map.alpha.resize(static_cast<std::size_t>(grid.nx) * grid.nz);
  map.masked.assign(map.alpha.size(), 0);
  parallel_for(map.alpha.size(), threads, [&](std::size_t idx) {
    const int i = static_cast<int>(idx) / grid.nz;
    const int j = static_cast<int>(idx) % grid.nz;
    map.alpha[idx] =
        cpw_alpha_at(geom, map.coord1(i), map.coord2(j), include_returns);
  });
  return map;
}

} // namespace nvrf
