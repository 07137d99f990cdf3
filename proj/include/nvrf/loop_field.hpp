#pragma once

/**
 * @file loop_field.hpp
 * @brief Magnetostatic field of a circular loop filament.
 *
 * The loop of radius R lies in the z = 0 plane centred on the origin and is
 * modelled as an infinitely thin filament. Off axis the axial component
 * follows the complete-elliptic-integral closed form; on axis it reduces to
 *
 *   Bz(z) = mu0 I R^2 / ( 2 (z^2 + R^2)^(3/2) ).
 *
 * A terminated (shorted-line) loop carries I_RF = 2 sqrt(P_RF / Z), so the
 * centre field-to-power ratio is alpha = mu0 / (R sqrt(Z)).
 */

#include <cmath>

#include "nvrf/constants.hpp"
#include "nvrf/elliptic.hpp"
#include "nvrf/field_map.hpp"
#include "nvrf/geometry.hpp"
#include "nvrf/parallel.hpp"

namespace nvrf {

/// Centre field-to-power ratio, alpha = mu0 / (R sqrt(Z)).
inline double loop_alpha_ref(const LoopGeometry &geom) {
  return constants::mu0 / (geom.radius * std::sqrt(geom.impedance));
}

/// Shorted-line loop current per sqrt(W) of input power.
inline double loop_current_per_sqrt_watt(const LoopGeometry &geom) {
  return 2.0 / std::sqrt(geom.impedance);
}

/// On-axis axial field at height z for loop current i_rf [T].
inline double loop_onaxis_bz(const LoopGeometry &geom, double z, double i_rf) {
  const double r2 = geom.radius * geom.radius;
  return constants::mu0 * i_rf * r2 / (2.0 * std::pow(z * z + r2, 1.5));
}

/// Axial field at cylindrical point (rho, z) for loop current i_rf [T].
/// Falls back to the exact on-axis expression for rho = 0.
inline double loop_bz(const LoopGeometry &geom, double rho, double z,
                      double i_rf) {
  if (rho < 0.0) throw std::domain_error("rho must be >= 0");
  const double r = geom.radius;
  if (rho == 0.0) return loop_onaxis_bz(geom, z, i_rf);
  const double sum2 = (r + rho) * (r + rho) + z * z;
  const double diff2 = (r - rho) * (r - rho) + z * z;
  const double k = std::sqrt(4.0 * r * rho / sum2);
  const auto [K, E] = complete_elliptic_ke(k);
  return constants::mu0 * i_rf / (2.0 * constants::pi * std::sqrt(sum2)) *
         (K + (r * r - rho * rho - z * z) / diff2 * E);
}

/// True when (rho, z) lies inside the conductor exclusion tube of radius
/// wire_ratio * R / 2 around the filament ring.
inline bool loop_point_in_wire(const LoopGeometry &geom, double rho, double z) {
  const double dr = rho - geom.radius;
  const double tube = 0.5 * geom.wire_ratio * geom.radius;
  return dr * dr + z * z < tube * tube;
}

/// Samples |Bz| per sqrt(W) on an axisymmetric (rho, z) lattice.
///
/// Nodes are lattice registered: rho runs from 0 (the axis column is exact
/// on-axis field) to E R / 2, z symmetrically over [-E R / 2, E R / 2] with
/// a node at the loop plane (an even z count is bumped to the next odd one).
/// Nodes inside the wire exclusion tube are masked, not errors.
inline FieldMap loop_field_map(const LoopGeometry &geom, const GridSpec &grid,
                               int threads = 1) {
  const double r = geom.radius;
  const int n_rho = grid.nx;
  const int n_z = (grid.nz % 2 == 0) ? grid.nz + 1 : grid.nz;
  const double rho_max = 0.5 * grid.extent * r;
  const double z_half = 0.5 * grid.extent * r;
  const double d_rho = rho_max / (n_rho - 1);
  const double d_z = 2.0 * z_half / (n_z - 1);
  if (d_rho > r / 8.0 || d_z > r / 8.0) {
    throw ResolutionError("loop_field_map: node spacing exceeds R/8");
  }
  const double i_rf = loop_current_per_sqrt_watt(geom);
  FieldMap map;
  map.component = FieldComponent::AxialZ;
  map.n1 = n_rho;
  map.n2 = n_z;
  map.d1 = d_rho;
  map.d2 = d_z;
  map.origin1 = 0.0;
  map.origin2 = -z_half;
  map.alpha.resize(static_cast<std::size_t>(n_rho) * n_z);
  map.masked.assign(map.alpha.size(), 0);
  parallel_for(map.alpha.size(), threads, [&](std::size_t idx) {
    const int i = static_cast<int>(idx) / n_z;
    const int j = static_cast<int>(idx) % n_z;
    const double rho = map.coord1(i);
    const double z = map.coord2(j);
    if (loop_point_in_wire(geom, rho, z)) {
      map.masked[idx] = 1;
      map.alpha[idx] = 0.0;
    } else {
      map.alpha[idx] = std::abs(loop_bz(geom, rho, z, i_rf));
    }
  });
  return map;
}

} // namespace nvrf
