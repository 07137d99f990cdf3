#pragma once

/**
 * @file probe.hpp
 * @brief Probe-volume integration and figure-of-merit grid search.
 *
 * Probe regions are normalised to the concentrator size: a box of width
 * c1 w and height c2 w sitting on the waveguide track, or a cylinder of
 * radius c1 R and thickness c2 R (optionally a fixed thickness T) coaxial
 * with the loop and centred on its plane.
 *
 * Volume averages of alpha^kappa are midpoint sums over the map nodes whose
 * cells fall inside the region, with rho-weighting for the axisymmetric
 * loop. Masked nodes are excluded; a region with more than 20% of its nodes
 * masked is rejected as geometrically invalid.
 */

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "nvrf/cpw_field.hpp"
#include "nvrf/field_map.hpp"
#include "nvrf/geometry.hpp"
#include "nvrf/loop_field.hpp"
#include "nvrf/model.hpp"

namespace nvrf {

struct ProbeRegionCpw {
  double c1 = 1.0;     ///< region width / track width
  double c2 = 1.0;     ///< region height / track width
  double length = 0.0; ///< extent along the track [m]

  ProbeRegionCpw(double c1_, double c2_, double length_)
      : c1(c1_), c2(c2_), length(length_) {
    detail::require_positive(c1, "c1");
    detail::require_positive(c2, "c2");
    detail::require_positive(length, "region length");
  }
};

struct ProbeRegionLoop {
  double c1 = 0.5; ///< probe radius / loop radius, in (0, 1)
  double c2 = 0.5; ///< thickness / loop radius (ignored when t_fixed is set)
  std::optional<double> t_fixed; ///< fixed thickness T [m]

  ProbeRegionLoop(double c1_, double c2_,
                  std::optional<double> t_fixed_ = std::nullopt)
      : c1(c1_), c2(c2_), t_fixed(t_fixed_) {
    if (!(c1 > 0.0 && c1 < 1.0)) {
      throw std::domain_error("loop probe c1 must lie in (0, 1)");
    }
    if (t_fixed) {
      detail::require_positive(*t_fixed, "t_fixed");
    } else {
      detail::require_positive(c2, "c2");
    }
  }

  double thickness(const LoopGeometry &geom) const {
    return t_fixed ? *t_fixed : c2 * geom.radius;
  }
};

inline double region_volume(const CpwGeometry &geom, const ProbeRegionCpw &region) {
  return region.c1 * region.c2 * geom.width * geom.width * region.length;
}

inline double region_volume(const LoopGeometry &geom, const ProbeRegionLoop &region) {
  const double r = region.c1 * geom.radius;
  return constants::pi * r * r * region.thickness(geom);
}

// ---------------------------------------------------------------------------
// Beam bookkeeping
// ---------------------------------------------------------------------------

inline double beam_area_for(const CpwGeometry &geom, const ProbeRegionCpw &region,
                            BeamGeometry beam) {
  switch (beam) {
  case BeamGeometry::ParallelCpw:
    return region.c1 * geom.width * region.c2 * geom.width;
  case BeamGeometry::PerpendicularCpw:
    return region.c1 * geom.width * region.length;
  default:
    throw std::domain_error("beam geometry does not apply to a waveguide");
  }
}

inline double beam_area_for(const LoopGeometry &geom, const ProbeRegionLoop &region,
                            BeamGeometry beam) {
  if (beam != BeamGeometry::LoopAxial) {
    throw std::domain_error("loop probes use the axial beam geometry");
  }
  const double r = region.c1 * geom.radius;
  return constants::pi * r * r;
}

inline Optics make_cpw_optics(double p_laser, double i_sat, BeamGeometry beam,
                              const CpwGeometry &geom, const ProbeRegionCpw &region) {
  const double area = beam_area_for(geom, region, beam);
  return Optics(p_laser, i_sat, beam, area, region_volume(geom, region) / area);
}

inline Optics make_loop_optics(double p_laser, double i_sat,
                               const LoopGeometry &geom, const ProbeRegionLoop &region) {
  const double area = beam_area_for(geom, region, BeamGeometry::LoopAxial);
  return Optics(p_laser, i_sat, BeamGeometry::LoopAxial, area,
                region_volume(geom, region) / area);
}

// ---------------------------------------------------------------------------
// Region averages
// ---------------------------------------------------------------------------

namespace detail {

struct RegionAverage {
  double avg = 0.0;        ///< weighted mean of alpha^kappa over usable nodes
  int usable_nodes = 0;
  double masked_fraction = 0.0;
};

enum class RegionStatus { Ok, OutsideMap, TooFewNodes, TooManyMasked };

/// Weighted nodal average of alpha^kappa over the closed box
/// [lo1, hi1] x [lo2, hi2]. Weight is 1, or the first coordinate when
/// `radial` (axisymmetric volume element).
inline RegionStatus region_average(const FieldMap &map, double lo1, double hi1,
                                   double lo2, double hi2, bool radial,
                                   double kappa, RegionAverage &out) {
  const double cover_lo1 = map.origin1 - 0.5 * map.d1;
  const double cover_hi1 = map.coord1(map.n1 - 1) + 0.5 * map.d1;
  const double cover_lo2 = map.origin2 - 0.5 * map.d2;
  const double cover_hi2 = map.coord2(map.n2 - 1) + 0.5 * map.d2;
  const double slack1 = 1e-9 * map.d1;
  const double slack2 = 1e-9 * map.d2;
  if (lo1 < cover_lo1 - slack1 || hi1 > cover_hi1 + slack1 ||
      lo2 < cover_lo2 - slack2 || hi2 > cover_hi2 + slack2) {
    return RegionStatus::OutsideMap;
  }
  const int i_lo = std::max(0, static_cast<int>(std::ceil((lo1 - map.origin1) / map.d1 - slack1)));
  const int i_hi = std::min(map.n1 - 1, static_cast<int>(std::floor((hi1 - map.origin1) / map.d1 + slack1)));
  const int j_lo = std::max(0, static_cast<int>(std::ceil((lo2 - map.origin2) / map.d2 - slack2)));
  const int j_hi = std::min(map.n2 - 1, static_cast<int>(std::floor((hi2 - map.origin2) / map.d2 + slack2)));
  double wsum = 0.0, vsum = 0.0;
  int inside = 0, usable = 0;
  const bool k1 = kappa == 1.0, k2 = kappa == 2.0;
  for (int i = i_lo; i <= i_hi; ++i) {
    const double weight = radial ? map.coord1(i) : 1.0;
    for (int j = j_lo; j <= j_hi; ++j) {
      ++inside;
      if (map.is_masked(i, j)) continue;
      ++usable;
      wsum += weight;
      const double a = map.at(i, j);
      vsum += weight * (k1 ? a : k2 ? a * a : std::pow(a, kappa));
    }
  }
  if (inside == 0 || usable < 16) return RegionStatus::TooFewNodes;
  const double masked_fraction = 1.0 - static_cast<double>(usable) / inside;
  if (masked_fraction > 0.20) return RegionStatus::TooManyMasked;
  if (!(wsum > 0.0)) return RegionStatus::TooFewNodes;
  out.avg = vsum / wsum;
  out.usable_nodes = usable;
  out.masked_fraction = masked_fraction;
  return RegionStatus::Ok;
}

inline RegionStatus region_average(const FieldMap &map, const CpwGeometry &geom,
                                   const ProbeRegionCpw &region, double kappa,
                                   RegionAverage &out) {
  const double half_w = 0.5 * region.c1 * geom.width;
  return region_average(map, -half_w, half_w, geom.standoff,
                        geom.standoff + region.c2 * geom.width, false, kappa, out);
}

inline RegionStatus region_average(const FieldMap &map, const LoopGeometry &geom,
                                   const ProbeRegionLoop &region, double kappa,
                                   RegionAverage &out) {
  const double t = region.thickness(geom);
  return region_average(map, 0.0, region.c1 * geom.radius, -0.5 * t, 0.5 * t,
                        true, kappa, out);
}

template <typename Geom, typename Region>
double checked_average(const FieldMap &map, const Geom &geom,
                       const Region &region, double kappa) {
  RegionAverage ra;
  switch (region_average(map, geom, region, kappa, ra)) {
  case RegionStatus::Ok:
    return ra.avg;
  case RegionStatus::OutsideMap:
    throw std::domain_error("probe region extends outside the field map");
  case RegionStatus::TooManyMasked:
    throw std::domain_error("more than 20% of the probe region is masked");
  default:
    throw ResolutionError("probe region covers fewer than 16 usable nodes");
  }
}

} // namespace detail

/// <alpha^kappa_prot> over a waveguide probe box (uniform weighting).
inline double avg_alpha_pow(const FieldMap &map, const CpwGeometry &geom,
                            const ProbeRegionCpw &region, double kappa_prot) {
  return detail::checked_average(map, geom, region, kappa_prot);
}

/// <alpha^kappa_prot> over a coaxial loop cylinder (rho-weighted).
inline double avg_alpha_pow(const FieldMap &map, const LoopGeometry &geom,
                            const ProbeRegionLoop &region, double kappa_prot) {
  return detail::checked_average(map, geom, region, kappa_prot);
}

/// zeta = <alpha^kp>_V / alpha_ref^kp, the volume-average of the field
/// factor relative to its closed-form reference value.
inline double zeta_of_region(const FieldMap &map, const CpwGeometry &geom,
                             const ProbeRegionCpw &region, double kappa_prot) {
  return avg_alpha_pow(map, geom, region, kappa_prot) /
         std::pow(cpw_alpha_ref(geom), kappa_prot);
}

inline double zeta_of_region(const FieldMap &map, const LoopGeometry &geom,
                             const ProbeRegionLoop &region, double kappa_prot) {
  return avg_alpha_pow(map, geom, region, kappa_prot) /
         std::pow(loop_alpha_ref(geom), kappa_prot);
}

// ---------------------------------------------------------------------------
// Grid search
// ---------------------------------------------------------------------------

/// Candidate (c1, c2) values for the probe search. The default covers
/// 0.05 .. 3.00 in steps of 0.05 on both axes.
struct SearchGrid {
  std::vector<double> c1_values;
  std::vector<double> c2_values;
};

inline SearchGrid default_search_grid() {
  SearchGrid grid;
  for (int i = 1; i <= 60; ++i) {
    grid.c1_values.push_back(i * 0.05);
    grid.c2_values.push_back(i * 0.05);
  }
  return grid;
}

struct SearchTracePoint {
  double c1 = 0.0;
  double c2 = 0.0;
  double fom = 0.0;
  double zeta = 0.0;
  double volume = 0.0;
};

struct OptimizationResult {
  double c1_opt = 0.0;
  double c2_opt = 0.0;
  double zeta = 0.0;   ///< at the optimum, for the searched kappa_prot
  double fom = 0.0;    ///< maximal FoM_sat
  double volume = 0.0; ///< m^3
  std::vector<SearchTracePoint> search_trace; ///< canonical (c1, c2) order
};

namespace detail {

/// Exhaustive FoM_sat maximisation over the candidate grid. Candidates are
/// evaluated in canonical ascending (c1, c2) order regardless of the order
/// given, and ties resolve to the smaller c1, then smaller c2. Candidates
/// whose region is invalid on this map are skipped.
template <typename Geom, typename MakeRegion>
OptimizationResult grid_search(const FieldMap &map, const Geom &geom,
                               double kappa_prot, double kappa_noise,
                               const SearchGrid &grid, MakeRegion &&make_region) {
  if (grid.c1_values.empty() || grid.c2_values.empty()) {
    throw std::invalid_argument("optimize_probe: empty search grid");
  }
  std::vector<double> c1s = grid.c1_values;
  std::vector<double> c2s = grid.c2_values;
  std::sort(c1s.begin(), c1s.end());
  std::sort(c2s.begin(), c2s.end());

  OptimizationResult best;
  bool found = false;
  const double ref_pow = std::pow(
      [&] {
        if constexpr (std::is_same_v<Geom, CpwGeometry>) return cpw_alpha_ref(geom);
        else return loop_alpha_ref(geom);
      }(),
      kappa_prot);
  for (double c1 : c1s) {
    for (double c2 : c2s) {
      auto region = make_region(c1, c2);
      if (!region) continue;
      RegionAverage ra;
      if (region_average(map, geom, *region, kappa_prot, ra) != RegionStatus::Ok) {
        continue;
      }
      const double volume = region_volume(geom, *region);
      const double fom = fom_sat(ra.avg, volume, kappa_noise);
      best.search_trace.push_back({c1, c2, fom, ra.avg / ref_pow, volume});
      if (!found || fom > best.fom) {
        found = true;
        best.c1_opt = c1;
        best.c2_opt = c2;
        best.fom = fom;
        best.zeta = ra.avg / ref_pow;
        best.volume = volume;
      }
    }
  }
  if (!found) {
    throw std::invalid_argument("optimize_probe: no valid candidate region");
  }
  return best;
}

} // namespace detail

inline OptimizationResult optimize_probe(const FieldMap &map,
                                         const CpwGeometry &geom,
                                         double kappa_prot, double kappa_noise,
                                         const SearchGrid &grid) {
  return detail::grid_search(
      map, geom, kappa_prot, kappa_noise, grid,
      [&](double c1, double c2) -> std::optional<ProbeRegionCpw> {
        return ProbeRegionCpw(c1, c2, geom.length);
      });
}

inline OptimizationResult optimize_probe(const FieldMap &map,
                                         const LoopGeometry &geom,
                                         double kappa_prot, double kappa_noise,
                                         const SearchGrid &grid) {
  return detail::grid_search(
      map, geom, kappa_prot, kappa_noise, grid,
      [&](double c1, double c2) -> std::optional<ProbeRegionLoop> {
        if (c1 >= 1.0) return std::nullopt; // probe must stay inside the loop
        return ProbeRegionLoop(c1, c2);
      });
}

} // namespace nvrf
