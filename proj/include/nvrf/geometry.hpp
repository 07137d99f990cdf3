#pragma once

#include "nvrf/errors.hpp"

namespace nvrf {

/// Coplanar-waveguide concentrator: central track of width w carrying the
/// signal current, characterised by track width and line impedance. length
/// is the probe extent along the track; standoff is the height of the
/// diamond surface above the track (0 = diamond resting on the track).
struct CpwGeometry {
  double width = 0.0;       ///< m
  double impedance = 0.0;   ///< ohm
  double length = 0.0;      ///< m
  double standoff = 0.0;    ///< m

  CpwGeometry(double w, double z, double l, double s = 0.0)
      : width(w), impedance(z), length(l), standoff(s) {
    detail::require_positive(width, "cpw width");
    detail::require_positive(impedance, "cpw impedance");
    detail::require_positive(length, "cpw length");
    if (standoff < 0.0) throw std::domain_error("cpw standoff must be >= 0");
  }
};

/// Single-turn terminated loop antenna of radius R, modelled as a shorted
/// transmission line (current 2*sqrt(P/Z)). The conductor is treated as an
/// infinitely thin filament; wire_ratio (wire diameter / R) only sets the
/// exclusion tube masked out of field maps.
struct LoopGeometry {
  double radius = 0.0;     ///< m
  double impedance = 0.0;  ///< ohm
  double wire_ratio = 0.2; ///< wire diameter / R

  LoopGeometry(double r, double z, double wr = 0.2)
      : radius(r), impedance(z), wire_ratio(wr) {
    detail::require_positive(radius, "loop radius");
    detail::require_positive(impedance, "loop impedance");
    if (!(wire_ratio > 0.0 && wire_ratio < 1.0)) {
      throw std::domain_error("wire_ratio must lie in (0, 1)");
    }
  }
};

} // namespace nvrf
