#pragma once

/**
 * @file model.hpp
 * @brief Input-power sensitivity chain for NV-diamond broadband RF detectors.
 *
 * The detection model factorises into four stages:
 *
 *   1. an RF concentrator converts input power P_RF into a field
 *      B_RF(r) = alpha(r) * sqrt(P_RF), with alpha in T W^-1/2;
 *   2. a sensing protocol converts field into PL contrast
 *      C = (beta_prot * B_RF)^kappa_prot, kappa_prot = 1 (slope detection)
 *      or 2 (variance detection);
 *   3. the measurement noise scales as N = xi_noise * I_PL^kappa_noise * sqrt(t),
 *      kappa_noise = 0.5 (PL-dependent, shot-noise limit at xi = 1) or
 *      0 (instrument floor);
 *   4. an NV ensemble of volume V collects a PL rate I_PL = rho_PL * V,
 *      where rho_PL follows an optical saturation law in the laser power.
 *
 * The resulting single-NV and ensemble power sensitivities are
 *
 *   eta = [ xi / ( <alpha^kp>_V * beta^kp * (rho_PL V)^(1-kn) ) ]^(2/kp)
 *
 * in W Hz^-1 (slope) or W Hz^-1/2 (variance). Geometry enters only through
 * the figures of merit FoM_sat = <alpha^kp> V^(1-kn) and
 * FoM_lin = <alpha^kp> (V/A)^(1-kn), with eta proportional to FoM^(-2/kp).
 *
 * All quantities are strict SI. Functions are pure and thread-safe.
 */

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "nvrf/constants.hpp"
#include "nvrf/errors.hpp"

namespace nvrf {

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

enum class ProtocolKind { Slope, Variance };

/// RF sensing protocol: contrast exponent plus field-to-contrast ratio.
struct Protocol {
  ProtocolKind kind = ProtocolKind::Slope;
  double beta_prot = 0.0; ///< field-to-contrast ratio [1/T]

  Protocol(ProtocolKind k, double beta) : kind(k), beta_prot(beta) {
    detail::require_positive(beta_prot, "beta_prot");
  }

  /// Contrast exponent: 1 for slope detection, 2 for variance detection.
  double kappa() const { return kind == ProtocolKind::Slope ? 1.0 : 2.0; }
};

/// Measurement-noise model N = xi * I_PL^kappa * sqrt(t).
///
/// kappa is restricted to the two analysed regimes: 0.5 (noise follows the
/// PL level, photon shot noise at xi = 1) and 0 (PL-independent floor).
struct NoiseModel {
  double kappa_noise = 0.5;
  double xi_noise = 1.0;

  NoiseModel(double kappa, double xi) : kappa_noise(kappa), xi_noise(xi) {
    if (kappa_noise != 0.0 && kappa_noise != 0.5) {
      throw std::domain_error("kappa_noise must be exactly 0 or 0.5");
    }
    if (!(xi_noise >= 1.0)) {
      throw std::domain_error("xi_noise must be >= 1");
    }
  }
};

/// Laser interrogation direction relative to the concentrator.
enum class BeamGeometry { ParallelCpw, PerpendicularCpw, LoopAxial };

/// Excitation optics. beam_area is the laser cross section [m^2]; it is
/// normally derived from the concentrator geometry and probe region (see
/// probe.hpp) but may be set directly. path_length is the distance the beam
/// traverses across the probe volume, d = V / A for box regions.
struct Optics {
  double p_laser = 0.0;     ///< W
  double i_sat = 0.0;       ///< W m^-2
  BeamGeometry beam = BeamGeometry::ParallelCpw;
  double beam_area = 0.0;   ///< m^2
  double path_length = 0.0; ///< m

  Optics(double p, double isat, BeamGeometry b, double area, double d)
      : p_laser(p), i_sat(isat), beam(b), beam_area(area), path_length(d) {
    detail::require_positive(p_laser, "p_laser");
    detail::require_positive(i_sat, "i_sat");
    detail::require_positive(beam_area, "beam_area");
    detail::require_positive(path_length, "path_length");
  }
};

/// NV ensemble: density and per-NV collected PL rate at optical saturation.
/// sigma_nv bundles the emission rate, protocol duty cycle and collection
/// efficiency into a single product; see sigma_nv_from_parts().
struct NVEnsemble {
  double rho_nv = 0.0;   ///< m^-3
  double sigma_nv = 0.0; ///< s^-1

  NVEnsemble(double rho, double sigma) : rho_nv(rho), sigma_nv(sigma) {
    detail::require_positive(rho_nv, "rho_nv");
    detail::require_positive(sigma_nv, "sigma_nv");
  }
};

/// Collected PL rate per NV at saturation as the product of the bare emission
/// rate, the protocol laser duty cycle and the photon collection efficiency.
/// Only the product enters the sensitivity formulas.
inline double sigma_nv_from_parts(double emission_rate, double duty_cycle,
                                  double collection_efficiency) {
  detail::require_positive(emission_rate, "emission_rate");
  detail::require_positive(duty_cycle, "duty_cycle");
  detail::require_positive(collection_efficiency, "collection_efficiency");
  return emission_rate * duty_cycle * collection_efficiency;
}

/// Optical-saturation regime of the probed ensemble.
enum class Regime { Saturated, Linear, Intermediate };

inline const char *to_string(Regime r) {
  switch (r) {
  case Regime::Saturated: return "saturated";
  case Regime::Linear: return "linear";
  default: return "intermediate";
  }
}

enum class EtaUnit { WattPerHz, WattPerSqrtHz };

inline const char *to_string(EtaUnit u) {
  return u == EtaUnit::WattPerHz ? "W Hz^-1" : "W Hz^-1/2";
}

inline EtaUnit eta_unit(const Protocol &protocol) {
  return protocol.kind == ProtocolKind::Slope ? EtaUnit::WattPerHz
                                              : EtaUnit::WattPerSqrtHz;
}

/// Power sensitivity together with the intermediate quantities that produced
/// it. volume and rho_pl are engaged only for ensemble evaluations; when both
/// are present, i_pl equals rho_pl * volume exactly.
struct SensitivityResult {
  double eta = 0.0; ///< W Hz^-1 (slope) or W Hz^-1/2 (variance)
  EtaUnit unit = EtaUnit::WattPerHz;
  Regime regime = Regime::Intermediate;
  double avg_alpha_pow = 0.0;          ///< (T W^-1/2)^kappa_prot
  std::optional<double> volume;        ///< m^3
  std::optional<double> rho_pl;        ///< s^-1 m^-3
  double i_pl = 0.0;                   ///< s^-1
};

// ---------------------------------------------------------------------------
// Saturation law and regime classification
// ---------------------------------------------------------------------------

/// Dimensionless saturation parameter s = A * I_sat / P_laser. s << 1 means
/// the available power saturates the probe cross section.
inline double saturation_parameter(const Optics &optics) {
  return optics.beam_area * optics.i_sat / optics.p_laser;
}

// Regime thresholds: one decade on each side of the half-saturation point.
inline constexpr double kSaturatedMaxS = 0.1;
inline constexpr double kLinearMinS = 10.0;

inline Regime classify_regime(double saturation_param) {
  if (saturation_param < kSaturatedMaxS) return Regime::Saturated;
  if (saturation_param > kLinearMinS) return Regime::Linear;
  return Regime::Intermediate;
}

/// PL rate per unit volume, rho_PL = sigma_NV rho_NV / (1 + A I_sat / P).
/// Monotone increasing in laser power and bounded by sigma_NV * rho_NV.
inline double pl_density(const NVEnsemble &ensemble, const Optics &optics) {
  return ensemble.sigma_nv * ensemble.rho_nv / (1.0 + saturation_parameter(optics));
}

/// Deep-saturation asymptote of pl_density.
inline double rho_pl_saturated(const NVEnsemble &ensemble) {
  return ensemble.sigma_nv * ensemble.rho_nv;
}

/// Deep linear-regime asymptote, rho_PL = sigma rho * P / (A I_sat).
inline double rho_pl_linear(const NVEnsemble &ensemble, const Optics &optics) {
  return rho_pl_saturated(ensemble) / saturation_parameter(optics);
}

// ---------------------------------------------------------------------------
// SNR and sensitivity
// ---------------------------------------------------------------------------

/// Single-NV signal-to-noise ratio
///   SNR = (alpha beta)^kp / xi * I_PL^(1-kn) * sqrt(t) * P_RF^(kp/2).
/// A zero RF power yields SNR = 0; all other arguments must be positive.
inline double snr_single(double alpha, const Protocol &protocol,
                         const NoiseModel &noise, double i_pl, double time,
                         double p_rf) {
  detail::require_finite_positive(alpha, "alpha");
  detail::require_finite_positive(i_pl, "i_pl");
  detail::require_finite_positive(time, "time");
  if (p_rf == 0.0) return 0.0;
  detail::require_finite_positive(p_rf, "p_rf");
  const double kp = protocol.kappa();
  return std::pow(alpha * protocol.beta_prot, kp) / noise.xi_noise *
         std::pow(i_pl, 1.0 - noise.kappa_noise) * std::sqrt(time) *
         std::pow(p_rf, 0.5 * kp);
}

/// Power sensitivity of a single NV exposed to field-to-power ratio alpha,
/// defined by unit SNR with the protocol's time normalisation:
///   eta = [ xi / ( (alpha beta)^kp * I_PL^(1-kn) ) ]^(2/kp).
inline SensitivityResult eta_single(double alpha, const Protocol &protocol,
                                    const NoiseModel &noise, double i_pl) {
  detail::require_finite_positive(alpha, "alpha");
  detail::require_finite_positive(i_pl, "i_pl");
  const double kp = protocol.kappa();
  const double denom = std::pow(alpha * protocol.beta_prot, kp) *
                       std::pow(i_pl, 1.0 - noise.kappa_noise);
  SensitivityResult out;
  out.eta = std::pow(noise.xi_noise / denom, 2.0 / kp);
  out.unit = eta_unit(protocol);
  out.avg_alpha_pow = std::pow(alpha, kp);
  out.i_pl = i_pl;
  return out;
}

/// Ensemble power sensitivity for a probed volume with spatially averaged
/// field factor avg_alpha_pow = <alpha^kp>_V:
///   eta = [ xi / ( <alpha^kp> beta^kp (rho_PL V)^(1-kn) ) ]^(2/kp).
/// Pass the saturation parameter when known so the result carries the regime.
inline SensitivityResult
eta_ensemble(double avg_alpha_pow, const Protocol &protocol,
             const NoiseModel &noise, double rho_pl, double volume,
             std::optional<double> saturation_param = std::nullopt) {
  detail::require_finite_positive(avg_alpha_pow, "avg_alpha_pow");
  detail::require_finite_positive(rho_pl, "rho_pl");
  detail::require_finite_positive(volume, "volume");
  const double kp = protocol.kappa();
  const double i_pl = rho_pl * volume;
  const double denom = avg_alpha_pow * std::pow(protocol.beta_prot, kp) *
                       std::pow(i_pl, 1.0 - noise.kappa_noise);
  SensitivityResult out;
  out.eta = std::pow(noise.xi_noise / denom, 2.0 / kp);
  out.unit = eta_unit(protocol);
  out.regime = saturation_param ? classify_regime(*saturation_param)
                                : Regime::Intermediate;
  out.avg_alpha_pow = avg_alpha_pow;
  out.volume = volume;
  out.rho_pl = rho_pl;
  out.i_pl = i_pl;
  return out;
}

// ---------------------------------------------------------------------------
// Figures of merit
// ---------------------------------------------------------------------------

namespace detail {
inline void require_kappa_noise_range(double kn) {
  if (!(kn >= 0.0 && kn <= 1.0)) {
    throw std::domain_error("kappa_noise must lie in [0, 1]");
  }
}
} // namespace detail

/// Saturated-regime figure of merit, FoM = <alpha^kp> V^(1-kn).
inline double fom_sat(double avg_alpha_pow, double volume, double kappa_noise) {
  detail::require_finite_positive(avg_alpha_pow, "avg_alpha_pow");
  detail::require_finite_positive(volume, "volume");
  detail::require_kappa_noise_range(kappa_noise);
  return avg_alpha_pow * std::pow(volume, 1.0 - kappa_noise);
}

/// Linear-regime figure of merit, FoM = <alpha^kp> (V/A)^(1-kn), where
/// V/A is the beam path length d across the probe volume.
inline double fom_lin(double avg_alpha_pow, double volume, double beam_area,
                      double kappa_noise) {
  detail::require_finite_positive(avg_alpha_pow, "avg_alpha_pow");
  detail::require_finite_positive(volume, "volume");
  detail::require_finite_positive(beam_area, "beam_area");
  detail::require_kappa_noise_range(kappa_noise);
  return avg_alpha_pow * std::pow(volume / beam_area, 1.0 - kappa_noise);
}

/// One (eta, FoM) evaluation in a stated regime.
struct EtaFomPoint {
  double eta = 0.0;
  double fom = 0.0;
  Regime regime = Regime::Intermediate;
};

struct FomSpread {
  double spread = 1.0;      ///< max / min of eta * FoM^(2/kp)
  bool mixed_regime = false;
};

/// Consistency check of the proportionality eta ~ FoM^(-2/kp): returns the
/// spread of eta * FoM^(2/kp) over the points. Within one regime the spread
/// is 1 up to numerical tolerance. Mixed-regime input is flagged, not an
/// error.
inline FomSpread eta_from_fom_check(std::span<const EtaFomPoint> points,
                                    double kappa_prot) {
  if (points.empty()) {
    throw std::invalid_argument("eta_from_fom_check: empty input");
  }
  FomSpread out;
  double lo = 0.0, hi = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto &p = points[i];
    detail::require_finite_positive(p.eta, "eta");
    detail::require_finite_positive(p.fom, "fom");
    const double v = p.eta * std::pow(p.fom, 2.0 / kappa_prot);
    if (i == 0) {
      lo = hi = v;
    } else {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (p.regime != points.front().regime) out.mixed_regime = true;
  }
  out.spread = hi / lo;
  return out;
}

// ---------------------------------------------------------------------------
// Auxiliary conversions
// ---------------------------------------------------------------------------

/// Field-to-contrast ratio of a slope-detection sequence with maximum
/// contrast c_max and evolution time tau: beta = c_max * gamma_e * tau.
inline double beta_from_protocol(double c_max, double tau) {
  if (!(c_max >= 0.0 && c_max <= 1.0)) {
    throw std::domain_error("c_max must lie in [0, 1]");
  }
  detail::require_positive(tau, "tau");
  return c_max * constants::gamma_e * tau;
}

enum class MagneticUnit { TeslaPerSqrtHz, Tesla2PerSqrtHz };

inline const char *to_string(MagneticUnit u) {
  return u == MagneticUnit::TeslaPerSqrtHz ? "T Hz^-1/2" : "T^2 Hz^-1/2";
}

struct MagneticSensitivity {
  double value = 0.0;
  MagneticUnit unit = MagneticUnit::TeslaPerSqrtHz;
};

/// Equivalent magnetic sensitivity at a reference field-to-power ratio:
/// alpha * sqrt(eta) for slope detection, alpha^2 * eta for variance.
inline MagneticSensitivity magnetic_from_power(const SensitivityResult &result,
                                               double alpha_ref) {
  detail::require_finite_positive(alpha_ref, "alpha_ref");
  detail::require_finite_positive(result.eta, "eta");
  MagneticSensitivity out;
  if (result.unit == EtaUnit::WattPerHz) {
    out.value = alpha_ref * std::sqrt(result.eta);
    out.unit = MagneticUnit::TeslaPerSqrtHz;
  } else {
    out.value = alpha_ref * alpha_ref * result.eta;
    out.unit = MagneticUnit::Tesla2PerSqrtHz;
  }
  return out;
}

} // namespace nvrf
