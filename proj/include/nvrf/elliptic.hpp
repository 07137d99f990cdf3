#pragma once

#include <cmath>
#include <stdexcept>

namespace nvrf {

struct EllipticKE {
  double k_complete; ///< K(k), complete elliptic integral of the first kind
  double e_complete; ///< E(k), complete elliptic integral of the second kind
};

/// Complete elliptic integrals in the modulus convention,
///   K(k) = int_0^{pi/2} dtheta / sqrt(1 - k^2 sin^2 theta),
/// evaluated by the arithmetic-geometric mean iteration to 1e-12 relative
/// tolerance. Requires 0 <= k < 1.
inline EllipticKE complete_elliptic_ke(double k) {
  if (!(k >= 0.0 && k < 1.0)) {
    throw std::domain_error("elliptic modulus must lie in [0, 1)");
  }
  constexpr double pi = 3.14159265358979323846;
  double a = 1.0;
  double b = std::sqrt(1.0 - k * k);
  double c = k;
  double c_sum = 0.5 * c * c;
  double pow2 = 1.0;
  // AGM: a_{n+1} = (a+b)/2, b_{n+1} = sqrt(ab), c_{n+1} = (a-b)/2.
  // E/K = 1 - sum_n 2^{n-1} c_n^2 with c_0 = k.
  for (int n = 0; n < 64 && std::abs(c) > 1e-12 * a; ++n) {
    c = 0.5 * (a - b);
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
    pow2 *= 2.0;
    c_sum += 0.5 * pow2 * c * c;
  }
  const double big_k = pi / (2.0 * a);
  return {big_k, big_k * (1.0 - c_sum)};
}

} // namespace nvrf
