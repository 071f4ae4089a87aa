#pragma once

// Hermite polynomials and Hermite functions for the weight exp(-x^2 / 2).
//
//   p_k      orthonormal polynomials:  x p_k = sqrt(k+1) p_{k+1} + sqrt(k) p_{k-1}
//   phi_k    Hermite functions:        phi_k(x) = p_k(x) exp(-x^2 / 4)
//   phi~_k   scaled family:            phi~_k(x, s) = s^(-1/4) phi_k(x s^(-1/2))
//   H~_k     monic polynomials from exp(g x - g^2 s / 2) = sum_k H~_k(x, s) g^k / k!
//
// Values whose modulus leaves the double range are carried as
// mantissa * exp(log_scale); the recurrences renormalize every step.

#include <cstdint>

#include "rmt/geometry.hpp"

namespace rmt {

/// |value| = exp(log_magnitude), arg(value) = arg(phase).
struct LogScaledValue {
  double log_magnitude = 0.0;
  Complex phase{1.0, 0.0};
  bool zero = false;

  static LogScaledValue from_value(Complex value);
  /// Value represented by mantissa * exp(log_scale).
  static LogScaledValue from_parts(Complex mantissa, double log_scale);
  /// Natural log of the value (principal argument). Throws for zero.
  Complex log() const;
  /// Plain value; throws std::overflow_error if it is not representable.
  Complex value() const;
};

/// (f_{N-1}(x), f_N(x)) at a common argument. Entries are
/// lower * exp(log_scale) and upper * exp(log_scale); log_scale == 0 means
/// the plain representation.
struct HermitePair {
  Complex lower;
  Complex upper;
  double log_scale = 0.0;
  int order = 1;
  Complex argument;
  Complex scale{1.0, 0.0};

  bool log_scaled() const { return log_scale != 0.0; }
  Complex lower_value() const;
  Complex upper_value() const;
  LogScaledValue lower_log() const { return LogScaledValue::from_parts(lower, log_scale); }
  LogScaledValue upper_log() const { return LogScaledValue::from_parts(upper, log_scale); }
};

/// Magnitude above which results stay log-scaled.
inline constexpr double kLogScaleThreshold = 1e100;

/// (phi_{N-1}(x), phi_N(x)), N >= 1.
HermitePair phi_pair(Complex x, int N);

/// (phi~_{N-1}(x, s), phi~_N(x, s)) for s off (-inf, 0].
HermitePair phi_scaled(Complex x, int N, Complex s);

/// (p_{N-1}(x), p_N(x)), N >= 1.
HermitePair p_pair(Complex x, int N);

/// H~_N(x, s) by the monic three-term recurrence.
Complex monic_hermite(Complex x, int N, double s);

/// log(N!) via lgamma.
double log_factorial(int N);

/// psi(y) = (2 / pi) (1 - y)^(1/2) (1 + y)^(1/2), the unit-mass
/// semicircle on [-1, 1] (zero density of phi_N(sqrt(2N) z) in z).
Complex bulk_density(Complex y);

/// Integral of bulk_density from 1 to z along the straight segment.
Complex bulk_phase_integral(Complex z);

/// Leading-order bulk approximation of phi~_N(sqrt(2N) z, 1/2) for z in
/// the interior strip of (-1, 1).
Complex pr_bulk_asymptotic(Complex z, int N);

/// Leading-order approximation of p_N(z sqrt(N)) away from [-2, 2].
LogScaledValue pr_exterior_asymptotic(Complex z, int N);

/// |x(z)| above which the exterior asymptotic is refused.
inline constexpr double kExteriorMaxRootModulus = 0.999;

}  // namespace rmt
