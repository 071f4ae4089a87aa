#pragma once

// Branch-cut-aware complex elementary functions and the complex-plane
// geometry used to continue GUE kernels off the real axis.
//
// Conventions:
//   Log            principal branch, Im Log z in (-pi, pi]
//   z^a            exp(a Log z) on C \ (-inf, 0]; z^(1/2) is extended to 0 by 0
//   d(H)           sqrt(1 + iH)
//   w(z)           (2 pi)^-1 (2 - z)^(1/2) (2 + z)^(1/2), analytic off the
//                  slits (-inf, -2] and [2, inf)
//   x(z)           root of x + 1/x = z with |x| < 1, z off [-2, 2]

#include <complex>

namespace rmt {

using Complex = std::complex<double>;

/// Closed or open rectangle |Re z| < 2 - alpha, |Im z| < beta.
class StripSpec {
public:
  StripSpec(double alpha, double beta);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

private:
  double alpha_;
  double beta_;
};

/// Ellipse with foci -2, 2 on which |x(z)| = r.
class EllipseSpec {
public:
  explicit EllipseSpec(double r);

  double r() const { return r_; }
  double semi_major() const { return 1.0 / r_ + r_; }
  double semi_minor() const { return 1.0 / r_ - r_; }

private:
  double r_;
};

/// True when z lies on the cut (-inf, 0] of the principal logarithm.
bool on_negative_real_axis(Complex z);

/// exp(alpha Log z). Throws std::domain_error on (-inf, 0], except for
/// alpha == 1/2 at z == 0 which yields 0.
Complex principal_pow(Complex z, double alpha);

/// Principal square root with the same domain rules as principal_pow(z, 0.5).
Complex principal_sqrt(Complex z);

/// d(H) = sqrt(1 + iH), evaluated from the closed forms for its real and
/// imaginary parts.
Complex d_scale(double H);

/// Unique H >= 0 with |Im d(H)| = b.
double h_bound(double b);

double wigner_density(double u);

/// Analytic continuation of the Wigner density off the slits |Re z| >= 2.
Complex wigner_density_complex(Complex z);

bool in_strip(Complex z, const StripSpec& strip, bool closed);

/// kappa(z) = sqrt(z^2 - 4), analytic on C \ [-2, 2], positive on (2, inf).
Complex kappa(Complex z);

/// x(z) = (z - kappa(z)) / 2.
Complex joukowski_root(Complex z);

/// Closed exterior of the ellipse |x(z)| = r.
bool in_ellipse_exterior(Complex z, const EllipseSpec& ellipse);

/// Inverse of sin on the strip |Re w| < pi/2, principal branches.
Complex complex_arcsin(Complex z);

}  // namespace rmt
