#include "rmt/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rmt {

namespace {

// Points this close to a slit are treated as lying on it.
constexpr double kSlitTolerance = 1e-300;

bool on_real_axis(Complex z) { return std::abs(z.imag()) <= kSlitTolerance; }

Complex checked(Complex z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw std::overflow_error(std::string(what) + ": non-finite result");
  }
  return z;
}

}  // namespace

StripSpec::StripSpec(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw std::invalid_argument("StripSpec: alpha must lie in (0, 2)");
  }
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("StripSpec: beta must be positive");
  }
}

EllipseSpec::EllipseSpec(double r) : r_(r) {
  if (!(r > 0.0 && r < 1.0)) {
    throw std::invalid_argument("EllipseSpec: r must lie in (0, 1)");
  }
}

bool on_negative_real_axis(Complex z) { return on_real_axis(z) && z.real() <= 0.0; }

Complex principal_pow(Complex z, double alpha) {
  if (z == Complex(0.0, 0.0) && alpha == 0.5) {
    return {0.0, 0.0};
  }
  if (on_negative_real_axis(z)) {
    throw std::domain_error("principal_pow: argument on the branch cut (-inf, 0]");
  }
  return checked(std::exp(alpha * std::log(z)), "principal_pow");
}

Complex principal_sqrt(Complex z) { return principal_pow(z, 0.5); }

Complex d_scale(double H) {
  if (!std::isfinite(H)) {
    throw std::domain_error("d_scale: H must be finite");
  }
  const double root = std::hypot(1.0, H);
  const double re = std::sqrt((root + 1.0) / 2.0);
  // (root - 1) rewritten to avoid cancellation for small H.
  const double im = std::sqrt(H * H / (root + 1.0) / 2.0);
  return {re, std::copysign(im, H)};
}

double h_bound(double b) {
  if (!(b >= 0.0)) {
    throw std::domain_error("h_bound: b must be nonnegative");
  }
  // sqrt((1 + 2b^2)^2 - 1) == 2b sqrt(1 + b^2)
  return 2.0 * b * std::sqrt(1.0 + b * b);
}

double wigner_density(double u) {
  const double rad = 4.0 - u * u;
  if (!(rad > 0.0)) {
    return 0.0;
  }
  return std::sqrt(rad) / (2.0 * std::numbers::pi);
}

Complex wigner_density_complex(Complex z) {
  if (on_real_axis(z) && std::abs(z.real()) >= 2.0) {
    throw std::domain_error("wigner_density_complex: argument on a slit |Re z| >= 2");
  }
  const Complex value = principal_sqrt(2.0 - z) * principal_sqrt(2.0 + z);
  return value / (2.0 * std::numbers::pi);
}

bool in_strip(Complex z, const StripSpec& strip, bool closed) {
  const double re = std::abs(z.real());
  const double im = std::abs(z.imag());
  const double half_width = 2.0 - strip.alpha();
  if (closed) {
    return re <= half_width && im <= strip.beta();
  }
  return re < half_width && im < strip.beta();
}

Complex kappa(Complex z) {
  if (on_real_axis(z) && std::abs(z.real()) <= 2.0) {
    throw std::domain_error("kappa: argument on the segment [-2, 2]");
  }
  if (on_real_axis(z)) {
    // Both principal factors sit on their cuts for z < -2; kappa ~ z there.
    const double t = z.real();
    return {std::copysign(std::sqrt((t - 2.0) * (t + 2.0)), t), 0.0};
  }
  if (std::abs(z) > 4.0) {
    return checked(z * std::sqrt(1.0 - 4.0 / (z * z)), "kappa");
  }
  return principal_sqrt(z - 2.0) * principal_sqrt(z + 2.0);
}

Complex joukowski_root(Complex z) {
  // (z - kappa) / 2 == 2 / (z + kappa); the latter has no cancellation.
  return 2.0 / (z + kappa(z));
}

bool in_ellipse_exterior(Complex z, const EllipseSpec& ellipse) {
  const double a = ellipse.semi_major();
  const double b = ellipse.semi_minor();
  const double re = z.real() / a;
  const double im = z.imag() / b;
  return re * re + im * im >= 1.0;
}

Complex complex_arcsin(Complex z) {
  if (on_real_axis(z) && std::abs(z.real()) >= 1.0) {
    throw std::domain_error("complex_arcsin: argument on a slit |Re z| >= 1");
  }
  const Complex i(0.0, 1.0);
  // sqrt(1 - z^2) as (1 - z)^(1/2) (1 + z)^(1/2) keeps the cut on the slits.
  const Complex root = principal_sqrt(1.0 - z) * principal_sqrt(1.0 + z);
  return -i * std::log(i * z + root);
}

}  // namespace rmt
