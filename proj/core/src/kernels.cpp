#include "rmt/kernels.hpp"

#include "rmt/hermite.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rmt {

namespace {

Complex from_log_scaled(Complex mantissa, double log_scale) {
  if (log_scale == 0.0 || mantissa == Complex(0.0, 0.0)) {
    return mantissa;
  }
  return mantissa * std::exp(log_scale);
}

}  // namespace

void KernelQuery::validate() const {
  if (N < 1) {
    throw std::invalid_argument("KernelQuery: N must be >= 1");
  }
  if (on_negative_real_axis(s)) {
    throw std::domain_error("KernelQuery: scale s on the branch cut (-inf, 0]");
  }
}

BulkRescaling::BulkRescaling(double u, int N) : u_(u), N_(N) {
  if (N < 1) {
    throw std::invalid_argument("BulkRescaling: N must be >= 1");
  }
  const double w = wigner_density(u);
  if (!(w > 0.0)) {
    throw std::domain_error("BulkRescaling: u must lie in the bulk (-2, 2)");
  }
  local_density_ = N * w;
}

Complex kernel_cd(const KernelQuery& q) {
  q.validate();
  const Complex diff = q.x - q.y;
  if (std::abs(diff) < kConfluentThreshold * std::max(1.0, std::abs(q.x))) {
    // K is symmetric, so the midpoint diagonal value is exact to first order.
    return kernel_diag(0.5 * (q.x + q.y), q.N, q.s);
  }
  const HermitePair px = phi_scaled(q.x, q.N, q.s);
  const HermitePair py = phi_scaled(q.y, q.N, q.s);
  const Complex numerator = px.upper * py.lower - px.lower * py.upper;
  const Complex coefficient = principal_sqrt(q.s * static_cast<double>(q.N));
  return coefficient * from_log_scaled(numerator, px.log_scale + py.log_scale) / diff;
}

Complex kernel_sum(const KernelQuery& q) {
  q.validate();
  const Complex inv_root = principal_pow(q.s, -0.5);
  const Complex x = q.x * inv_root;
  const Complex y = q.y * inv_root;

  // Two phi sweeps with independent log scales; the running sum is kept in
  // units of exp(scale_x + scale_y).
  const double norm = std::pow(2.0 * std::numbers::pi, -0.25);
  const Complex qx = x * x / 4.0;
  const Complex qy = y * y / 4.0;
  Complex fx_prev = norm * std::exp(Complex(0.0, -qx.imag()));
  Complex fy_prev = norm * std::exp(Complex(0.0, -qy.imag()));
  double scale_x = -qx.real();
  double scale_y = -qy.real();
  Complex fx = x * fx_prev;
  Complex fy = y * fy_prev;
  Complex sum = fx_prev * fy_prev;

  for (int k = 1; k < q.N; ++k) {
    sum += fx * fy;
    const double rk = std::sqrt(static_cast<double>(k));
    const double rk1 = std::sqrt(static_cast<double>(k + 1));
    const Complex fx_next = (x * fx - rk * fx_prev) / rk1;
    const Complex fy_next = (y * fy - rk * fy_prev) / rk1;
    fx_prev = fx;
    fx = fx_next;
    fy_prev = fy;
    fy = fy_next;

    const double bx = std::max(std::abs(fx), std::abs(fx_prev));
    if (bx > 1e100 || (bx < 1e-100 && bx > 0.0)) {
      fx /= bx;
      fx_prev /= bx;
      sum /= bx;
      scale_x += std::log(bx);
    }
    const double by = std::max(std::abs(fy), std::abs(fy_prev));
    if (by > 1e100 || (by < 1e-100 && by > 0.0)) {
      fy /= by;
      fy_prev /= by;
      sum /= by;
      scale_y += std::log(by);
    }
  }
  return inv_root * from_log_scaled(sum, scale_x + scale_y);
}

Complex kernel_diag(Complex x, int N, Complex s) {
  KernelQuery{x, x, N, s}.validate();
  const Complex inv_root = principal_pow(s, -0.5);
  const Complex xs = x * inv_root;
  const HermitePair p = phi_pair(xs, N);
  const double rn = std::sqrt(static_cast<double>(N));
  const Complex bracket =
      rn * (rn * (p.upper * p.upper + p.lower * p.lower) - xs * p.upper * p.lower);
  return inv_root * from_log_scaled(bracket, 2.0 * p.log_scale);
}

double sine_kernel(double t1, double t2) {
  const double arg = std::numbers::pi * (t1 - t2);
  if (std::abs(arg) < 1e-8) {
    return 1.0 - arg * arg / 6.0;
  }
  return std::sin(arg) / arg;
}

double rescaled_kernel(const BulkRescaling& b, double t1, double t2) {
  const KernelQuery q{b.point(t1), b.point(t2), b.N(), Complex(1.0 / b.N(), 0.0)};
  return kernel_cd(q).real() / b.local_density();
}

Complex rescaled_kernel_complex_path(const BulkRescaling& b, double t1, double t2, double H) {
  const Complex d = d_scale(H);
  const KernelQuery q{b.point(t1) * d, b.point(t2) * d, b.N(), Complex(1.0 / b.N(), 0.0)};
  return kernel_cd(q) / b.local_density();
}

Complex complex_path_limit(double u, double t1, double t2, double H) {
  const Complex d = d_scale(H);
  const Complex ratio = wigner_density_complex(u * d) / wigner_density(u);
  const Complex arg = std::numbers::pi * (t1 - t2) * d;
  if (std::abs(arg) < 1e-8) {
    return ratio * (1.0 - arg * arg * ratio * ratio / 6.0);
  }
  return std::sin(arg * ratio) / arg;
}

double kernel_integral_repr(double x, double y, int N) {
  if (N < 1) {
    throw std::invalid_argument("kernel_integral_repr: N must be >= 1");
  }
  if (!std::isfinite(x) || !std::isfinite(y)) {
    throw std::domain_error("kernel_integral_repr: arguments must be finite");
  }
  auto integrand = [&](double tau) {
    const HermitePair a = phi_pair(Complex(x + tau, 0.0), N);
    const HermitePair b = phi_pair(Complex(y + tau, 0.0), N);
    const Complex sum = a.upper * b.lower + a.lower * b.upper;
    return from_log_scaled(sum, a.log_scale + b.log_scale).real();
  };

  // Past the turning point 2 sqrt(N) the Hermite functions decay like
  // exp(-t^2/4); extend the range until the integrand is negligible.
  const double turning = 2.0 * std::sqrt(static_cast<double>(N) + 0.5);
  double upper = std::max(0.0, turning + 6.0 - std::min(x, y));
  double peak = 0.0;
  for (double tau = 0.0; tau <= upper; tau += 0.05) {
    peak = std::max(peak, std::abs(integrand(tau)));
  }
  while (std::abs(integrand(upper)) > 1e-16 * peak) {
    upper += 1.0;
  }

  using Quadrature = boost::math::quadrature::gauss_kronrod<double, 31>;
  double total = 0.0;
  double total_error = 0.0;
  const int panels = std::max(1, static_cast<int>(std::ceil(upper)));
  const double width = upper / panels;
  for (int i = 0; i < panels; ++i) {
    double error = 0.0;
    total += Quadrature::integrate(integrand, i * width, (i + 1) * width, 15, 1e-13, &error);
    total_error += error;
  }
  if (total_error > 1e-9 * std::max(1.0, peak)) {
    throw std::runtime_error("kernel_integral_repr: quadrature did not converge");
  }
  return 0.5 * std::sqrt(static_cast<double>(N)) * total;
}

}  // namespace rmt
