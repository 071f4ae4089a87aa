#include "rmt/hermite.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace rmt {

namespace {

constexpr double kRenormHigh = 1e100;
constexpr double kRenormLow = 1e-100;
const double kLogThreshold = std::log(kLogScaleThreshold);
const double kLogMaxDouble = std::log(std::numeric_limits<double>::max());

// (2 pi)^(-1/4)
const double kSeedNorm = std::pow(2.0 * std::numbers::pi, -0.25);

// Runs phi_{k+1} = (x phi_k - sqrt(k) phi_{k-1}) / sqrt(k+1) from the seed
// (f_0, f_1) = (seed, x seed) * exp(seed_log) up to (f_{N-1}, f_N).
HermitePair run_recurrence(Complex x, int N, Complex seed, double seed_log) {
  if (N < 1) {
    throw std::invalid_argument("Hermite recurrence: N must be >= 1");
  }
  if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
    throw std::domain_error("Hermite recurrence: argument must be finite");
  }
  Complex lower = seed;
  Complex upper = x * seed;
  double log_scale = seed_log;

  for (int k = 1; k < N; ++k) {
    const Complex next = (x * upper - std::sqrt(static_cast<double>(k)) * lower) /
                         std::sqrt(static_cast<double>(k + 1));
    lower = upper;
    upper = next;
    const double big = std::max(std::abs(lower), std::abs(upper));
    if (big > kRenormHigh || (big < kRenormLow && big > 0.0)) {
      lower /= big;
      upper /= big;
      log_scale += std::log(big);
    }
  }

  HermitePair pair{lower, upper, log_scale, N, x, Complex(1.0, 0.0)};
  const double big = std::max(std::abs(lower), std::abs(upper));
  if (big == 0.0) {
    pair.log_scale = 0.0;
  } else if (log_scale != 0.0 && std::abs(log_scale + std::log(big)) <= kLogThreshold) {
    const double factor = std::exp(log_scale);
    pair.lower = lower * factor;
    pair.upper = upper * factor;
    pair.log_scale = 0.0;
  }
  if (!std::isfinite(pair.log_scale)) {
    throw std::overflow_error("Hermite recurrence: log-scaled magnitude out of range");
  }
  return pair;
}

Complex plain_value(Complex mantissa, double log_scale) {
  if (log_scale == 0.0 || mantissa == Complex(0.0, 0.0)) {
    return mantissa;
  }
  if (log_scale + std::log(std::abs(mantissa)) > kLogMaxDouble) {
    throw std::overflow_error("HermitePair: value not representable as a double");
  }
  return mantissa * std::exp(log_scale);
}

}  // namespace

LogScaledValue LogScaledValue::from_value(Complex value) { return from_parts(value, 0.0); }

LogScaledValue LogScaledValue::from_parts(Complex mantissa, double log_scale) {
  const double magnitude = std::abs(mantissa);
  if (magnitude == 0.0) {
    return {0.0, Complex(0.0, 0.0), true};
  }
  return {log_scale + std::log(magnitude), mantissa / magnitude, false};
}

Complex LogScaledValue::log() const {
  if (zero) {
    throw std::domain_error("LogScaledValue::log: value is zero");
  }
  return {log_magnitude, std::arg(phase)};
}

Complex LogScaledValue::value() const {
  if (zero) {
    return {0.0, 0.0};
  }
  if (log_magnitude > kLogMaxDouble) {
    throw std::overflow_error("LogScaledValue: value not representable as a double");
  }
  return phase * std::exp(log_magnitude);
}

Complex HermitePair::lower_value() const { return plain_value(lower, log_scale); }
Complex HermitePair::upper_value() const { return plain_value(upper, log_scale); }

HermitePair phi_pair(Complex x, int N) {
  // exp(-x^2/4) split into magnitude (log-scaled) and phase.
  const Complex quarter_square = x * x / 4.0;
  const Complex seed = kSeedNorm * std::exp(Complex(0.0, -quarter_square.imag()));
  return run_recurrence(x, N, seed, -quarter_square.real());
}

HermitePair phi_scaled(Complex x, int N, Complex s) {
  const Complex inv_root = principal_pow(s, -0.5);
  HermitePair pair = phi_pair(x * inv_root, N);
  const Complex prefactor = principal_pow(s, -0.25);
  pair.lower *= prefactor;
  pair.upper *= prefactor;
  pair.argument = x;
  pair.scale = s;
  return pair;
}

HermitePair p_pair(Complex x, int N) { return run_recurrence(x, N, Complex(kSeedNorm, 0.0), 0.0); }

Complex monic_hermite(Complex x, int N, double s) {
  if (N < 0) {
    throw std::invalid_argument("monic_hermite: N must be >= 0");
  }
  if (N == 0) {
    return {1.0, 0.0};
  }
  Complex prev(1.0, 0.0);
  Complex cur = x;
  for (int k = 1; k < N; ++k) {
    const Complex next = x * cur - s * static_cast<double>(k) * prev;
    prev = cur;
    cur = next;
    if (!std::isfinite(cur.real()) || !std::isfinite(cur.imag())) {
      throw std::overflow_error("monic_hermite: overflow");
    }
  }
  return cur;
}

double log_factorial(int N) {
  if (N < 0) {
    throw std::invalid_argument("log_factorial: N must be >= 0");
  }
  return std::lgamma(static_cast<double>(N) + 1.0);
}

Complex bulk_density(Complex y) {
  return 2.0 / std::numbers::pi * principal_sqrt(1.0 - y) * principal_sqrt(1.0 + y);
}

Complex bulk_phase_integral(Complex z) {
  if (z == Complex(1.0, 0.0)) {
    return {0.0, 0.0};
  }
  const Complex direction = z - 1.0;
  const Complex root_one_minus_z = principal_sqrt(1.0 - z);
  // y = 1 + tau^2 (z - 1) absorbs the square-root singularity at y = 1:
  // (1 - y)^(1/2) = tau (1 - z)^(1/2) for tau >= 0.
  auto integrand = [&](double tau) {
    const Complex y = 1.0 + tau * tau * direction;
    return 2.0 / std::numbers::pi * tau * root_one_minus_z * principal_sqrt(1.0 + y) *
           (2.0 * tau) * direction;
  };
  double error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(integrand, 0.0, 1.0, 20,
                                                                       1e-14, &error);
}

Complex pr_bulk_asymptotic(Complex z, int N) {
  if (N < 1) {
    throw std::invalid_argument("pr_bulk_asymptotic: N must be >= 1");
  }
  if (std::abs(1.0 - z) < 1e-3 || std::abs(1.0 + z) < 1e-3) {
    throw std::domain_error("pr_bulk_asymptotic: z too close to a turning point +-1");
  }
  if (std::abs(z.imag()) <= 1e-300 && std::abs(z.real()) >= 1.0) {
    throw std::domain_error("pr_bulk_asymptotic: z outside the bulk");
  }
  const double n = static_cast<double>(N);
  const double amplitude = std::sqrt(2.0 / (std::numbers::pi * std::sqrt(2.0 * n)));
  const Complex envelope = principal_pow(1.0 - z, -0.25) * principal_pow(1.0 + z, -0.25);
  const Complex phase = n * std::numbers::pi * bulk_phase_integral(z) + 0.5 * complex_arcsin(z);
  return amplitude * envelope * std::cos(phase);
}

LogScaledValue pr_exterior_asymptotic(Complex z, int N) {
  if (N < 1) {
    throw std::invalid_argument("pr_exterior_asymptotic: N must be >= 1");
  }
  const Complex x = joukowski_root(z);  // throws on [-2, 2]
  if (std::abs(x) > kExteriorMaxRootModulus) {
    throw std::domain_error("pr_exterior_asymptotic: z too close to [-2, 2]");
  }
  const Complex a = principal_pow((z - 2.0) / (z + 2.0), 0.25);
  const Complex u_factor = a + 1.0 / a;
  const double n = static_cast<double>(N);
  const Complex log_value = std::log(u_factor) + n * (0.5 + x * x / 2.0) - n * std::log(x) -
                            std::log(2.0 * std::sqrt(2.0 * std::numbers::pi)) -
                            0.25 * std::log(n);
  LogScaledValue out;
  out.log_magnitude = log_value.real();
  out.phase = std::exp(Complex(0.0, log_value.imag()));
  return out;
}

}  // namespace rmt
