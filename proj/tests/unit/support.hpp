#pragma once

// Independent oracles and property-input generators for the unit tests.
// Nothing here calls into rmt::core, so agreement is meaningful.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace rmt::test {

using Complex = std::complex<double>;

inline double rel_diff(Complex a, Complex b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

/// Seeded source of property-test inputs.
class Gen {
public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  Complex complex_in(double re_lo, double re_hi, double im_lo, double im_hi) {
    return {uniform(re_lo, re_hi), uniform(im_lo, im_hi)};
  }
  /// Point off the cut (-inf, 0] with modulus in [0.1, 10].
  Complex off_cut() {
    const double r = std::exp(uniform(std::log(0.1), std::log(10.0)));
    const double theta = uniform(-0.999 * std::numbers::pi, 0.999 * std::numbers::pi);
    return std::polar(r, theta);
  }

private:
  std::mt19937_64 engine_;
};

/// phi_k(x) from the explicit coefficient sum of the probabilists' Hermite
/// polynomial He_k, in long double. Accurate for k <= 20 and |x| <= 5.
inline long double hermite_function_series(int k, long double x) {
  long double he = 0.0L;
  long double log_kfact = std::lgamma(static_cast<long double>(k) + 1.0L);
  for (int m = 0; 2 * m <= k; ++m) {
    const long double log_coeff = log_kfact - std::lgamma(m + 1.0L) - std::lgamma(k - 2 * m + 1.0L) -
                                  m * std::log(2.0L);
    const long double term = std::exp(log_coeff) * std::pow(x, k - 2 * m);
    he += (m % 2 == 0) ? term : -term;
  }
  const long double norm = std::pow(2.0L * std::numbers::pi_v<long double>, 0.25L) *
                           std::exp(0.5L * log_kfact);
  return he * std::exp(-x * x / 4.0L) / norm;
}

/// sum_{k<N} phi_k(x) phi_k(y) from the series oracle.
inline double kernel_series(int N, double x, double y) {
  long double sum = 0.0L;
  for (int k = 0; k < N; ++k) {
    sum += hermite_function_series(k, x) * hermite_function_series(k, y);
  }
  return static_cast<double>(sum);
}

namespace detail {
inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                           double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

/// Adaptive Simpson quadrature over [a, b], split into `pieces` equal panels.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      double tol = 1e-11, int pieces = 64) {
  double total = 0.0;
  const double h = (b - a) / pieces;
  for (int i = 0; i < pieces; ++i) {
    const double lo = a + i * h;
    const double hi = lo + h;
    const double flo = f(lo);
    const double fhi = f(hi);
    const double fm = f(0.5 * (lo + hi));
    const double whole = h / 6.0 * (flo + 4.0 * fm + fhi);
    total += detail::simpson_step(f, lo, hi, flo, fm, fhi, whole, tol / pieces, 40);
  }
  return total;
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

/// Asymptotic Kolmogorov distribution tail P(K > lambda).
inline double kolmogorov_tail(double lambda) {
  if (lambda < 0.2) {
    return 1.0;
  }
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1) ? term : -term;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

/// One-sample Kolmogorov-Smirnov p-value against `cdf`.
inline double ks_pvalue(std::vector<double> xs, const std::function<double(double)>& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double c = cdf(xs[i]);
    d = std::max({d, (i + 1) / n - c, c - i / n});
  }
  const double sqrt_n = std::sqrt(n);
  return kolmogorov_tail((sqrt_n + 0.12 + 0.11 / sqrt_n) * d);
}

/// Two-sample Kolmogorov-Smirnov p-value.
inline double ks_two_sample_pvalue(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  const double ne = static_cast<double>(a.size()) * b.size() / (a.size() + b.size());
  const double sqrt_ne = std::sqrt(ne);
  return kolmogorov_tail((sqrt_ne + 0.12 + 0.11 / sqrt_ne) * d);
}

}  // namespace rmt::test
