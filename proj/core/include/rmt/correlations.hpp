#pragma once

// Exact GUE correlation functions, the chi-square mixing densities, and the
// identities linking the GUE to the fixed Hilbert-Schmidt norm ensemble.
//
//   R^{GUE,s}_{n,N}(x_1..x_n) = det K~_N(x_i, x_j, s)
//   R^{GUE,s}_{n,N}           = int_0^inf R^{HSE,u/N^2}_{n,N} gamma_{N^2,s}(u) du
//   gamma_{m,s}(u)            = s^-1 gamma_m(u / s)   (chi-square with m dof)
//   phi_{N^2}(p)              = exp(-i p N / sqrt 2) (1 - i p sqrt2 / N)^(-N^2 / 2)

#include <span>
#include <utility>
#include <vector>

#include "rmt/geometry.hpp"

namespace rmt {

class CorrelationEstimate;

struct CorrelationQuery {
  std::vector<double> points;
  int N = 1;
  Complex s{1.0, 0.0};

  void validate() const;
};

struct ChiSquareSpec {
  int m = 1;
  Complex s{1.0, 0.0};

  void validate() const;
};

/// det(K~_N(x_i, x_j, s)); real and nonnegative for real s > 0.
Complex gue_correlation(const CorrelationQuery& q);

/// The same determinant at complex points.
Complex gue_correlation_at(std::span<const Complex> points, int N, Complex s);

/// R^{GUE, 1/((1+iH)N)} evaluated through the pullback
/// d(H)^n R^{GUE,1/N}(x_1 d(H), ..., x_n d(H)).
Complex gue_correlation_complex_H(std::span<const double> points, int N, double H);

/// gamma_{m,s}(u) with principal powers of s.
Complex chi_density(const ChiSquareSpec& spec, double u);

/// Characteristic function of (T - N^2) / sqrt(2 N^2), T ~ chi^2_{N^2}.
Complex char_fn(int N, double p);

/// det(sine_kernel(t_i, t_j)).
double sine_det(std::span<const double> ts);

/// phi_{N^2}(p) R^{GUE, 1/((1 - i p sqrt2/N) N)}(points).
Complex fourier_rhs(double p, std::span<const double> points, int N);

/// R^{HSE,sigma}_{1,N}(x) from a reference-scale (sigma = 1) one-point
/// estimate by sphere scaling: sigma^{-1/2} R^{HSE,1}(x sigma^{-1/2}).
double hse_density_at_scale(const CorrelationEstimate& reference, double x, double sigma);

/// int_0^inf R^{HSE,u/N^2}_{1,N}(x) gamma_{N^2,s}(u) du with R^{HSE} taken
/// from `reference`. Only one-point functions (points.size() == 1).
double disintegration_rhs(std::span<const double> points, int N, double s,
                          const CorrelationEstimate& reference);

/// q_{N^2}(v) = R^{HSE, 1/N + v sqrt2/N^2}(x) sqrt2 gamma_{N^2,1/N}(N + v sqrt2).
double q_density(double v, std::span<const double> points, int N,
                 const CorrelationEstimate& reference);

/// int exp(i p v) q_{N^2}(v) dv by composite Gauss-Legendre quadrature.
Complex q_transform(double p, std::span<const double> points, int N,
                    const CorrelationEstimate& reference);

/// [lo, hi] carrying all but ~1e-16 of the gamma_{m,s} mass, real s > 0.
std::pair<double, double> chi_support(int m, double s);

}  // namespace rmt
