#pragma once

// Christoffel-Darboux reproducing kernels of the Hermite functions.
//
//   K~_N(x, y, s) = sum_{k<N} phi~_k(x, s) phi~_k(y, s)
//                 = sqrt(sN) (phi~_N(x) phi~_{N-1}(y) - phi~_{N-1}(x) phi~_N(y)) / (x - y)
//                 = s^(-1/2) K_N(x s^(-1/2), y s^(-1/2))
//
// All arguments may be complex; s may be any complex number off (-inf, 0].

#include "rmt/geometry.hpp"

namespace rmt {

struct KernelQuery {
  Complex x;
  Complex y;
  int N = 1;
  Complex s{1.0, 0.0};

  /// Throws std::invalid_argument / std::domain_error on N < 1 or s on the cut.
  void validate() const;
};

/// Bulk point u in (-2, 2) with local eigenvalue density N w(u).
class BulkRescaling {
public:
  BulkRescaling(double u, int N);

  double u() const { return u_; }
  int N() const { return N_; }
  /// N w(u): eigenvalues per unit length at u.
  double local_density() const { return local_density_; }
  /// u + t / (N w(u)).
  double point(double t) const { return u_ + t / local_density_; }

private:
  double u_;
  int N_;
  double local_density_;
};

/// Relative separation below which kernel_cd switches to the confluent form.
inline constexpr double kConfluentThreshold = 1e-6;

Complex kernel_cd(const KernelQuery& q);

/// Direct partial sum; O(N) single sweep, independent of kernel_cd.
Complex kernel_sum(const KernelQuery& q);

/// K~_N(x, x, s) from the confluent Christoffel-Darboux limit.
Complex kernel_diag(Complex x, int N, Complex s);

double sine_kernel(double t1, double t2);

/// (N w(u))^-1 K~_N(u + t1/(N w(u)), u + t2/(N w(u)), 1/N).
double rescaled_kernel(const BulkRescaling& b, double t1, double t2);

/// Same as rescaled_kernel with both arguments multiplied by d(H).
Complex rescaled_kernel_complex_path(const BulkRescaling& b, double t1, double t2, double H);

/// N -> infinity limit of rescaled_kernel_complex_path:
/// sin(pi (t1 - t2) d(H) w(u d(H)) / w(u)) / (pi (t1 - t2) d(H)).
Complex complex_path_limit(double u, double t1, double t2, double H);

/// K_N(x, y) = (sqrt(N) / 2) int_0^inf (phi_N(x+t) phi_{N-1}(y+t) + phi_{N-1}(x+t) phi_N(y+t)) dt,
/// evaluated by adaptive Gauss-Kronrod quadrature. Real arguments only.
double kernel_integral_repr(double x, double y, int N);

}  // namespace rmt
