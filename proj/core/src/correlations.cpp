#include "rmt/correlations.hpp"

#include "rmt/ensembles.hpp"
#include "rmt/kernels.hpp"
#include "rmt/linalg.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rmt {

namespace {

constexpr int kQuadraturePanels = 64;
constexpr double kChiTailMass = 1e-16;
constexpr double kMaxUncoveredWeight = 1e-3;

/// Composite 16-point Gauss-Legendre over [lo, hi] with extra panel
/// boundaries at `breaks`, where the integrand may jump.
template <typename F>
auto composite_gauss(F&& f, double lo, double hi, std::vector<double> breaks) {
  using Rule = boost::math::quadrature::gauss<double, 16>;
  breaks.push_back(lo);
  breaks.push_back(hi);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  const double nominal = (hi - lo) / kQuadraturePanels;
  decltype(f(lo)) total{};
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double a = breaks[k];
    const double b = breaks[k + 1];
    const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / nominal)));
    const double width = (b - a) / panels;
    for (int i = 0; i < panels; ++i) {
      total += Rule::integrate(f, a + i * width, i + 1 == panels ? b : a + (i + 1) * width);
    }
  }
  return total;
}

void check_reference(const CorrelationEstimate& reference, int N, const char* where) {
  if (reference.order() != 1 || reference.ensemble() != Ensemble::hse) {
    throw std::invalid_argument(std::string(where) + ": reference must be an HSE one-point estimate");
  }
  if (reference.N() != N) {
    throw std::invalid_argument(std::string(where) + ": reference matrix size differs from N");
  }
  if (reference.samples() == 0) {
    throw std::invalid_argument(std::string(where) + ": reference estimate is empty");
  }
}

void check_one_point(std::span<const double> points, const char* where) {
  if (points.size() != 1) {
    throw std::invalid_argument(std::string(where) + ": only one-point functions are supported");
  }
  if (!std::isfinite(points[0])) {
    throw std::domain_error(std::string(where) + ": point must be finite");
  }
}

/// The reference is read at y = x / sqrt(u / N) when the squared HS norm is u.
/// Returns the u in (lo, hi) at which y crosses a histogram edge.
std::vector<double> edge_crossings(const HistogramGrid& grid, double x, int N, double lo, double hi) {
  std::vector<double> out;
  if (x == 0.0) {
    return out;
  }
  for (int k = 0; k <= grid.bins; ++k) {
    const double y = grid.edge(k);
    if (y == 0.0 || (y > 0.0) != (x > 0.0)) {
      continue;
    }
    const double u = N * x * x / (y * y);
    if (u > lo && u < hi) {
      out.push_back(u);
    }
  }
  return out;
}

/// gamma_{m,s} mass of those u whose coordinate y lies inside the a-priori
/// HSE support |y| <= sqrt(N) but outside the estimated grid. Throws when it
/// exceeds kMaxUncoveredWeight.
void check_coverage(const HistogramGrid& grid, double x, int N, int m, double s, const char* where) {
  if (x == 0.0) {
    if (grid.lo > 0.0 || grid.hi < 0.0) {
      throw std::domain_error(std::string(where) + ": reference grid does not contain 0");
    }
    return;
  }
  const double edge = x > 0.0 ? grid.hi : -grid.lo;
  const double support = std::sqrt(static_cast<double>(N));
  if (edge >= support) {
    return;
  }
  // |y| in (edge, support)  <=>  u in (x^2, N x^2 / edge^2).
  const double a = 0.5 * m;
  const double u_lo = x * x;
  const double u_hi = edge > 0.0 ? N * x * x / (edge * edge) : std::numeric_limits<double>::infinity();
  const double mass = boost::math::gamma_p(a, std::min(u_hi / (2.0 * s), 1e300)) -
                      boost::math::gamma_p(a, u_lo / (2.0 * s));
  if (mass > kMaxUncoveredWeight) {
    throw std::domain_error(std::string(where) +
                            ": reference grid misses HSE support carrying gamma weight " +
                            std::to_string(mass));
  }
}

}  // namespace

void CorrelationQuery::validate() const {
  if (N < 1) {
    throw std::invalid_argument("CorrelationQuery: N must be >= 1");
  }
  if (points.empty() || static_cast<int>(points.size()) > N) {
    throw std::invalid_argument("CorrelationQuery: need 1 <= n <= N points");
  }
  if (on_negative_real_axis(s)) {
    throw std::domain_error("CorrelationQuery: scale s on the branch cut (-inf, 0]");
  }
}

void ChiSquareSpec::validate() const {
  if (m < 1) {
    throw std::invalid_argument("ChiSquareSpec: m must be >= 1");
  }
  if (on_negative_real_axis(s)) {
    throw std::domain_error("ChiSquareSpec: scale s on the branch cut (-inf, 0]");
  }
}

Complex gue_correlation_at(std::span<const Complex> points, int N, Complex s) {
  const int n = static_cast<int>(points.size());
  if (N < 1 || n < 1 || n > N) {
    throw std::invalid_argument("gue_correlation: need N >= 1 and 1 <= n <= N points");
  }
  linalg::DenseMatrix<Complex> k(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      k(i, j) = kernel_cd(KernelQuery{points[i], points[j], N, s});
    }
  }
  return n == 1 ? k(0, 0) : linalg::determinant(std::move(k));
}

Complex gue_correlation(const CorrelationQuery& q) {
  q.validate();
  std::vector<Complex> z(q.points.begin(), q.points.end());
  return gue_correlation_at(z, q.N, q.s);
}

Complex gue_correlation_complex_H(std::span<const double> points, int N, double H) {
  const Complex d = d_scale(H);
  std::vector<Complex> z;
  z.reserve(points.size());
  for (double x : points) {
    z.push_back(x * d);
  }
  const Complex value = gue_correlation_at(z, N, Complex(1.0 / N, 0.0));
  return std::pow(d, static_cast<int>(points.size())) * value;
}

Complex chi_density(const ChiSquareSpec& spec, double u) {
  spec.validate();
  if (u < 0.0 || std::isnan(u)) {
    return {0.0, 0.0};
  }
  const double half_m = 0.5 * spec.m;
  if (u == 0.0) {
    if (spec.m == 1) {
      return {std::numeric_limits<double>::infinity(), 0.0};
    }
    if (spec.m > 2) {
      return {0.0, 0.0};
    }
    return 1.0 / (2.0 * spec.s);
  }
  const Complex log_density = -half_m * std::numbers::ln2 - half_m * std::log(spec.s) -
                              std::lgamma(half_m) + (half_m - 1.0) * std::log(u) -
                              u / (2.0 * spec.s);
  return std::exp(log_density);
}

Complex char_fn(int N, double p) {
  if (N < 1) {
    throw std::invalid_argument("char_fn: N must be >= 1");
  }
  const double n = N;
  const Complex phase = std::exp(Complex(0.0, -p * n / std::numbers::sqrt2));
  const Complex base(1.0, -p * std::numbers::sqrt2 / n);
  return phase * principal_pow(base, -0.5 * n * n);
}

double sine_det(std::span<const double> ts) {
  const int n = static_cast<int>(ts.size());
  if (n < 1) {
    throw std::invalid_argument("sine_det: need at least one point");
  }
  linalg::DenseMatrix<double> k(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      k(i, j) = sine_kernel(ts[i], ts[j]);
    }
  }
  return linalg::determinant(std::move(k));
}

Complex fourier_rhs(double p, std::span<const double> points, int N) {
  const double H = -p * std::numbers::sqrt2 / N;
  return char_fn(N, p) * gue_correlation_complex_H(points, N, H);
}

double hse_density_at_scale(const CorrelationEstimate& reference, double x, double sigma) {
  if (!(sigma > 0.0)) {
    throw std::domain_error("hse_density_at_scale: sigma must be > 0");
  }
  const int N = reference.N();
  check_reference(reference, N, "hse_density_at_scale");
  // The estimate is a density of lambda / sqrt(sN), which is scale-free on the
  // sphere; undo that normalization and multiply by N for R_1.
  const double unit = std::sqrt(sigma * N);
  return N * reference.step_value(x / unit) / unit;
}

std::pair<double, double> chi_support(int m, double s) {
  if (m < 1) {
    throw std::invalid_argument("chi_support: m must be >= 1");
  }
  if (!(s > 0.0)) {
    throw std::domain_error("chi_support: s must be > 0");
  }
  const double a = 0.5 * m;
  const double lo = 2.0 * s * boost::math::gamma_p_inv(a, kChiTailMass);
  const double hi = 2.0 * s * boost::math::gamma_q_inv(a, kChiTailMass);
  return {lo, hi};
}

double disintegration_rhs(std::span<const double> points, int N, double s,
                          const CorrelationEstimate& reference) {
  check_one_point(points, "disintegration_rhs");
  check_reference(reference, N, "disintegration_rhs");
  const int m = N * N;
  const auto [lo, hi] = chi_support(m, s);
  const ChiSquareSpec chi{m, Complex(s, 0.0)};
  const double x = points[0];
  check_coverage(reference.grid(), x, N, m, s, "disintegration_rhs");

  auto integrand = [&](double u) {
    if (u <= 0.0) {
      return 0.0;
    }
    const double sigma = u / (static_cast<double>(N) * N);
    return hse_density_at_scale(reference, x, sigma) * chi_density(chi, u).real();
  };
  return composite_gauss(integrand, lo, hi, edge_crossings(reference.grid(), x, N, lo, hi));
}

double q_density(double v, std::span<const double> points, int N,
                 const CorrelationEstimate& reference) {
  check_one_point(points, "q_density");
  check_reference(reference, N, "q_density");
  const double n = N;
  const double u = n + v * std::numbers::sqrt2;
  if (u <= 0.0) {
    return 0.0;
  }
  const double sigma = u / (n * n);
  const ChiSquareSpec chi{N * N, Complex(1.0 / n, 0.0)};
  return hse_density_at_scale(reference, points[0], sigma) * std::numbers::sqrt2 *
         chi_density(chi, u).real();
}

Complex q_transform(double p, std::span<const double> points, int N,
                    const CorrelationEstimate& reference) {
  check_one_point(points, "q_transform");
  check_reference(reference, N, "q_transform");
  const double n = N;
  const auto [u_lo, u_hi] = chi_support(N * N, 1.0 / n);
  check_coverage(reference.grid(), points[0], N, N * N, 1.0 / n, "q_transform");
  auto to_v = [&](double u) { return (u - n) / std::numbers::sqrt2; };
  std::vector<double> breaks = edge_crossings(reference.grid(), points[0], N, u_lo, u_hi);
  std::transform(breaks.begin(), breaks.end(), breaks.begin(), to_v);

  auto integrand = [&](double v) {
    return std::exp(Complex(0.0, p * v)) * q_density(v, points, N, reference);
  };
  return composite_gauss(integrand, to_v(u_lo), to_v(u_hi), std::move(breaks));
}

}  // namespace rmt
