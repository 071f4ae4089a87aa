#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rmt/hermite.hpp"
#include "rmt/kernels.hpp"
#include "support.hpp"

using rmt::Complex;
using rmt::KernelQuery;
using rmt::test::Gen;

namespace {

const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

Complex cd(Complex x, Complex y, int N, Complex s = 1.0) { return rmt::kernel_cd(KernelQuery{x, y, N, s}); }
Complex sum(Complex x, Complex y, int N, Complex s = 1.0) { return rmt::kernel_sum(KernelQuery{x, y, N, s}); }

/// sqrt(sum_k |phi~_k(x)|^2 sum_k |phi~_k(y)|^2): the Cauchy-Schwarz bound on
/// |K~_N(x, y, s)|, used to judge relative errors where K~ itself may vanish.
double cs_scale(Complex x, Complex y, int N, Complex s) {
  double sx = 0.0;
  double sy = 0.0;
  for (int k = 1; k <= N; ++k) {
    const auto px = rmt::phi_scaled(x, k, s);
    const auto py = rmt::phi_scaled(y, k, s);
    sx += std::norm(px.lower_value());
    sy += std::norm(py.lower_value());
  }
  return std::sqrt(sx * sy);
}

}  // namespace

TEST_CASE("kernel_cd examples") {
  CHECK(std::abs(cd(0.3, -1.1, 7) - cd(-1.1, 0.3, 7)) < 1e-15);
  CHECK(std::abs(cd(0.0, 0.0, 2) - kInvSqrt2Pi) < 1e-15);
  CHECK(cd(0.0, 0.0, 2).real() == doctest::Approx(0.398942).epsilon(1e-6));
  const Complex s(0.5, 0.2);
  CHECK(std::abs(cd(-0.4, -2.0, 9, s) - cd(0.4, 2.0, 9, s)) < 1e-14);
  CHECK_THROWS_AS(cd(0.0, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(cd(0.0, 1.0, 3, -2.0), std::domain_error);
}

TEST_CASE("kernel_sum examples") {
  CHECK(std::abs(sum(0.0, 0.0, 1) - kInvSqrt2Pi) < 1e-15);
  CHECK(sum(0.0, 0.0, 1).real() == doctest::Approx(0.398942).epsilon(1e-6));
  CHECK(std::abs(sum(0.0, 1.0, 1) - kInvSqrt2Pi * std::exp(-0.25)) < 1e-15);
}

TEST_CASE("kernels agree with the series oracle and high-precision values") {
  for (int N = 1; N <= 20; ++N) {
    for (double x : {-2.7, -0.4, 0.0, 1.3}) {
      for (double y : {-1.9, 0.0, 0.8, 2.9}) {
        const double expected = rmt::test::kernel_series(N, x, y);
        CHECK(std::abs(cd(x, y, N) - expected) < 1e-12);
        CHECK(std::abs(sum(x, y, N) - expected) < 1e-12);
      }
    }
  }
  // mpmath, 40 digits
  CHECK(cd(0.7, -1.3, 30).real() == doctest::Approx(-0.14506174083113368931).epsilon(1e-12));
  CHECK(rmt::kernel_diag(0.7, 30, 1.0).real() == doctest::Approx(1.7372019347222578129).epsilon(1e-13));
}

TEST_CASE("property: CD form equals the sum form, N <= 50") {
  Gen gen(31);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const int N = gen.integer(1, 50);
    const double x = gen.uniform(-3.0, 3.0);
    const double y = gen.uniform(-3.0, 3.0);
    const Complex a = cd(x, y, N);
    const Complex b = sum(x, y, N);
    worst = std::max(worst, std::abs(a - b) / cs_scale(x, y, N, 1.0));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("property: reflection and scaling identities") {
  Gen gen(32);
  for (int i = 0; i < 400; ++i) {
    const int N = gen.integer(1, 40);
    const double x = gen.uniform(-4.0, 4.0);
    const double y = gen.uniform(-4.0, 4.0);
    const Complex s = (i % 2 == 0) ? Complex(std::exp(gen.uniform(-3.0, 1.0)), 0.0) : gen.off_cut();
    const double scale = cs_scale(x, y, N, s);
    CHECK(std::abs(cd(-x, -y, N, s) - cd(x, y, N, s)) <= 1e-12 * scale);
    const Complex r = rmt::principal_pow(s, -0.5);
    CHECK(std::abs(cd(x, y, N, s) - r * cd(x * r, y * r, N)) <= 1e-12 * scale);
  }
}

TEST_CASE("kernel_diag: confluent limit, positivity and total mass") {
  // The confluent value at (0, N = 2) is phi_0(0)^2 + phi_1(0)^2 = (2 pi)^(-1/2).
  CHECK(std::abs(rmt::kernel_diag(0.0, 2, 1.0) - kInvSqrt2Pi) < 1e-15);
  CHECK(std::abs(rmt::kernel_diag(0.0, 2, 1.0) - sum(0.0, 0.0, 2)) < 1e-15);

  for (double x : {-2.3, -0.1, 0.0, 0.9, 3.4}) {
    for (int N : {1, 4, 17}) {
      // Richardson extrapolation of the off-diagonal CD values to h = 0.
      auto off = [&](double h) { return cd(x, x + h, N).real(); };
      const double h1 = 1e-3;
      const double h2 = 1e-4;
      const double h3 = 1e-5;
      const double r12 = (h1 * off(h2) - h2 * off(h1)) / (h1 - h2);
      const double r23 = (h2 * off(h3) - h3 * off(h2)) / (h2 - h3);
      const double diag = rmt::kernel_diag(x, N, 1.0).real();
      CHECK(std::abs(r23 - diag) < 1e-8);
      CHECK(std::abs(r12 - diag) < 1e-5);
      CHECK(std::abs(cd(x, x + 1e-9, N) - rmt::kernel_diag(x + 0.5e-9, N, 1.0)) < 1e-14);
    }
  }

  for (int N = 1; N <= 10; ++N) {
    const double mass = rmt::test::simpson(
        [&](double x) { return rmt::kernel_diag(x, N, 1.0).real(); }, -40.0, 40.0, 1e-12, 160);
    CHECK(std::abs(mass - N) <= 1e-6);
  }

  Gen gen(33);
  for (int i = 0; i < 500; ++i) {
    const int N = gen.integer(1, 200);
    // Beyond this the value underflows to 0.
    const double reach = 2.0 * std::sqrt(static_cast<double>(N)) + 20.0;
    CHECK(rmt::kernel_diag(gen.uniform(-reach, reach), N, 1.0).real() > 0.0);
  }
}

TEST_CASE("reproducing property, N <= 8") {
  for (int N = 1; N <= 8; ++N) {
    for (auto [x, y] : {std::pair{0.0, 0.5}, std::pair{-1.2, 2.0}, std::pair{0.7, 0.7}}) {
      const double integral = rmt::test::simpson(
          [&](double t) { return cd(x, t, N).real() * cd(t, y, N).real(); }, -20.0, 20.0, 1e-12, 128);
      CHECK(std::abs(integral - cd(x, y, N).real()) <= 1e-6);
    }
  }
}

TEST_CASE("sine_kernel examples") {
  CHECK(rmt::sine_kernel(0.7, 0.7) == 1.0);
  CHECK(rmt::sine_kernel(0.0, 0.5) == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-15));
  CHECK(std::abs(rmt::sine_kernel(0.0, 1.0)) < 1e-16);
  CHECK(rmt::sine_kernel(1.3, -0.4) == rmt::sine_kernel(-0.4, 1.3));
}

TEST_CASE("rescaled_kernel examples and convergence") {
  CHECK(std::abs(rmt::rescaled_kernel(rmt::BulkRescaling(0.0, 200), 0.0, 0.0) - 1.0) <= 0.02);
  CHECK(std::abs(rmt::rescaled_kernel(rmt::BulkRescaling(0.0, 400), 0.0, 1.0)) <= 0.02);
  auto error = [](int N) {
    return std::abs(rmt::rescaled_kernel(rmt::BulkRescaling(1.0, N), 0.3, -0.7) - rmt::sine_kernel(0.3, -0.7));
  };
  CHECK(error(400) < error(100));
  CHECK_THROWS_AS(rmt::BulkRescaling(2.0, 10), std::domain_error);
  CHECK_THROWS_AS(rmt::BulkRescaling(0.0, 0), std::invalid_argument);

  for (double u : {0.0, 0.5, 1.0}) {
    auto grid_error = [u](int N) {
      const rmt::BulkRescaling b(u, N);
      double worst = 0.0;
      for (int i = -12; i <= 12; ++i) {
        for (int j = -12; j <= 12; ++j) {
          worst = std::max(worst, std::abs(rmt::rescaled_kernel(b, 0.25 * i, 0.25 * j) -
                                           rmt::sine_kernel(0.25 * i, 0.25 * j)));
        }
      }
      return worst;
    };
    const double e100 = grid_error(100);
    const double e400 = grid_error(400);
    CHECK(e400 < e100);
    CHECK(e400 <= 0.05);
  }
}

TEST_CASE("rescaled_kernel_complex_path examples") {
  const rmt::BulkRescaling b(0.0, 300);
  CHECK(rmt::rescaled_kernel_complex_path(b, 0.2, -0.9, 0.0) ==
        Complex(rmt::rescaled_kernel(b, 0.2, -0.9), 0.0));

  // Limit evaluated from geometry primitives only.
  const double H = 0.1;
  const Complex d = rmt::d_scale(H);
  const Complex ratio = rmt::wigner_density_complex(0.0 * d) / rmt::wigner_density(0.0);
  const Complex arg = std::numbers::pi * (0.0 - 0.5) * d;
  const Complex limit = std::sin(arg * ratio) / arg;
  CHECK(std::abs(rmt::complex_path_limit(0.0, 0.0, 0.5, H) - limit) < 1e-14);
  CHECK(std::abs(rmt::rescaled_kernel_complex_path(b, 0.0, 0.5, H) - limit) <= 0.05);

  for (double u : {0.0, 0.8, -1.2}) {
    const rmt::BulkRescaling c(u, 120);
    for (double h : {0.05, 0.2}) {
      CHECK(std::abs(rmt::rescaled_kernel_complex_path(c, 0.4, -1.1, -h) -
                     std::conj(rmt::rescaled_kernel_complex_path(c, 0.4, -1.1, h))) < 1e-12);
    }
  }
}

TEST_CASE("kernel_integral_repr examples") {
  CHECK(std::abs(rmt::kernel_integral_repr(0.0, 0.0, 2) - rmt::kernel_diag(0.0, 2, 1.0).real()) <= 1e-6);
  CHECK(std::abs(rmt::kernel_integral_repr(0.5, -0.5, 5) - cd(0.5, -0.5, 5).real()) <= 1e-6);
  CHECK(rmt::kernel_integral_repr(0.5, -0.5, 5) ==
        doctest::Approx(rmt::kernel_integral_repr(-0.5, 0.5, 5)).epsilon(1e-12));
  CHECK_THROWS_AS(rmt::kernel_integral_repr(0.0, 0.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(rmt::kernel_integral_repr(std::nan(""), 0.0, 2), std::domain_error);

  Gen gen(34);
  for (int i = 0; i < 20; ++i) {
    const int N = gen.integer(1, 10);
    const double x = gen.uniform(-4.0, 4.0);
    const double y = gen.uniform(-4.0, 4.0);
    CHECK(std::abs(rmt::kernel_integral_repr(x, y, N) - cd(x, y, N).real()) <= 1e-6);
  }
}
