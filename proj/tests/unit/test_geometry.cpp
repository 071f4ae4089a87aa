#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rmt/geometry.hpp"
#include "support.hpp"

using rmt::Complex;
using rmt::test::Gen;

TEST_CASE("principal_pow examples") {
  CHECK(std::abs(rmt::principal_pow(1.0, 0.5) - Complex(1.0)) < 1e-15);
  CHECK(std::abs(rmt::principal_pow(Complex(0.0, 1.0), 2.0) - Complex(-1.0)) < 1e-15);
  // mpmath: exp(Log(-1 + 1e-9 i) / 2)
  const Complex near_cut = rmt::principal_pow(Complex(-1.0, 1e-9), 0.5);
  CHECK(near_cut.real() == doctest::Approx(5.000000000000000e-10).epsilon(1e-6));
  CHECK(near_cut.imag() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rmt::principal_pow(0.0, 0.5) == Complex(0.0));
}

TEST_CASE("principal_pow rejects the cut") {
  CHECK_THROWS_AS(rmt::principal_pow(-1.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(rmt::principal_pow(0.0, 0.25), std::domain_error);
  CHECK_THROWS_AS(rmt::principal_pow(Complex(-2.0, 0.0), 1.5), std::domain_error);
  // The lower side of the cut is not on it.
  CHECK_NOTHROW(rmt::principal_pow(Complex(-1.0, -1e-12), 0.5));
}

TEST_CASE("principal_pow is continuous across the upper half plane and jumps at the cut") {
  const Complex above = rmt::principal_pow(Complex(-1.0, 1e-12), 0.5);
  const Complex below = rmt::principal_pow(Complex(-1.0, -1e-12), 0.5);
  CHECK(std::abs(above - Complex(0.0, 1.0)) < 1e-11);
  CHECK(std::abs(below - Complex(0.0, -1.0)) < 1e-11);
}

TEST_CASE("property: z^a z^b = z^(a+b) off the cut") {
  Gen gen(11);
  for (int i = 0; i < 1000; ++i) {
    const Complex z = gen.off_cut();
    const double a = gen.uniform(-2.0, 2.0);
    const double b = gen.uniform(-2.0, 2.0);
    const Complex lhs = rmt::principal_pow(z, a) * rmt::principal_pow(z, b);
    const Complex rhs = rmt::principal_pow(z, a + b);
    CHECK(rmt::test::rel_diff(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("d_scale examples") {
  CHECK(rmt::d_scale(0.0) == Complex(1.0, 0.0));
  const Complex d1 = rmt::d_scale(1.0);
  CHECK(d1.real() == doctest::Approx(1.098684).epsilon(1e-6));
  CHECK(d1.imag() == doctest::Approx(0.455090).epsilon(1e-6));
  CHECK(rmt::d_scale(-1.0) == std::conj(d1));
  CHECK(std::abs(d1 * d1 - Complex(1.0, 1.0)) < 1e-15);
  CHECK_THROWS_AS(rmt::d_scale(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("property: d(H) modulus, hyperbola and cone identities on [-10, 10]") {
  for (int k = -400; k <= 400; ++k) {
    const double H = k * 0.025;
    const Complex d = rmt::d_scale(H);
    const double modulus4 = std::pow(std::abs(d), 4.0);
    CHECK(std::abs(modulus4 - (1.0 + H * H)) <= 1e-12 * (1.0 + H * H));
    CHECK(std::abs(d.real() * d.real() - d.imag() * d.imag() - 1.0) <= 1e-12);
    for (double u : {-3.0, -1.0, -0.1, 0.7, 2.0}) {
      const Complex w = u * d;
      CHECK(std::abs(w.real()) >= std::abs(w.imag()) - 1e-12);
    }
  }
}

TEST_CASE("h_bound examples and round trip") {
  CHECK(rmt::h_bound(0.0) == 0.0);
  CHECK(rmt::h_bound(1.0) == doctest::Approx(std::sqrt(8.0)).epsilon(1e-15));
  CHECK(std::abs(rmt::d_scale(rmt::h_bound(0.3)).imag()) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK_THROWS_AS(rmt::h_bound(-0.1), std::domain_error);
}

TEST_CASE("property: h_bound inverts |Im d(H)| on [0, inf)") {
  Gen gen(12);
  for (int i = 0; i < 1000; ++i) {
    const double b = std::exp(gen.uniform(std::log(1e-6), std::log(50.0)));
    CHECK(std::abs(std::abs(rmt::d_scale(rmt::h_bound(b)).imag()) - b) <= 1e-10 * std::max(1.0, b));
    const double H = gen.uniform(0.0, 100.0);
    CHECK(std::abs(rmt::h_bound(std::abs(rmt::d_scale(H).imag())) - H) <= 1e-10 * std::max(1.0, H));
  }
}

TEST_CASE("wigner_density examples and mass") {
  CHECK(rmt::wigner_density(0.0) == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-15));
  CHECK(rmt::wigner_density(2.0) == 0.0);
  CHECK(rmt::wigner_density(-2.0) == 0.0);
  CHECK(rmt::wigner_density(3.0) == 0.0);
  // Substituting u = 2 sin t removes the edge singularity of the derivative.
  const double mass = rmt::test::simpson(
      [](double t) { return rmt::wigner_density(2.0 * std::sin(t)) * 2.0 * std::cos(t); },
      -std::numbers::pi / 2, std::numbers::pi / 2, 1e-12);
  CHECK(std::abs(mass - 1.0) < 1e-8);
}

TEST_CASE("wigner_density_complex examples") {
  CHECK(std::abs(rmt::wigner_density_complex(0.0) - 1.0 / std::numbers::pi) < 1e-15);
  CHECK(std::abs(rmt::wigner_density_complex(1.0) - std::sqrt(3.0) / (2 * std::numbers::pi)) < 1e-15);
  // mpmath: sqrt(2 - z) sqrt(2 + z) / (2 pi) at z = 0.5 + 0.1i
  const Complex z(0.5, 0.1);
  const Complex w = rmt::wigner_density_complex(z);
  CHECK(w.real() == doctest::Approx(0.30864016523890527).epsilon(1e-13));
  CHECK(w.imag() == doctest::Approx(-0.0041035320031949399).epsilon(1e-11));
  CHECK(w.real() > 0.0);
  CHECK(std::abs(rmt::wigner_density_complex(std::conj(z))) == doctest::Approx(std::abs(w)));
  CHECK_THROWS_AS(rmt::wigner_density_complex(2.5), std::domain_error);
  CHECK_THROWS_AS(rmt::wigner_density_complex(-2.0), std::domain_error);
  CHECK_NOTHROW(rmt::wigner_density_complex(Complex(2.5, 1e-3)));
}

TEST_CASE("property: wigner_density_complex restricts to w and satisfies Cauchy-Riemann") {
  Gen gen(13);
  for (int i = 0; i < 200; ++i) {
    const double u = gen.uniform(-1.99, 1.99);
    CHECK(std::abs(rmt::wigner_density_complex(u) - rmt::wigner_density(u)) < 1e-14);
  }
  const double h = 1e-6;
  for (int i = 0; i < 200; ++i) {
    Complex z = gen.complex_in(-4.0, 4.0, -2.0, 2.0);
    if (std::abs(z.imag()) < 0.05 && std::abs(z.real()) > 1.9) {
      continue;
    }
    const Complex dx = (rmt::wigner_density_complex(z + h) - rmt::wigner_density_complex(z - h)) / (2 * h);
    const Complex dy = (rmt::wigner_density_complex(z + Complex(0, h)) -
                        rmt::wigner_density_complex(z - Complex(0, h))) / (2 * h);
    CHECK(std::abs(dx + Complex(0, 1) * dy) < 1e-6 * std::max(1.0, std::abs(dx)));
  }
}

TEST_CASE("in_strip examples") {
  const rmt::StripSpec strip(0.5, 0.1);
  CHECK(rmt::in_strip(0.0, strip, true));
  CHECK(rmt::in_strip(Complex(1.5, 0.1), strip, true));
  CHECK_FALSE(rmt::in_strip(Complex(1.5, 0.1), strip, false));
  CHECK_FALSE(rmt::in_strip(1.9, strip, true));
  CHECK_FALSE(rmt::in_strip(1.9, strip, false));
  CHECK_THROWS_AS(rmt::StripSpec(0.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(rmt::StripSpec(2.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(rmt::StripSpec(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("property: u d(H) stays in the closed strip for |H| <= h_bound(beta/2)") {
  Gen gen(14);
  for (int i = 0; i < 2000; ++i) {
    const double alpha = gen.uniform(0.01, 0.99);
    const double beta = gen.uniform(1e-3, alpha * 0.999);
    const double u = gen.uniform(-2.0 + 2.0 * alpha, 2.0 - 2.0 * alpha);
    const double bound = rmt::h_bound(beta / 2.0);
    const double H = gen.uniform(-bound, bound);
    CHECK(rmt::in_strip(u * rmt::d_scale(H), rmt::StripSpec(alpha, beta), true));
  }
}

TEST_CASE("joukowski_root examples") {
  CHECK(std::abs(rmt::joukowski_root(2.5) - Complex(0.5)) < 1e-15);
  CHECK(std::abs(rmt::joukowski_root(-2.5) - Complex(-0.5)) < 1e-15);
  // x^2 - 3i x + 1 = 0: roots i(3 +- sqrt 13)/2; the small one is i(3 - sqrt 13)/2.
  const Complex x = rmt::joukowski_root(Complex(0.0, 3.0));
  CHECK(std::abs(x - Complex(0.0, (3.0 - std::sqrt(13.0)) / 2.0)) < 1e-15);
  CHECK(std::abs(x + 1.0 / x - Complex(0.0, 3.0)) < 1e-12);
  CHECK_THROWS_AS(rmt::joukowski_root(1.0), std::domain_error);
  CHECK_THROWS_AS(rmt::joukowski_root(-2.0), std::domain_error);
  CHECK(rmt::kappa(3.0).real() > 0.0);
}

TEST_CASE("property: joukowski_root solves x + 1/x = z with |x| < 1 and is odd") {
  Gen gen(15);
  for (int i = 0; i < 1000; ++i) {
    Complex z = gen.complex_in(-50.0, 50.0, -50.0, 50.0);
    if (i % 3 == 0) {
      z = gen.complex_in(-3.0, 3.0, -0.01, 0.01);
    }
    if (std::abs(z.imag()) < 1e-3 && std::abs(z.real()) <= 2.0) {
      continue;
    }
    const Complex x = rmt::joukowski_root(z);
    CHECK(std::abs(x) < 1.0);
    CHECK(std::abs(x + 1.0 / x - z) <= 1e-12 * std::max(1.0, std::abs(z)));
    CHECK(std::abs(rmt::joukowski_root(-z) + x) <= 1e-14 * std::max(1.0, std::abs(x)));
  }
}

TEST_CASE("in_ellipse_exterior examples") {
  const rmt::EllipseSpec e(0.5);
  CHECK(rmt::in_ellipse_exterior(10.0, e));
  CHECK_FALSE(rmt::in_ellipse_exterior(0.0, e));
  CHECK(rmt::in_ellipse_exterior(2.5, e));
  CHECK_THROWS_AS(rmt::EllipseSpec(1.0), std::invalid_argument);
  CHECK_THROWS_AS(rmt::EllipseSpec(0.0), std::invalid_argument);
}

TEST_CASE("property: ellipse exterior iff |x(z)| <= r") {
  Gen gen(16);
  int checked = 0;
  for (int i = 0; i < 3000; ++i) {
    const double r = gen.uniform(0.05, 0.95);
    const Complex z = gen.complex_in(-6.0, 6.0, -4.0, 4.0);
    if (std::abs(z.imag()) < 1e-9 && std::abs(z.real()) <= 2.0) {
      continue;
    }
    const double modulus = std::abs(rmt::joukowski_root(z));
    if (std::abs(modulus - r) < 1e-9) {
      continue;
    }
    CHECK(rmt::in_ellipse_exterior(z, rmt::EllipseSpec(r)) == (modulus <= r));
    ++checked;
  }
  CHECK(checked > 2500);
}

TEST_CASE("complex_arcsin inverts sin on the strip") {
  Gen gen(17);
  for (int i = 0; i < 500; ++i) {
    const Complex z = gen.complex_in(-0.95, 0.95, -0.5, 0.5);
    const Complex w = rmt::complex_arcsin(z);
    CHECK(std::abs(w.real()) < std::numbers::pi / 2);
    CHECK(std::abs(std::sin(w) - z) < 1e-13);
  }
  CHECK(std::abs(rmt::complex_arcsin(0.5) - std::asin(0.5)) < 1e-15);
}
