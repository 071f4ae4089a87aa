#include "rmt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace rmt::linalg {

namespace {

template <typename T>
T lu_determinant(DenseMatrix<T>& a) {
  const int n = a.size();
  T det = T(1.0);
  for (int k = 0; k < n; ++k) {
    int pivot = k;
    double best = std::abs(a(k, k));
    for (int i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > best) {
        best = std::abs(a(i, k));
        pivot = i;
      }
    }
    if (best == 0.0) {
      return T(0.0);
    }
    if (pivot != k) {
      for (int j = 0; j < n; ++j) {
        std::swap(a(k, j), a(pivot, j));
      }
      det = -det;
    }
    const T diag = a(k, k);
    det *= diag;
    for (int i = k + 1; i < n; ++i) {
      const T factor = a(i, k) / diag;
      for (int j = k + 1; j < n; ++j) {
        a(i, j) -= factor * a(k, j);
      }
    }
  }
  return det;
}

}  // namespace

std::complex<double> determinant(DenseMatrix<std::complex<double>> a) { return lu_determinant(a); }

double determinant(DenseMatrix<double> a) { return lu_determinant(a); }

std::vector<double> hermitian_eigenvalues(DenseMatrix<std::complex<double>> a) {
  using C = std::complex<double>;
  const int n = a.size();
  if (n == 0) {
    return {};
  }
  std::vector<double> diag(n);
  std::vector<double> offdiag(std::max(n - 1, 0));
  std::vector<C> v(n);
  std::vector<C> p(n);

  for (int k = 0; k + 2 < n; ++k) {
    const int first = k + 1;
    const int m = n - first;
    double sigma = 0.0;
    for (int i = 0; i < m; ++i) {
      sigma += std::norm(a(first + i, k));
    }
    diag[k] = a(k, k).real();
    const double xnorm = std::sqrt(sigma);
    if (xnorm == 0.0) {
      offdiag[k] = 0.0;
      continue;
    }
    const C x0 = a(first, k);
    const C phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : C(1.0);
    const C alpha = -phase * xnorm;
    for (int i = 0; i < m; ++i) {
      v[i] = a(first + i, k);
    }
    v[0] -= alpha;
    double vnorm2 = 0.0;
    for (int i = 0; i < m; ++i) {
      vnorm2 += std::norm(v[i]);
    }
    offdiag[k] = xnorm;
    if (vnorm2 == 0.0) {
      continue;
    }
    const double tau = 2.0 / vnorm2;

    // p = tau B v with B the trailing block, read from its lower triangle.
    // Complex products are spelled out in real arithmetic: the inner loops
    // dominate sampling cost and std::complex multiplication is not inlined.
    std::fill(p.begin(), p.begin() + m, C(0.0));
    for (int j = 0; j < m; ++j) {
      const double vr = v[j].real();
      const double vi = v[j].imag();
      const C* col = &a(first, first + j);
      double acc_r = col[j].real() * vr;
      double acc_i = col[j].real() * vi;
      for (int i = j + 1; i < m; ++i) {
        const double br = col[i].real();
        const double bi = col[i].imag();
        p[i] += C(br * vr - bi * vi, br * vi + bi * vr);
        acc_r += br * v[i].real() + bi * v[i].imag();
        acc_i += br * v[i].imag() - bi * v[i].real();
      }
      p[j] += C(acc_r, acc_i);
    }
    double vp = 0.0;
    for (int i = 0; i < m; ++i) {
      p[i] *= tau;
      vp += v[i].real() * p[i].real() + v[i].imag() * p[i].imag();
    }
    const double half_k = 0.5 * tau * vp;
    for (int i = 0; i < m; ++i) {
      p[i] -= half_k * v[i];
    }
    // B -= v q^* + q v^*, lower triangle only.
    for (int j = 0; j < m; ++j) {
      const double qr = p[j].real();
      const double qi = p[j].imag();
      const double vr = v[j].real();
      const double vi = v[j].imag();
      C* col = &a(first, first + j);
      for (int i = j; i < m; ++i) {
        const double ar = v[i].real();
        const double ai = v[i].imag();
        const double pr = p[i].real();
        const double pi = p[i].imag();
        col[i] -= C(ar * qr + ai * qi + pr * vr + pi * vi, ai * qr - ar * qi + pi * vr - pr * vi);
      }
    }
  }
  if (n >= 2) {
    diag[n - 2] = a(n - 2, n - 2).real();
    offdiag[n - 2] = std::abs(a(n - 1, n - 2));
  }
  diag[n - 1] = a(n - 1, n - 1).real();
  return tridiagonal_eigenvalues(std::move(diag), std::move(offdiag));
}

std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> offdiag) {
  const int n = static_cast<int>(d.size());
  if (n == 0) {
    return d;
  }
  if (static_cast<int>(offdiag.size()) != n - 1) {
    throw std::invalid_argument("tridiagonal_eigenvalues: offdiag must have size n - 1");
  }
  std::vector<double> e(offdiag.begin(), offdiag.end());
  e.push_back(0.0);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr int kMaxIterations = 60;

  for (int l = 0; l < n; ++l) {
    int iterations = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) {
          break;
        }
      }
      if (m == l) {
        break;
      }
      if (++iterations > kMaxIterations) {
        throw std::runtime_error("tridiagonal_eigenvalues: QL iteration did not converge");
      }
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      int i = m - 1;
      for (; i >= l; --i) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (r == 0.0 && i >= l) {
        continue;
      }
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace rmt::linalg
