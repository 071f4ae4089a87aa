#pragma once

// Small dense linear algebra: determinants of correlation matrices and the
// Hermitian eigensolver behind ensembles::eigenvalues.

#include <complex>
#include <span>
#include <vector>

namespace rmt::linalg {

/// Column-major n x n matrix.
template <typename T>
class DenseMatrix {
public:
  DenseMatrix() = default;
  explicit DenseMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * n) {}

  int size() const { return n_; }
  T& operator()(int i, int j) { return data_[static_cast<std::size_t>(j) * n_ + i]; }
  const T& operator()(int i, int j) const { return data_[static_cast<std::size_t>(j) * n_ + i]; }
  std::span<T> column(int j) { return {data_.data() + static_cast<std::size_t>(j) * n_, static_cast<std::size_t>(n_)}; }

private:
  int n_ = 0;
  std::vector<T> data_;
};

/// LU with partial pivoting. The matrix is taken by value and overwritten.
std::complex<double> determinant(DenseMatrix<std::complex<double>> a);
double determinant(DenseMatrix<double> a);

/// Eigenvalues of a Hermitian matrix (lower triangle is read), ascending.
/// Householder reduction to real symmetric tridiagonal form followed by
/// implicit-shift QL. Throws std::runtime_error if QL fails to converge.
std::vector<double> hermitian_eigenvalues(DenseMatrix<std::complex<double>> a);

/// Eigenvalues of the symmetric tridiagonal matrix (diag, offdiag), ascending.
/// offdiag[i] couples rows i and i+1; its size is diag.size() - 1.
std::vector<double> tridiagonal_eigenvalues(std::vector<double> diag, std::vector<double> offdiag);

}  // namespace rmt::linalg
