#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "mubqpd/config.hpp"

namespace mubqpd {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Dense square complex matrix, row-major. Every operator, unitary and
/// density matrix in the library is carried by this type.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);
  /// Takes `dim * dim` row-major entries; throws BadInput on a size mismatch
  /// or a non-finite entry.
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> diag);
  static ComplexMatrix diagonal(std::span<const Complex> diag);
  /// Matrix whose k-th column is `columns[k]`.
  static ComplexMatrix from_columns(const std::vector<ComplexVector>& columns);

  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return dim_ == 0; }

  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }

  std::span<const Complex> entries() const noexcept { return data_; }

  ComplexVector column(std::size_t col) const;
  ComplexVector row(std::size_t r) const;
  ComplexMatrix adjoint() const;
  Complex trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex scale);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex scale, ComplexMatrix m);
ComplexMatrix operator*(double scale, ComplexMatrix m);
ComplexVector operator*(const ComplexMatrix& m, const ComplexVector& v);

/// Tr(A^dagger B).
Complex frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_norm(const ComplexMatrix& m);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
/// Largest entry of |M - M^dagger|.
double hermiticity_defect(const ComplexMatrix& m);
/// Largest entry of |U^dagger U - I|.
double unitarity_defect(const ComplexMatrix& u);

Complex inner(const ComplexVector& u, const ComplexVector& v);  // <u|v>
double norm(const ComplexVector& v);
ComplexMatrix outer(const ComplexVector& u, const ComplexVector& v);  // |u><v|
/// <v|M|v>.
Complex expectation(const ComplexMatrix& m, const ComplexVector& v);

struct EigenSystem {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // columns are unit eigenvectors
};

/// Eigendecomposition of a Hermitian matrix by Householder reduction to a
/// real tridiagonal form followed by implicit QL iteration.
/// Throws NotHermitian or NoConvergence.
EigenSystem hermitian_eig(const ComplexMatrix& m, const Tolerances& tol = kTolerances);

/// Groups of indices into `eigenvalues` (ascending) whose neighbours are
/// within `rel_gap * max(1, |lambda|)` of each other.
std::vector<std::vector<std::size_t>> eigenvalue_clusters(std::span<const double> eigenvalues,
                                                          double rel_gap = kTolerances.eig_cluster_gap);

/// exp(i s M) for Hermitian M via its spectral decomposition.
ComplexMatrix unitary_exp(const ComplexMatrix& m, double s, const Tolerances& tol = kTolerances);
ComplexMatrix unitary_exp(const EigenSystem& eig, double s);

/// Multiplies each column by the phase that makes its first significant
/// component real and positive.
void normalize_column_phases(ComplexMatrix& m);

}  // namespace mubqpd
