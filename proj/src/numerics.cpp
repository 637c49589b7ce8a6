#include "mubqpd/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "mubqpd/error.hpp"

namespace mubqpd {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidQuantumNumbers: return "InvalidQuantumNumbers";
    case ErrorCode::BallViolation: return "BallViolation";
    case ErrorCode::NonHermitianInput: return "NonHermitianInput";
    case ErrorCode::EmptySubset: return "EmptySubset";
    case ErrorCode::LpUnbounded: return "LpUnbounded";
    case ErrorCode::NegativeProbability: return "NegativeProbability";
    case ErrorCode::EmptyRecord: return "EmptyRecord";
    case ErrorCode::BadInput: return "BadInput";
  }
  return "Unknown";
}

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimMismatch, std::string(what) + ": " + std::to_string(a.dim()) +
                                            " vs " + std::to_string(b.dim()));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), data_(std::move(entries)) {
  if (data_.size() != dim_ * dim_) {
    throw Error(ErrorCode::BadInput, "matrix of dim " + std::to_string(dim_) + " needs " +
                                         std::to_string(dim_ * dim_) + " entries, got " +
                                         std::to_string(data_.size()));
  }
  for (const auto& z : data_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorCode::BadInput, "matrix entry is not finite");
    }
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
  ComplexMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::from_columns(const std::vector<ComplexVector>& columns) {
  const std::size_t n = columns.size();
  ComplexMatrix m(n);
  for (std::size_t c = 0; c < n; ++c) {
    if (columns[c].size() != n) throw Error(ErrorCode::DimMismatch, "column length");
    for (std::size_t r = 0; r < n; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

ComplexVector ComplexMatrix::column(std::size_t col) const {
  ComplexVector v(dim_);
  for (std::size_t r = 0; r < dim_; ++r) v[r] = (*this)(r, col);
  return v;
}

ComplexVector ComplexMatrix::row(std::size_t r) const {
  return ComplexVector(data_.begin() + static_cast<std::ptrdiff_t>(r * dim_),
                       data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * dim_));
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require_same_dim(*this, rhs, "operator+");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require_same_dim(*this, rhs, "operator-");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator*(Complex scale, ComplexMatrix m) { return m *= scale; }
ComplexMatrix operator*(double scale, ComplexMatrix m) { return m *= Complex(scale, 0.0); }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  require_same_dim(lhs, rhs, "operator*");
  const std::size_t n = lhs.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex a = lhs(i, k);
      if (a == Complex(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

ComplexVector operator*(const ComplexMatrix& m, const ComplexVector& v) {
  if (m.dim() != v.size()) throw Error(ErrorCode::DimMismatch, "matrix-vector product");
  ComplexVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

Complex frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "frobenius_inner");
  Complex acc = 0.0;
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) acc += std::conj(ea[k]) * eb[k];
  return acc;
}

double frobenius_norm(const ComplexMatrix& m) {
  double acc = 0.0;
  for (const auto& z : m.entries()) acc += std::norm(z);
  return std::sqrt(acc);
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "max_abs_diff");
  double worst = 0.0;
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) worst = std::max(worst, std::abs(ea[k] - eb[k]));
  return worst;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

double hermiticity_defect(const ComplexMatrix& m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = i; j < m.dim(); ++j)
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  return worst;
}

double unitarity_defect(const ComplexMatrix& u) {
  return max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.dim()));
}

Complex inner(const ComplexVector& u, const ComplexVector& v) {
  if (u.size() != v.size()) throw Error(ErrorCode::DimMismatch, "inner product");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += std::conj(u[i]) * v[i];
  return acc;
}

double norm(const ComplexVector& v) { return std::sqrt(std::real(inner(v, v))); }

ComplexMatrix outer(const ComplexVector& u, const ComplexVector& v) {
  if (u.size() != v.size()) throw Error(ErrorCode::DimMismatch, "outer product");
  ComplexMatrix m(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * std::conj(v[j]);
  return m;
}

Complex expectation(const ComplexMatrix& m, const ComplexVector& v) { return inner(v, m * v); }

namespace {

// Householder reduction A = Q T Q^dagger with T Hermitian tridiagonal.
// On return `a` holds T and `q` the accumulated reflections.
void householder_tridiagonalize(ComplexMatrix& a, ComplexMatrix& q) {
  const std::size_t n = a.dim();
  q = ComplexMatrix::identity(n);
  if (n < 3) return;
  ComplexVector v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double xnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) xnorm2 += std::norm(a(i, k));
    double tail2 = xnorm2 - std::norm(a(k + 1, k));
    if (tail2 <= 0.0) continue;
    const double xnorm = std::sqrt(xnorm2);
    const Complex x0 = a(k + 1, k);
    const Complex phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex(1.0, 0.0);
    const Complex alpha = -phase * xnorm;

    std::fill(v.begin(), v.end(), Complex(0.0, 0.0));
    v[k + 1] = x0 - alpha;
    for (std::size_t i = k + 2; i < n; ++i) v[i] = a(i, k);
    const double vnorm = norm(v);
    for (auto& z : v) z /= vnorm;

    // A <- H A H with H = I - 2 v v^dagger; Q <- Q H.
    // w = A v, then A' = A - 2 v w^dagger - 2 w v^dagger + 4 (v^dagger w) v v^dagger.
    ComplexVector w = a * v;
    const Complex vw = inner(v, w);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) += -2.0 * v[i] * std::conj(w[j]) - 2.0 * w[i] * std::conj(v[j]) +
                   4.0 * vw * v[i] * std::conj(v[j]);
      }
    ComplexVector qv = q * v;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) q(i, j) -= 2.0 * qv[i] * std::conj(v[j]);
  }
}

// Implicit QL with Wilkinson-style shifts on a real symmetric tridiagonal
// matrix (EISPACK tql2). `d` diagonal, `e[i]` couples i and i+1.
// `z` accumulates the rotations (row-major n x n, real).
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z,
                    int max_sweeps) {
  const std::size_t n = d.size();
  if (n == 0) return;
  e.resize(n, 0.0);
  e[n - 1] = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();
  double f = 0.0;
  double tst1 = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n - 1 && std::abs(e[m]) > eps * tst1) ++m;
    if (m > l) {
      int iter = 0;
      do {
        if (++iter > max_sweeps) {
          throw Error(ErrorCode::NoConvergence,
                      "tridiagonal QL did not converge for eigenvalue " + std::to_string(l));
        }
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (std::size_t ii = m; ii-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[ii];
          h = c * p;
          r = std::hypot(p, e[ii]);
          e[ii + 1] = s * r;
          s = e[ii] / r;
          c = p / r;
          p = c * d[ii] - s * g;
          d[ii + 1] = h + s * (c * g + s * d[ii]);
          for (std::size_t k = 0; k < n; ++k) {
            h = z[k * n + ii + 1];
            z[k * n + ii + 1] = s * z[k * n + ii] + c * h;
            z[k * n + ii] = c * z[k * n + ii] - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
}

}  // namespace

EigenSystem hermitian_eig(const ComplexMatrix& m, const Tolerances& tol) {
  const std::size_t n = m.dim();
  if (n == 0) throw Error(ErrorCode::BadInput, "empty matrix");
  const double defect = hermiticity_defect(m);
  if (defect > tol.hermitian) {
    throw Error(ErrorCode::NotHermitian, "max |M - M^dagger| = " + std::to_string(defect));
  }

  // Symmetrise so that roundoff in the input does not leak into T.
  ComplexMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));

  ComplexMatrix q;
  householder_tridiagonalize(a, q);

  // Rotate the complex sub-diagonal onto the positive reals:
  // T' = D^dagger T D with D = diag(phase_0, ..., phase_{n-1}).
  ComplexVector phase(n, Complex(1.0, 0.0));
  std::vector<double> d(n), e(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) d[k] = a(k, k).real();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const Complex sub = a(k + 1, k);
    const double mag = std::abs(sub);
    phase[k + 1] = mag > 0.0 ? phase[k] * sub / mag : phase[k];
    e[k] = mag;
  }

  std::vector<double> z(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) z[i * n + i] = 1.0;
  tridiagonal_ql(d, e, z, tol.eig_max_sweeps);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });

  EigenSystem out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n);
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t src = order[c];
    out.eigenvalues[c] = d[src];
    // v = Q D z_src
    for (std::size_t i = 0; i < n; ++i) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += q(i, k) * phase[k] * z[k * n + src];
      out.eigenvectors(i, c) = acc;
    }
  }
  return out;
}

std::vector<std::vector<std::size_t>> eigenvalue_clusters(std::span<const double> eigenvalues,
                                                          double rel_gap) {
  std::vector<std::vector<std::size_t>> clusters;
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    if (!clusters.empty()) {
      const double prev = eigenvalues[clusters.back().back()];
      const double scale = std::max({1.0, std::abs(prev), std::abs(eigenvalues[i])});
      if (eigenvalues[i] - prev <= rel_gap * scale) {
        clusters.back().push_back(i);
        continue;
      }
    }
    clusters.push_back({i});
  }
  return clusters;
}

ComplexMatrix unitary_exp(const EigenSystem& eig, double s) {
  const std::size_t n = eig.eigenvalues.size();
  const ComplexMatrix& v = eig.eigenvectors;
  ComplexMatrix out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex ph = std::polar(1.0, s * eig.eigenvalues[k]);
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = v(i, k) * ph;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(v(j, k));
    }
  }
  return out;
}

ComplexMatrix unitary_exp(const ComplexMatrix& m, double s, const Tolerances& tol) {
  if (s == 0.0) {
    // Still validate the precondition.
    if (hermiticity_defect(m) > tol.hermitian) throw Error(ErrorCode::NotHermitian, "unitary_exp");
    return ComplexMatrix::identity(m.dim());
  }
  return unitary_exp(hermitian_eig(m, tol), s);
}

void normalize_column_phases(ComplexMatrix& m) {
  const std::size_t n = m.dim();
  for (std::size_t c = 0; c < n; ++c) {
    double biggest = 0.0;
    for (std::size_t r = 0; r < n; ++r) biggest = std::max(biggest, std::abs(m(r, c)));
    for (std::size_t r = 0; r < n; ++r) {
      const Complex z = m(r, c);
      if (std::abs(z) > 1e-6 * biggest) {
        const Complex ph = std::conj(z) / std::abs(z);
        for (std::size_t k = 0; k < n; ++k) m(k, c) *= ph;
        break;
      }
    }
  }
}

}  // namespace mubqpd
