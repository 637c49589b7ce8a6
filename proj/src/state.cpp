#include "mubqpd/state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mubqpd/error.hpp"
#include "mubqpd/rng.hpp"

namespace mubqpd {

double BlochState::norm_squared() const {
  double acc = 0.0;
  for (double x : theta) acc += x * x;
  return acc;
}

namespace {

void require_match(const BlochState& s, const CscoBasis& b) {
  if (s.dim != b.dim || s.theta.size() != b.operator_count()) {
    throw Error(ErrorCode::DimMismatch, "Bloch vector of length " + std::to_string(s.theta.size()) +
                                            " for basis of dim " + std::to_string(b.dim));
  }
}

}  // namespace

DensityMatrix make_density(ComplexMatrix m, const Tolerances& tol) {
  if (hermiticity_defect(m) > tol.hermitian) throw Error(ErrorCode::NonHermitianInput, "density matrix");
  DensityMatrix rho;
  rho.min_eigenvalue = hermitian_eig(m, tol).eigenvalues.front();
  rho.matrix = std::move(m);
  return rho;
}

DensityMatrix density_from_bloch(const BlochState& s, const CscoBasis& b, const Tolerances& tol) {
  require_match(s, b);
  const double r2 = s.norm_squared();
  if (r2 > b.dim - 1.0 + tol.ball) {
    throw Error(ErrorCode::BallViolation,
                "|theta|^2 = " + std::to_string(r2) + " exceeds n - 1 = " + std::to_string(b.dim - 1));
  }
  ComplexMatrix m = ComplexMatrix::identity(static_cast<std::size_t>(b.dim));
  for (std::size_t j = 0; j < s.theta.size(); ++j) {
    if (s.theta[j] != 0.0) m += s.theta[j] * b.op(j);
  }
  m *= Complex(1.0 / b.dim, 0.0);
  return make_density(std::move(m), tol);
}

BlochState bloch_from_density(const ComplexMatrix& rho, const CscoBasis& b, const Tolerances& tol) {
  if (static_cast<int>(rho.dim()) != b.dim) throw Error(ErrorCode::DimMismatch, "bloch_from_density");
  if (hermiticity_defect(rho) > tol.hermitian) throw Error(ErrorCode::NonHermitianInput, "bloch_from_density");
  BlochState s;
  s.dim = b.dim;
  s.theta.resize(b.operator_count());
  for (std::size_t j = 0; j < s.theta.size(); ++j) {
    // Tr(rho O) = Tr(rho^dagger O) for Hermitian rho.
    const Complex t = frobenius_inner(rho, b.op(j));
    if (std::abs(t.imag()) > tol.imaginary_residue * std::max(1.0, std::abs(t.real()))) {
      throw Error(ErrorCode::NonHermitianInput, "Tr(rho O) has an imaginary part");
    }
    s.theta[j] = t.real();
  }
  return s;
}

double purity(const ComplexMatrix& rho) {
  // Tr(rho^2) = Tr(rho^dagger rho) for Hermitian rho.
  return frobenius_inner(rho, rho).real();
}

DensityMatrix random_state(int n, StateKind kind, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::UnsupportedDimension, "random_state");
  CounterRng rng(seed);
  const auto dim = static_cast<std::size_t>(n);
  if (kind == StateKind::pure) {
    ComplexVector v(dim);
    for (auto& z : v) {
      const auto [re, im] = rng.gaussian_pair();
      z = Complex(re, im);
    }
    const double len = norm(v);
    for (auto& z : v) z /= len;
    ComplexMatrix m = outer(v, v);
    DensityMatrix rho;
    rho.min_eigenvalue = hermitian_eig(m).eigenvalues.front();
    rho.matrix = std::move(m);
    return rho;
  }
  ComplexMatrix g(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      const auto [re, im] = rng.gaussian_pair();
      g(i, j) = Complex(re, im);
    }
  ComplexMatrix m = g * g.adjoint();
  m *= Complex(1.0 / m.trace().real(), 0.0);
  // Exact Hermitian symmetry; the product leaves ~1e-17 asymmetry.
  for (std::size_t i = 0; i < dim; ++i) {
    m(i, i) = Complex(m(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < dim; ++j) m(j, i) = std::conj(m(i, j));
  }
  return make_density(std::move(m));
}

std::vector<double> probability_coordinates(const BlochState& s, const CscoBasis& b, const MubFamily& f) {
  require_match(s, b);
  if (f.dim != b.dim) throw Error(ErrorCode::DimMismatch, "MUB family dimension");
  // rho need not be positive here; evaluate it without the ball check.
  ComplexMatrix rho = ComplexMatrix::identity(static_cast<std::size_t>(b.dim));
  for (std::size_t j = 0; j < s.theta.size(); ++j) rho += s.theta[j] * b.op(j);
  rho *= Complex(1.0 / b.dim, 0.0);

  std::vector<double> p;
  p.reserve(f.bases.size() * static_cast<std::size_t>(f.dim));
  for (const auto& basis : f.bases)
    for (std::size_t c = 0; c < basis.dim(); ++c) p.push_back(expectation(rho, basis.column(c)).real());
  return p;
}

double hamiltonian_expectation(std::span<const double> h, const BlochState& s, std::size_t set) {
  const auto n = static_cast<std::size_t>(s.dim);
  if (h.size() != n) {
    throw Error(ErrorCode::DimMismatch, "need " + std::to_string(n) + " Hamiltonian coefficients");
  }
  if (set > n) throw Error(ErrorCode::DimMismatch, "set index out of range");
  const auto blk = s.block(set);
  double e = h[0];
  for (std::size_t k = 0; k < blk.size(); ++k) e += h[k + 1] * blk[k];
  return e;
}

}  // namespace mubqpd
