#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mubqpd/config.hpp"
#include "mubqpd/csco.hpp"
#include "mubqpd/mub.hpp"
#include "mubqpd/numerics.hpp"

namespace mubqpd {

/// Bloch coordinates theta_j = Tr(rho O_j) in a CscoBasis; block i
/// (components i(n-1) .. (i+1)(n-1)-1) belongs to commuting set i.
struct BlochState {
  int dim = 0;
  std::vector<double> theta;

  std::span<const double> block(std::size_t set) const {
    const std::size_t len = static_cast<std::size_t>(dim - 1);
    return std::span<const double>(theta).subspan(set * len, len);
  }
  double norm_squared() const;
};

struct DensityMatrix {
  ComplexMatrix matrix;
  double min_eigenvalue = 0.0;

  bool is_positive(double tol = 1e-10) const { return min_eigenvalue >= -tol; }
};

/// Wraps a matrix, computing its smallest eigenvalue. Throws NonHermitianInput.
DensityMatrix make_density(ComplexMatrix m, const Tolerances& tol = kTolerances);

/// rho = (I + sum theta_j O_j) / n. Positivity is reported, not enforced.
/// Throws DimMismatch or BallViolation (|theta|^2 > n - 1 + tol.ball).
DensityMatrix density_from_bloch(const BlochState& s, const CscoBasis& b, const Tolerances& tol = kTolerances);

/// Throws DimMismatch or NonHermitianInput.
BlochState bloch_from_density(const ComplexMatrix& rho, const CscoBasis& b, const Tolerances& tol = kTolerances);
inline BlochState bloch_from_density(const DensityMatrix& rho, const CscoBasis& b,
                                     const Tolerances& tol = kTolerances) {
  return bloch_from_density(rho.matrix, b, tol);
}

double purity(const ComplexMatrix& rho);
inline double purity(const DensityMatrix& rho) { return purity(rho.matrix); }

enum class StateKind { pure, mixed };

/// Haar-random pure state or Hilbert-Schmidt mixed state, deterministic per seed.
DensityMatrix random_state(int n, StateKind kind, std::uint64_t seed);

/// p = <v|rho|v> for every vector of every basis of `f`, basis-major.
std::vector<double> probability_coordinates(const BlochState& s, const CscoBasis& b, const MubFamily& f);

/// h[0] + sum_k h[k+1] theta_{set,k}. `set` is 0-based. Throws DimMismatch
/// when h.size() != n or the set index is out of range.
double hamiltonian_expectation(std::span<const double> h, const BlochState& s, std::size_t set);

}  // namespace mubqpd
