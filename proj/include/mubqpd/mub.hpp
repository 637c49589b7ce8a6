#pragma once

#include <span>
#include <vector>

#include "mubqpd/config.hpp"
#include "mubqpd/numerics.hpp"

namespace mubqpd {

/// Outcome tuples: `alphabet[k]` is the simultaneous eigenvalue tuple of a
/// commuting set on its k-th joint eigenvector.
using Alphabet = std::vector<std::vector<double>>;

/// A complete set of n + 1 mutually unbiased bases. `bases[0]` is the
/// canonical basis; the columns of each basis matrix are its vectors.
/// `unitaries[i]` is bases[i]^dagger, so U_1 = I and conjugating a diagonal
/// operator D as U_i^dagger D U_i makes it diagonal in basis i.
struct MubFamily {
  int dim = 0;
  std::vector<ComplexMatrix> bases;
  std::vector<ComplexMatrix> unitaries;
};

/// Unordered set of unit vectors compared up to per-vector phase.
struct RaySet {
  int dim = 0;
  std::vector<ComplexVector> rays;
};

bool is_prime(int n) noexcept;
/// n = 2, odd primes up to 13, and n = 4.
bool is_supported_dimension(int n) noexcept;

/// Throws UnsupportedDimension.
MubFamily build_mub(int n);

/// 1-based: basis_unitary(f, 1) is the identity. Throws IndexOutOfRange.
const ComplexMatrix& basis_unitary(const MubFamily& f, int i);

/// max over cross-basis column pairs of | |<u|v>|^2 - 1/n |.
double verify_unbiased(const MubFamily& f);

RaySet ray_set(const ComplexMatrix& basis);
/// Largest 1 - |<u|v>|^2 over a greedy maximum-overlap pairing of the rays.
/// Returns 1 when the sets have different sizes.
double ray_set_distance(const RaySet& a, const RaySet& b);
bool rays_equal(const RaySet& a, const RaySet& b, const Tolerances& tol = kTolerances);

struct TwistCheck {
  bool ok = false;
  double residual_third = 0.0;   // basis 2 -> basis 3 at t = 2 pi / 3
  double residual_fourth = 0.0;  // basis 2 -> basis 4 at t = 4 pi / 3
};

/// Ray-set distance between exp(-i S_z^2 t) applied to basis 2 and basis
/// `target` (1-based). n = 3 only.
double twist_residual(const MubFamily& f, double t, int target);
/// One-axis twisting check for spin 1. Throws UnsupportedDimension for n != 3.
TwistCheck twist_map_check(const MubFamily& f, const Tolerances& tol = kTolerances);

/// Joint eigenbasis of a commuting Hermitian set, columns ordered so that
/// column k carries the eigenvalue tuple `alphabet[k]`. Throws BadInput if
/// some eigenvector's tuple is not in the alphabet (to 1e-8).
ComplexMatrix joint_eigenbasis(std::span<const ComplexMatrix> commuting_set, const Alphabet& alphabet);

}  // namespace mubqpd
