#pragma once

namespace mubqpd {

/// Numerical thresholds shared by every module. Functions that accept a
/// `Tolerances` default to `kTolerances`.
struct Tolerances {
  double hermitian = 1e-10;        // max |M - M^dagger| entry accepted as Hermitian
  double eig_cluster_gap = 1e-9;   // relative gap separating eigenvalue clusters
  int eig_max_sweeps = 60;         // QL iterations allowed per eigenvalue
  double unitary = 1e-10;
  double unbiased = 1e-10;
  double ray = 1e-10;              // |overlap|^2 deficit for ray equality
  double orthonormality = 1e-10;
  double traceless = 1e-12;
  double commutator = 1e-10;
  double validation = 1e-9;        // pass threshold for validate_csco
  double ball = 1e-12;             // slack on |theta|^2 <= n - 1
  double imaginary_residue = 1e-12;
  double boundary_band = 1e-12;    // |margin| below this is "boundary"
  double probability_sum = 1e-10;
  double lp_pivot = 1e-9;
  double rank = 1e-9;
  double oracle = 1e-8;            // MH-Fourier strict threshold
};

inline constexpr Tolerances kTolerances{};

}  // namespace mubqpd
