#pragma once

#include <cstddef>
#include <vector>

#include "mubqpd/config.hpp"
#include "mubqpd/mub.hpp"
#include "mubqpd/numerics.hpp"

namespace mubqpd {

/// n^2 - 1 orthonormal (Tr(O_i O_j) = n delta_ij) traceless Hermitian
/// operators split into n + 1 commuting sets of n - 1.
///
/// `eigenbases[i]` is the joint eigenbasis of set i with column k carrying
/// outcome tuple `alphabet[k]`; it is what the marginal, sampling and
/// projector code use. Operators are addressed flat as i * (n - 1) + k,
/// matching the Bloch vector layout.
struct CscoBasis {
  int dim = 0;
  std::vector<std::vector<ComplexMatrix>> sets;
  Alphabet alphabet;
  std::vector<ComplexMatrix> eigenbases;

  std::size_t set_count() const noexcept { return sets.size(); }
  std::size_t set_size() const noexcept { return sets.empty() ? 0 : sets.front().size(); }
  std::size_t operator_count() const noexcept { return set_count() * set_size(); }
  const ComplexMatrix& op(std::size_t flat) const { return sets[flat / set_size()][flat % set_size()]; }
  /// |v><v| for outcome k of set i.
  ComplexMatrix projector(std::size_t set, std::size_t outcome) const;
};

/// Generated basis: set 1 holds tau^k_0 (k = 1..n-1, ascending rank), set i
/// is U_i^dagger (set 1) U_i. Throws UnsupportedDimension.
CscoBasis build_csco(int n);

/// The published operator matrices for n = 2, 3, 4, verbatim.
CscoBasis paper_fixture(int n);

/// Assembles a basis from commuting sets: extracts the alphabet from the
/// first set (its diagonal when diagonal, else its joint spectrum sorted
/// descending) and computes every set's ordered joint eigenbasis.
CscoBasis make_basis(std::vector<std::vector<ComplexMatrix>> sets);

const Alphabet& outcome_alphabet(const CscoBasis& b);

/// Worst violation of: sum of tuples = 0, |z|^2 = n - 1, z.z' = -1.
double alphabet_defect(const Alphabet& alphabet);

struct CscoValidation {
  double orthonormality = 0.0;  // max |Tr(O_i^dagger O_j) - n delta_ij|
  double hermiticity = 0.0;
  double trace = 0.0;           // max |Tr O|
  double commutator = 0.0;      // max intra-set ||[O_a, O_b]||_F
  double ray_mismatch = 0.0;    // max over sets of ray-set distance to the aligned MUB basis
  std::vector<int> alignment;   // set i <-> basis alignment[i] (0-based)
  std::vector<std::vector<double>> spectra;  // per flat operator, ascending
  bool pass = false;
};

/// Throws DimMismatch.
CscoValidation validate_csco(const CscoBasis& b, const MubFamily& f, const Tolerances& tol = kTolerances);

/// For each set of `a`, the index of the set of `b` whose joint eigenbasis
/// is closest as a ray set (greedy, one-to-one).
std::vector<int> align_sets(const CscoBasis& a, const CscoBasis& b);

/// Largest Frobenius residual left after projecting each operator of `a`
/// onto the span of its aligned set in `b`.
double span_residual(const CscoBasis& a, const CscoBasis& b);

}  // namespace mubqpd
