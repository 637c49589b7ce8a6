#pragma once

#include "mubqpd/numerics.hpp"

namespace mubqpd {

/// <j1 m1; j2 m2 | J M> in the Condon-Shortley convention. Angular momenta
/// are passed doubled (2j, 2m) so half-integers stay exact. Returns 0 for
/// combinations that violate the triangle or projection rules.
double clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2, int two_j, int two_m);

/// C(j k j; m 0 m). Throws InvalidQuantumNumbers unless 2j is a
/// non-negative integer, 1 <= k <= 2j, |m| <= j and j - m is an integer.
double clebsch_gordan_q0(double j, int k, double m);

struct TensorOperator {
  double j = 0.0;
  int k = 0;
  ComplexMatrix matrix;  // diagonal, rows indexed m = j, j-1, ..., -j
};

/// tau^k_0 with entries sqrt(2k+1) C(j k j; m 0 m); Tr(tau^k_0 tau^k'_0) = (2j+1) delta.
TensorOperator tensor_diag(double j, int k);

}  // namespace mubqpd
