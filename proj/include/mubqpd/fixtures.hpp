#pragma once

#include <vector>

#include "mubqpd/numerics.hpp"

namespace mubqpd::fixtures {

/// Published commuting operator sets, verbatim:
///   n = 2: {sigma_x}, {sigma_y}, {sigma_z}
///   n = 3: {a1, a2}, {a3, a4}, {a5, a6}, {a7, a8}
///   n = 4: {b1, b2, b3}, ..., {b13, b14, b15}
/// Throws UnsupportedDimension for other n.
std::vector<std::vector<ComplexMatrix>> operator_sets(int n);

/// The spin-1 basis-change unitaries U2, U3, U4 (U_i^dagger a_1 U_i etc.).
std::vector<ComplexMatrix> spin1_unitaries();

}  // namespace mubqpd::fixtures
