#pragma once

#include <cstddef>
#include <vector>

namespace mubqpd {

struct LpProblem {
  std::size_t rows = 0;        // constraints
  std::size_t cols = 0;        // variables
  std::vector<double> a;       // rows x cols, row-major
  std::vector<double> b;       // right-hand side, must be >= 0
  std::vector<double> c;       // objective coefficients
};

struct LpResult {
  double optimum = 0.0;
  std::vector<double> x;
  std::size_t pivots = 0;
};

/// max c.x subject to A x <= b, x >= 0, with b >= 0 so the slack basis is
/// feasible. Dense tableau, Bland's rule. Throws LpUnbounded, BadInput, or
/// NoConvergence after `max_pivots`.
LpResult simplex_maximize(const LpProblem& lp, double pivot_tol = 1e-9, std::size_t max_pivots = 200000);

}  // namespace mubqpd
