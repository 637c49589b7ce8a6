#include "mubqpd/simplex.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mubqpd/error.hpp"

namespace mubqpd {

LpResult simplex_maximize(const LpProblem& lp, double pivot_tol, std::size_t max_pivots) {
  const std::size_t m = lp.rows;
  const std::size_t n = lp.cols;
  if (lp.a.size() != m * n || lp.b.size() != m || lp.c.size() != n) {
    throw Error(ErrorCode::BadInput, "LP dimensions are inconsistent");
  }
  for (double bi : lp.b)
    if (bi < 0.0) throw Error(ErrorCode::BadInput, "LP right-hand side must be non-negative");

  // Columns: n structural, m slack, then the RHS. Row m is the objective
  // row holding -c, so a negative entry marks an improving column.
  const std::size_t width = n + m + 1;
  std::vector<double> t((m + 1) * width, 0.0);
  auto at = [&](std::size_t r, std::size_t col) -> double& { return t[r * width + col]; };
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j < n; ++j) at(r, j) = lp.a[r * n + j];
    at(r, n + r) = 1.0;
    at(r, width - 1) = lp.b[r];
  }
  for (std::size_t j = 0; j < n; ++j) at(m, j) = -lp.c[j];

  std::vector<std::size_t> basic(m);
  for (std::size_t r = 0; r < m; ++r) basic[r] = n + r;

  LpResult result;
  for (;;) {
    // Bland: lowest-index improving column.
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j) {
      if (at(m, j) < -pivot_tol) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;

    // Minimum ratio; ties go to the lowest basic variable index.
    std::size_t leave = m;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < m; ++r) {
      const double coeff = at(r, enter);
      if (coeff <= pivot_tol) continue;
      const double ratio = at(r, width - 1) / coeff;
      if (ratio < best - 1e-12 || (std::abs(ratio - best) <= 1e-12 && leave < m && basic[r] < basic[leave])) {
        best = ratio;
        leave = r;
      }
    }
    if (leave == m) throw Error(ErrorCode::LpUnbounded, "objective is unbounded along column " + std::to_string(enter));
    if (++result.pivots > max_pivots) throw Error(ErrorCode::NoConvergence, "simplex pivot limit reached");

    const double pivot = at(leave, enter);
    for (std::size_t col = 0; col < width; ++col) at(leave, col) /= pivot;
    for (std::size_t r = 0; r <= m; ++r) {
      if (r == leave) continue;
      const double factor = at(r, enter);
      if (factor == 0.0) continue;
      for (std::size_t col = 0; col < width; ++col) at(r, col) -= factor * at(leave, col);
    }
    basic[leave] = enter;
  }

  result.x.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r)
    if (basic[r] < n) result.x[basic[r]] = at(r, width - 1);
  result.optimum = at(m, width - 1);
  return result;
}

}  // namespace mubqpd
