#include "mubqpd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mubqpd/error.hpp"
#include "mubqpd/parallel.hpp"

namespace mubqpd::kernels {

namespace {

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

void check_dots(std::span<const double> dots, int n, int sets) {
  if (n < 1 || sets < 1 || dots.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(sets)) {
    throw Error(ErrorCode::DimMismatch, "dot table must be sets x n");
  }
}

double dot_block(const std::vector<double>& z, std::span<const double> theta, std::size_t offset) {
  double acc = 0.0;
  for (std::size_t k = 0; k < z.size(); ++k) acc += z[k] * theta[offset + k];
  return acc;
}

void check_vertices(std::size_t count) {
  if (count > 64) throw Error(ErrorCode::UnsupportedDimension, "incidence masks hold at most 64 vertices");
}

}  // namespace

int matrix_rank(std::vector<double> a, std::size_t rows, std::size_t cols, double tol) {
  double scale = 1.0;
  for (double x : a) scale = std::max(scale, std::abs(x));
  const double cutoff = tol * scale;
  int rank = 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pivot = row;
    double best = std::abs(a[row * cols + col]);
    for (std::size_t r = row + 1; r < rows; ++r) {
      const double v = std::abs(a[r * cols + col]);
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best <= cutoff) continue;
    if (pivot != row)
      for (std::size_t c = 0; c < cols; ++c) std::swap(a[row * cols + c], a[pivot * cols + c]);
    for (std::size_t r = row + 1; r < rows; ++r) {
      const double factor = a[r * cols + col] / a[row * cols + col];
      if (factor == 0.0) continue;
      for (std::size_t c = col; c < cols; ++c) a[r * cols + c] -= factor * a[row * cols + c];
    }
    ++row;
    ++rank;
  }
  return rank;
}

std::vector<double> qpd_values(std::span<const double> dots, int n, int sets, double prefactor) {
  check_dots(dots, n, sets);
  const auto nn = static_cast<std::size_t>(n);
  const auto ns = static_cast<std::size_t>(sets);
  const std::size_t prefixes = ipow(nn, ns - 1);
  std::vector<double> values(prefixes * nn);
  const double* last = dots.data() + (ns - 1) * nn;
  for_each_index(prefixes, Execution::parallel, [&](std::size_t p) {
    // Decode the leading digits k_1 .. k_{sets-1} of prefix p.
    std::size_t digits[64];
    std::size_t rest = p;
    for (std::size_t i = ns - 1; i-- > 0;) {
      digits[i] = rest % nn;
      rest /= nn;
    }
    double acc = 1.0;
    for (std::size_t i = 0; i + 1 < ns; ++i) acc += dots[i * nn + digits[i]];
    double* out = values.data() + p * nn;
    for (std::size_t k = 0; k < nn; ++k) out[k] = prefactor * (acc + last[k]);
  });
  return values;
}

std::vector<double> membership_margins(std::span<const std::vector<double>> points, const Alphabet& alphabet) {
  std::vector<double> margins(points.size());
  const std::size_t len = alphabet.empty() ? 0 : alphabet.front().size();
  for_each_index(points.size(), Execution::parallel, [&](std::size_t p) {
    const auto& theta = points[p];
    const std::size_t sets = len == 0 ? 0 : theta.size() / len;
    double margin = 1.0;
    for (std::size_t i = 0; i < sets; ++i) {
      double lo = std::numeric_limits<double>::infinity();
      for (const auto& z : alphabet) lo = std::min(lo, dot_block(z, theta, i * len));
      margin += lo;
    }
    margins[p] = margin;
  });
  return margins;
}

FacetScan facet_scan(const Alphabet& alphabet, std::span<const std::vector<double>> vertices, double tight_tol,
                     double rank_tol) {
  check_vertices(vertices.size());
  const std::size_t n = alphabet.size();
  const std::size_t len = n == 0 ? 0 : alphabet.front().size();
  const std::size_t sets = n + 1;
  const std::size_t dim = sets * len;
  const std::size_t facets = ipow(n, sets);

  // dots[v][i][k] = z_k . block_i(vertex v), so a facet's slack at v is a sum of lookups.
  std::vector<double> dots(vertices.size() * sets * n);
  for (std::size_t v = 0; v < vertices.size(); ++v)
    for (std::size_t i = 0; i < sets; ++i)
      for (std::size_t k = 0; k < n; ++k) dots[(v * sets + i) * n + k] = dot_block(alphabet[k], vertices[v], i * len);

  FacetScan scan;
  scan.tight_mask.resize(facets);
  scan.affine_rank.resize(facets);
  for_each_index(facets, Execution::parallel, [&](std::size_t f) {
    std::size_t digits[64];
    std::size_t rest = f;
    for (std::size_t i = sets; i-- > 0;) {
      digits[i] = rest % n;
      rest /= n;
    }
    std::uint64_t mask = 0;
    std::vector<std::size_t> tight;
    for (std::size_t v = 0; v < vertices.size(); ++v) {
      double slack = 1.0;
      for (std::size_t i = 0; i < sets; ++i) slack += dots[(v * sets + i) * n + digits[i]];
      if (std::abs(slack) <= tight_tol) {
        mask |= std::uint64_t{1} << v;
        tight.push_back(v);
      }
    }
    scan.tight_mask[f] = mask;
    if (tight.size() < 2) {
      scan.affine_rank[f] = 0;
      return;
    }
    std::vector<double> diffs((tight.size() - 1) * dim);
    for (std::size_t r = 1; r < tight.size(); ++r)
      for (std::size_t c = 0; c < dim; ++c)
        diffs[(r - 1) * dim + c] = vertices[tight[r]][c] - vertices[tight[0]][c];
    scan.affine_rank[f] = matrix_rank(std::move(diffs), tight.size() - 1, dim, rank_tol);
  });
  return scan;
}

std::vector<char> edge_scan(std::span<const std::uint64_t> tight_mask, std::size_t vertex_count) {
  check_vertices(vertex_count);
  const std::size_t pairs = vertex_count * (vertex_count - 1) / 2;
  std::vector<std::size_t> first(pairs), second(pairs);
  for (std::size_t u = 0, p = 0; u < vertex_count; ++u)
    for (std::size_t v = u + 1; v < vertex_count; ++v, ++p) {
      first[p] = u;
      second[p] = v;
    }
  std::vector<char> edges(pairs, 0);
  for_each_index(pairs, Execution::parallel, [&](std::size_t p) {
    const std::uint64_t pair_bits = (std::uint64_t{1} << first[p]) | (std::uint64_t{1} << second[p]);
    std::uint64_t common = ~std::uint64_t{0};
    bool any = false;
    for (const std::uint64_t m : tight_mask) {
      if ((m & pair_bits) == pair_bits) {
        common &= m;
        any = true;
      }
    }
    edges[p] = any && common == pair_bits ? 1 : 0;
  });
  return edges;
}

namespace serial {

std::vector<double> qpd_values(std::span<const double> dots, int n, int sets, double prefactor) {
  check_dots(dots, n, sets);
  const auto nn = static_cast<std::size_t>(n);
  const auto ns = static_cast<std::size_t>(sets);
  std::vector<double> values(ipow(nn, ns));
  for (std::size_t idx = 0; idx < values.size(); ++idx) {
    double acc = 1.0;
    std::size_t place = values.size();
    for (std::size_t i = 0; i < ns; ++i) {
      place /= nn;
      acc += dots[i * nn + (idx / place) % nn];
    }
    values[idx] = prefactor * acc;
  }
  return values;
}

std::vector<double> membership_margins(std::span<const std::vector<double>> points, const Alphabet& alphabet) {
  std::vector<double> margins;
  margins.reserve(points.size());
  const std::size_t len = alphabet.empty() ? 0 : alphabet.front().size();
  for (const auto& theta : points) {
    double margin = 1.0;
    for (std::size_t offset = 0; len > 0 && offset + len <= theta.size(); offset += len) {
      double lo = dot_block(alphabet.front(), theta, offset);
      for (std::size_t k = 1; k < alphabet.size(); ++k) lo = std::min(lo, dot_block(alphabet[k], theta, offset));
      margin += lo;
    }
    margins.push_back(margin);
  }
  return margins;
}

FacetScan facet_scan(const Alphabet& alphabet, std::span<const std::vector<double>> vertices, double tight_tol,
                     double rank_tol) {
  check_vertices(vertices.size());
  const std::size_t n = alphabet.size();
  const std::size_t len = n == 0 ? 0 : alphabet.front().size();
  const std::size_t sets = n + 1;
  const std::size_t dim = sets * len;
  FacetScan scan;
  // Odometer over (k_1, ..., k_sets), last digit fastest.
  std::vector<std::size_t> digits(sets, 0);
  for (bool done = false; !done;) {
    std::uint64_t mask = 0;
    std::vector<std::size_t> tight;
    for (std::size_t v = 0; v < vertices.size(); ++v) {
      double slack = 1.0;
      for (std::size_t i = 0; i < sets; ++i) slack += dot_block(alphabet[digits[i]], vertices[v], i * len);
      if (std::abs(slack) <= tight_tol) {
        mask |= std::uint64_t{1} << v;
        tight.push_back(v);
      }
    }
    int rank = 0;
    if (tight.size() >= 2) {
      std::vector<double> diffs;
      for (std::size_t r = 1; r < tight.size(); ++r)
        for (std::size_t c = 0; c < dim; ++c) diffs.push_back(vertices[tight[r]][c] - vertices[tight[0]][c]);
      rank = matrix_rank(std::move(diffs), tight.size() - 1, dim, rank_tol);
    }
    scan.tight_mask.push_back(mask);
    scan.affine_rank.push_back(rank);

    std::size_t pos = sets;
    while (pos > 0) {
      --pos;
      if (++digits[pos] < n) break;
      digits[pos] = 0;
      if (pos == 0) done = true;
    }
  }
  return scan;
}

std::vector<char> edge_scan(std::span<const std::uint64_t> tight_mask, std::size_t vertex_count) {
  check_vertices(vertex_count);
  std::vector<char> edges;
  for (std::size_t u = 0; u < vertex_count; ++u)
    for (std::size_t v = u + 1; v < vertex_count; ++v) {
      // Union of vertices that survive on every facet through u and v.
      std::uint64_t common = ~std::uint64_t{0};
      std::size_t through = 0;
      for (const std::uint64_t m : tight_mask) {
        if (((m >> u) & 1U) && ((m >> v) & 1U)) {
          common &= m;
          ++through;
        }
      }
      const std::uint64_t pair_bits = (std::uint64_t{1} << u) | (std::uint64_t{1} << v);
      edges.push_back(through > 0 && common == pair_bits ? 1 : 0);
    }
  return edges;
}

}  // namespace serial

}  // namespace mubqpd::kernels
