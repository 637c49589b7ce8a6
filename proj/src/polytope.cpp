#include "mubqpd/polytope.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "mubqpd/error.hpp"
#include "mubqpd/kernels.hpp"
#include "mubqpd/rng.hpp"
#include "mubqpd/simplex.hpp"

namespace mubqpd {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

Region classify_margin(double margin, double band) {
  if (margin > band) return Region::inside;
  if (margin >= -band) return Region::boundary;
  return Region::outside;
}

// Normal of inequality `f` (mixed radix, set 0 most significant).
std::vector<double> facet_normal(const Alphabet& alphabet, std::size_t f, std::size_t sets) {
  const std::size_t n = alphabet.size();
  const std::size_t len = n - 1;
  std::vector<double> normal(sets * len);
  for (std::size_t i = sets; i-- > 0;) {
    const auto& z = alphabet[f % n];
    f /= n;
    std::copy(z.begin(), z.end(), normal.begin() + static_cast<std::ptrdiff_t>(i * len));
  }
  return normal;
}

std::string count_note(const char* what, std::size_t measured, const char* formula, std::size_t predicted) {
  return std::string(what) + " " + std::to_string(measured) + " differs from " + formula + " = " +
         std::to_string(predicted);
}

}  // namespace

const char* to_string(Region r) noexcept {
  switch (r) {
    case Region::inside: return "inside";
    case Region::boundary: return "boundary";
    case Region::outside: return "outside";
  }
  return "unknown";
}

Membership membership(const BlochState& s, const CscoBasis& b, const Tolerances& tol) {
  if (s.dim != b.dim || s.theta.size() != b.operator_count()) {
    throw Error(ErrorCode::DimMismatch, "Bloch vector does not match basis");
  }
  Membership m;
  m.margin = 1.0;
  for (std::size_t i = 0; i < b.set_count(); ++i) {
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& z : b.alphabet) lo = std::min(lo, dot(z, s.block(i)));
    m.margin += lo;
  }
  m.region = classify_margin(m.margin, tol.boundary_band);
  return m;
}

std::vector<Vertex> vertices(const CscoBasis& b) {
  const std::size_t n = static_cast<std::size_t>(b.dim);
  const std::size_t len = n - 1;
  std::vector<Vertex> out;
  out.reserve(n * (n + 1));
  for (std::size_t i = 0; i < b.set_count(); ++i)
    for (std::size_t k = 0; k < n; ++k) {
      Vertex v{i, k, BlochState{b.dim, std::vector<double>(b.operator_count(), 0.0)}};
      std::copy(b.alphabet[k].begin(), b.alphabet[k].end(), v.state.theta.begin() + static_cast<std::ptrdiff_t>(i * len));
      out.push_back(std::move(v));
    }
  return out;
}

VertexGeometry vertex_geometry(const CscoBasis& b) {
  const std::vector<Vertex> vs = vertices(b);
  VertexGeometry g;
  g.expected_norm = std::sqrt(static_cast<double>(b.dim - 1));
  g.same_basis_cos = -1.0 / static_cast<double>(b.dim - 1);
  g.cross_basis_dot = 0.0;
  for (const auto& v : vs) {
    const double norm = std::sqrt(v.state.norm_squared());
    g.norms.push_back(norm);
    g.max_norm_deviation = std::max(g.max_norm_deviation, std::abs(norm - g.expected_norm));
    const DensityMatrix rho = density_from_bloch(v.state, b);
    g.max_purity_deviation = std::max(g.max_purity_deviation, std::abs(purity(rho) - 1.0));
  }
  for (std::size_t u = 0; u < vs.size(); ++u)
    for (std::size_t w = u + 1; w < vs.size(); ++w) {
      const double d = dot(vs[u].state.theta, vs[w].state.theta);
      if (vs[u].basis == vs[w].basis) {
        const double cos = d / (g.norms[u] * g.norms[w]);
        g.max_same_basis_deviation = std::max(g.max_same_basis_deviation, std::abs(cos - g.same_basis_cos));
      } else {
        g.max_cross_basis_dot = std::max(g.max_cross_basis_dot, std::abs(d));
      }
    }
  return g;
}

PolytopeReport enumerate_faces(const CscoBasis& b, Execution exec, const Tolerances& tol) {
  const int n = b.dim;
  if (n < 2 || n > 4) {
    throw Error(ErrorCode::UnsupportedDimension, "face enumeration supports n = 2, 3, 4; got " + std::to_string(n));
  }
  const auto nn = static_cast<std::size_t>(n);
  const std::size_t sets = nn + 1;
  const std::size_t dim = nn * nn - 1;

  const std::vector<Vertex> vs = vertices(b);
  std::vector<std::vector<double>> points;
  for (const auto& v : vs) points.push_back(v.state.theta);

  PolytopeReport r;
  r.dim = n;
  r.vertex_count = vs.size();
  r.inequality_count = ipow(nn, sets);
  r.paper_vertices = nn * (nn + 1);
  r.paper_facets = ipow(nn, sets);
  r.paper_edges = nn * nn * nn * (nn + 1) / 2;

  const kernels::FacetScan scan = exec == Execution::parallel
                                      ? kernels::facet_scan(b.alphabet, points, tol.boundary_band * 1e3, tol.rank)
                                      : kernels::serial::facet_scan(b.alphabet, points, tol.boundary_band * 1e3, tol.rank);

  // Facet-defining: tight vertices span an affine hyperplane. Distinct
  // facets have distinct tight sets.
  std::vector<std::uint64_t> facet_masks;
  r.min_tight_per_facet = std::numeric_limits<std::size_t>::max();
  for (std::size_t f = 0; f < scan.tight_mask.size(); ++f) {
    const auto tight = static_cast<std::size_t>(std::popcount(scan.tight_mask[f]));
    r.min_tight_per_facet = std::min(r.min_tight_per_facet, tight);
    r.max_tight_per_facet = std::max(r.max_tight_per_facet, tight);
    if (static_cast<std::size_t>(scan.affine_rank[f]) == dim - 1) facet_masks.push_back(scan.tight_mask[f]);
  }
  std::vector<std::uint64_t> unique_masks = facet_masks;
  std::sort(unique_masks.begin(), unique_masks.end());
  unique_masks.erase(std::unique(unique_masks.begin(), unique_masks.end()), unique_masks.end());
  r.facet_count = unique_masks.size();

  const std::vector<char> edges = exec == Execution::parallel ? kernels::edge_scan(unique_masks, vs.size())
                                                              : kernels::serial::edge_scan(unique_masks, vs.size());
  for (std::size_t u = 0, p = 0; u < vs.size(); ++u)
    for (std::size_t w = u + 1; w < vs.size(); ++w, ++p) {
      if (!edges[p]) continue;
      ++r.edge_count_geometric;
      if (vs[u].basis != vs[w].basis) {
        ++r.edge_count_crossbasis;
      } else {
        ++r.same_basis_edges;
      }
    }

  // Active-constraint rank at each vertex.
  r.min_vertex_active_rank = std::numeric_limits<int>::max();
  std::vector<int> ranks(vs.size());
  for_each_index(vs.size(), exec, [&](std::size_t v) {
    std::vector<double> rows;
    std::size_t count = 0;
    for (std::size_t f = 0; f < scan.tight_mask.size(); ++f) {
      if (!((scan.tight_mask[f] >> v) & 1U)) continue;
      const std::vector<double> normal = facet_normal(b.alphabet, f, sets);
      rows.insert(rows.end(), normal.begin(), normal.end());
      ++count;
    }
    ranks[v] = count == 0 ? 0 : kernels::matrix_rank(std::move(rows), count, dim, tol.rank);
  });
  for (int rk : ranks) r.min_vertex_active_rank = std::min(r.min_vertex_active_rank, rk);

  const VertexGeometry g = vertex_geometry(b);
  r.vertex_norms = g.norms;
  r.same_basis_cos = g.same_basis_cos;
  r.cross_basis_dot = g.max_cross_basis_dot;

  if (r.vertex_count != r.paper_vertices)
    r.discrepancies.push_back(count_note("vertex count", r.vertex_count, "n(n+1)", r.paper_vertices));
  if (r.facet_count != r.paper_facets)
    r.discrepancies.push_back(count_note("facet count", r.facet_count, "n^(n+1)", r.paper_facets));
  if (r.edge_count_geometric != r.paper_edges) {
    r.discrepancies.push_back(count_note("geometric edge count", r.edge_count_geometric, "n^3(n+1)/2", r.paper_edges) +
                              "; " + std::to_string(r.same_basis_edges) +
                              " edges join two vertices of the same basis");
  }
  if (r.edge_count_crossbasis != r.paper_edges)
    r.discrepancies.push_back(count_note("cross-basis edge count", r.edge_count_crossbasis, "n^3(n+1)/2", r.paper_edges));
  return r;
}

double support_value(const CscoBasis& b, const std::vector<double>& c) {
  const std::size_t d = b.operator_count();
  if (c.size() != d) throw Error(ErrorCode::DimMismatch, "direction length");
  const std::size_t n = static_cast<std::size_t>(b.dim);
  const std::size_t sets = b.set_count();
  const std::size_t ineqs = ipow(n, sets);
  const double box = std::sqrt(static_cast<double>(n - 1));

  // theta = u - v with u, v >= 0. Rows: -normal . theta <= 1, then
  // theta_j <= box and -theta_j <= box.
  LpProblem lp;
  lp.cols = 2 * d;
  lp.rows = ineqs + 2 * d;
  lp.a.assign(lp.rows * lp.cols, 0.0);
  lp.b.assign(lp.rows, 0.0);
  for (std::size_t f = 0; f < ineqs; ++f) {
    const std::vector<double> normal = facet_normal(b.alphabet, f, sets);
    for (std::size_t j = 0; j < d; ++j) {
      lp.a[f * lp.cols + j] = -normal[j];
      lp.a[f * lp.cols + d + j] = normal[j];
    }
    lp.b[f] = 1.0;
  }
  for (std::size_t j = 0; j < d; ++j) {
    const std::size_t up = ineqs + 2 * j;
    lp.a[up * lp.cols + j] = 1.0;
    lp.a[up * lp.cols + d + j] = -1.0;
    lp.b[up] = box;
    lp.a[(up + 1) * lp.cols + j] = -1.0;
    lp.a[(up + 1) * lp.cols + d + j] = 1.0;
    lp.b[up + 1] = box;
  }
  lp.c.resize(2 * d);
  for (std::size_t j = 0; j < d; ++j) {
    lp.c[j] = c[j];
    lp.c[d + j] = -c[j];
  }
  return simplex_maximize(lp, kTolerances.lp_pivot).optimum;
}

SupportProbe support_probe(const CscoBasis& b, std::size_t directions, std::uint64_t seed, Execution exec) {
  if (b.dim != 2 && b.dim != 3) {
    throw Error(ErrorCode::UnsupportedDimension, "support probe supports n = 2, 3; got " + std::to_string(b.dim));
  }
  const std::vector<Vertex> vs = vertices(b);
  const std::size_t d = b.operator_count();
  std::vector<double> gaps(directions);
  for_each_index(directions, exec, [&](std::size_t i) {
    CounterRng rng(derive_key(seed, i));
    std::vector<double> c(d);
    for (std::size_t j = 0; j < d; j += 2) {
      const auto [g0, g1] = rng.gaussian_pair();
      c[j] = g0;
      if (j + 1 < d) c[j + 1] = g1;
    }
    const double norm = std::sqrt(dot(c, c));
    for (auto& x : c) x /= norm;
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& v : vs) best = std::max(best, dot(c, v.state.theta));
    gaps[i] = std::abs(support_value(b, c) - best);
  });
  SupportProbe p;
  p.directions = directions;
  for (double g : gaps) p.max_gap = std::max(p.max_gap, g);
  return p;
}

std::size_t octahedron_check(const CscoBasis& b, std::size_t samples, std::uint64_t seed, Execution exec,
                             const Tolerances& tol) {
  if (b.dim != 2) throw Error(ErrorCode::UnsupportedDimension, "octahedron check needs n = 2");
  std::vector<std::vector<double>> points(samples, std::vector<double>(3));
  for (std::size_t i = 0; i < samples; ++i) {
    CounterRng rng(derive_key(seed, i));
    for (auto& x : points[i]) x = rng.uniform(-1.0, 1.0);
  }
  const std::vector<double> margins = exec == Execution::parallel
                                          ? kernels::membership_margins(points, b.alphabet)
                                          : kernels::serial::membership_margins(points, b.alphabet);
  std::size_t disagreements = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double l1 = std::abs(points[i][0]) + std::abs(points[i][1]) + std::abs(points[i][2]);
    const Region facet = classify_margin(margins[i], tol.boundary_band);
    const Region octa = classify_margin(1.0 - l1, tol.boundary_band);
    if (facet == Region::boundary || octa == Region::boundary) continue;
    if (facet != octa) ++disagreements;
  }
  return disagreements;
}

}  // namespace mubqpd
