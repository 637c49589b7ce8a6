#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mubqpd/config.hpp"
#include "mubqpd/csco.hpp"
#include "mubqpd/parallel.hpp"
#include "mubqpd/state.hpp"

namespace mubqpd {

enum class Region { inside, boundary, outside };

const char* to_string(Region r) noexcept;

struct Membership {
  Region region = Region::inside;
  double margin = 0.0;  // 1 + sum_i min_z z . theta_i
};

/// Throws DimMismatch.
Membership membership(const BlochState& s, const CscoBasis& b, const Tolerances& tol = kTolerances);

struct Vertex {
  std::size_t basis = 0;    // 0-based set index
  std::size_t outcome = 0;  // alphabet index
  BlochState state;
};

/// n(n+1) vertices, basis-major: block `basis` holds alphabet[outcome].
std::vector<Vertex> vertices(const CscoBasis& b);

struct VertexGeometry {
  std::vector<double> norms;
  double expected_norm = 0.0;       // sqrt(n - 1)
  double same_basis_cos = 0.0;      // expected -1/(n-1)
  double cross_basis_dot = 0.0;     // expected 0
  double max_norm_deviation = 0.0;
  double max_same_basis_deviation = 0.0;
  double max_cross_basis_dot = 0.0;
  double max_purity_deviation = 0.0;
};

VertexGeometry vertex_geometry(const CscoBasis& b);

struct PolytopeReport {
  int dim = 0;
  std::size_t vertex_count = 0;
  std::size_t inequality_count = 0;
  std::size_t facet_count = 0;          // facet-defining and pairwise distinct
  std::size_t edge_count_geometric = 0;
  std::size_t edge_count_crossbasis = 0;
  std::size_t same_basis_edges = 0;     // geometric edges joining vertices of one basis
  std::size_t paper_vertices = 0;
  std::size_t paper_facets = 0;
  std::size_t paper_edges = 0;
  std::size_t min_tight_per_facet = 0;
  std::size_t max_tight_per_facet = 0;
  int min_vertex_active_rank = 0;
  std::vector<double> vertex_norms;
  double same_basis_cos = 0.0;
  double cross_basis_dot = 0.0;
  std::vector<std::string> discrepancies;
};

/// Vertex-facet incidence enumeration. Throws UnsupportedDimension unless
/// n is 2, 3 or 4.
PolytopeReport enumerate_faces(const CscoBasis& b, Execution exec = Execution::parallel,
                               const Tolerances& tol = kTolerances);

struct SupportProbe {
  std::size_t directions = 0;
  double max_gap = 0.0;
};

/// LP optimum of c . theta over the inequality region versus the best
/// vertex, for random unit directions c. Throws UnsupportedDimension unless
/// n is 2 or 3, LpUnbounded if the region is not bounded.
SupportProbe support_probe(const CscoBasis& b, std::size_t directions, std::uint64_t seed,
                           Execution exec = Execution::parallel);

/// LP maximum of c . theta over the inequality region.
double support_value(const CscoBasis& b, const std::vector<double>& c);

/// Random points of [-1, 1]^3 on which facet membership and |theta|_1 <= 1
/// disagree outside the boundary band. Throws UnsupportedDimension unless n = 2.
std::size_t octahedron_check(const CscoBasis& b, std::size_t samples, std::uint64_t seed,
                             Execution exec = Execution::parallel, const Tolerances& tol = kTolerances);

}  // namespace mubqpd
