#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mubqpd/mub.hpp"

// Data-parallel inner loops. Each OpenMP kernel in mubqpd::kernels has a
// plain-loop twin in mubqpd::kernels::serial that the tests compare against
// bit for bit and the benchmark times it against.
namespace mubqpd::kernels {

/// Table over outcome tuples (k_1, ..., k_sets), k_1 most significant:
///   values[idx] = prefactor * (1 + dots[0][k_1] + ... + dots[sets-1][k_sets])
/// where dots is row-major sets x n.
std::vector<double> qpd_values(std::span<const double> dots, int n, int sets, double prefactor);

/// margin[p] = 1 + sum_i min_k dots_p[i][k] for each point p, where
/// dots_p[i][k] = alphabet[k] . block_i(points[p]).
std::vector<double> membership_margins(std::span<const std::vector<double>> points, const Alphabet& alphabet);

/// Vertex-facet incidence for the inequalities 1 + sum_i z_{k_i} . theta_i >= 0.
struct FacetScan {
  std::vector<std::uint64_t> tight_mask;  // bit v set when vertex v is tight on the facet
  std::vector<int> affine_rank;           // affine rank of the tight vertices
};

FacetScan facet_scan(const Alphabet& alphabet, std::span<const std::vector<double>> vertices, double tight_tol,
                     double rank_tol);

/// For vertex pairs (u < v) in lexicographic order, 1 when the vertices on
/// every facet containing both u and v are exactly {u, v}.
std::vector<char> edge_scan(std::span<const std::uint64_t> tight_mask, std::size_t vertex_count);

/// Rank of a dense real matrix (rows x cols, row-major) by Gaussian
/// elimination with partial pivoting.
int matrix_rank(std::vector<double> a, std::size_t rows, std::size_t cols, double tol);

namespace serial {

std::vector<double> qpd_values(std::span<const double> dots, int n, int sets, double prefactor);
std::vector<double> membership_margins(std::span<const std::vector<double>> points, const Alphabet& alphabet);
FacetScan facet_scan(const Alphabet& alphabet, std::span<const std::vector<double>> vertices, double tight_tol,
                     double rank_tol);
std::vector<char> edge_scan(std::span<const std::uint64_t> tight_mask, std::size_t vertex_count);

}  // namespace serial

}  // namespace mubqpd::kernels
