#include "mubqpd/mub.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mubqpd/error.hpp"
#include "mubqpd/fixtures.hpp"

namespace mubqpd {

bool is_prime(int n) noexcept {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_supported_dimension(int n) noexcept { return n == 2 || n == 4 || (is_prime(n) && n <= 13); }

namespace {

MubFamily finish(int n, std::vector<ComplexMatrix> bases) {
  MubFamily f;
  f.dim = n;
  f.bases = std::move(bases);
  f.unitaries.reserve(f.bases.size());
  for (const auto& b : f.bases) f.unitaries.push_back(b.adjoint());
  return f;
}

std::vector<ComplexMatrix> qubit_bases() {
  const double r = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  return {ComplexMatrix::identity(2), ComplexMatrix(2, {r, r, r, -r}),
          ComplexMatrix(2, {r, r, i * r, -i * r})};
}

// Basis b (b = 0..n-1, stored as basis b + 2) has vectors
//   v_k[c] = omega^{-(b c (c + 1) + k c)} / sqrt(n),  omega = exp(2 pi i / n),
// i.e. omega^{a c^2 + m c} with a = -b, m = -(b + k). For n = 3 this
// reproduces the rows of the published U2, U3, U4 exactly.
std::vector<ComplexMatrix> odd_prime_bases(int n) {
  std::vector<ComplexMatrix> bases{ComplexMatrix::identity(static_cast<std::size_t>(n))};
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  const auto nn = static_cast<long long>(n);
  for (long long b = 0; b < nn; ++b) {
    ComplexMatrix m(static_cast<std::size_t>(n));
    for (long long k = 0; k < nn; ++k)
      for (long long c = 0; c < nn; ++c) {
        const long long e = (b * c * (c + 1) + k * c) % nn;
        m(static_cast<std::size_t>(c), static_cast<std::size_t>(k)) =
            std::polar(amp, -2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(n));
      }
    bases.push_back(std::move(m));
  }
  return bases;
}

std::vector<ComplexMatrix> spin_three_halves_bases() {
  const auto sets = fixtures::operator_sets(4);
  Alphabet alphabet(4, std::vector<double>(3));
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t op = 0; op < 3; ++op) alphabet[k][op] = sets[0][op](k, k).real();
  std::vector<ComplexMatrix> bases{ComplexMatrix::identity(4)};
  for (std::size_t s = 1; s < sets.size(); ++s) bases.push_back(joint_eigenbasis(sets[s], alphabet));
  return bases;
}

}  // namespace

MubFamily build_mub(int n) {
  if (!is_supported_dimension(n)) {
    throw Error(ErrorCode::UnsupportedDimension,
                "no MUB construction for n = " + std::to_string(n) + "; supply a fixture");
  }
  if (n == 2) return finish(n, qubit_bases());
  if (n == 4) return finish(n, spin_three_halves_bases());
  return finish(n, odd_prime_bases(n));
}

const ComplexMatrix& basis_unitary(const MubFamily& f, int i) {
  if (i < 1 || static_cast<std::size_t>(i) > f.unitaries.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "basis index " + std::to_string(i) + " outside 1.." +
                                                std::to_string(f.unitaries.size()));
  }
  return f.unitaries[static_cast<std::size_t>(i - 1)];
}

double verify_unbiased(const MubFamily& f) {
  const double target = 1.0 / static_cast<double>(f.dim);
  double worst = 0.0;
  for (std::size_t a = 0; a < f.bases.size(); ++a)
    for (std::size_t b = a + 1; b < f.bases.size(); ++b) {
      const ComplexMatrix overlap = f.bases[a].adjoint() * f.bases[b];
      for (const auto& z : overlap.entries()) worst = std::max(worst, std::abs(std::norm(z) - target));
    }
  return worst;
}

RaySet ray_set(const ComplexMatrix& basis) {
  RaySet r;
  r.dim = static_cast<int>(basis.dim());
  for (std::size_t c = 0; c < basis.dim(); ++c) r.rays.push_back(basis.column(c));
  return r;
}

double ray_set_distance(const RaySet& a, const RaySet& b) {
  const std::size_t n = a.rays.size();
  if (n != b.rays.size() || a.dim != b.dim) return 1.0;
  std::vector<double> ov(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) ov[i * n + j] = std::norm(inner(a.rays[i], b.rays[j]));
  std::vector<bool> used_a(n, false), used_b(n, false);
  double worst = 0.0;
  for (std::size_t step = 0; step < n; ++step) {
    double best = -1.0;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (used_a[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!used_b[j] && ov[i * n + j] > best) {
          best = ov[i * n + j];
          bi = i;
          bj = j;
        }
      }
    }
    used_a[bi] = used_b[bj] = true;
    worst = std::max(worst, 1.0 - best);
  }
  return worst;
}

bool rays_equal(const RaySet& a, const RaySet& b, const Tolerances& tol) {
  return ray_set_distance(a, b) <= tol.ray;
}

double twist_residual(const MubFamily& f, double t, int target) {
  if (f.dim != 3) throw Error(ErrorCode::UnsupportedDimension, "one-axis twist check needs n = 3");
  if (target < 1 || target > 4) throw Error(ErrorCode::IndexOutOfRange, "twist target basis");
  // exp(-i S_z^2 t) with S_z = diag(1, 0, -1).
  const std::vector<Complex> phases{std::polar(1.0, -t), 1.0, std::polar(1.0, -t)};
  const ComplexMatrix twisted = ComplexMatrix::diagonal(std::span<const Complex>(phases)) * f.bases[1];
  return ray_set_distance(ray_set(twisted), ray_set(f.bases[static_cast<std::size_t>(target - 1)]));
}

TwistCheck twist_map_check(const MubFamily& f, const Tolerances& tol) {
  TwistCheck out;
  out.residual_third = twist_residual(f, 2.0 * std::numbers::pi / 3.0, 3);
  out.residual_fourth = twist_residual(f, 4.0 * std::numbers::pi / 3.0, 4);
  out.ok = out.residual_third <= tol.ray && out.residual_fourth <= tol.ray;
  return out;
}

ComplexMatrix joint_eigenbasis(std::span<const ComplexMatrix> commuting_set, const Alphabet& alphabet) {
  if (commuting_set.empty()) throw Error(ErrorCode::BadInput, "empty commuting set");
  const std::size_t n = commuting_set.front().dim();
  if (alphabet.size() != n) throw Error(ErrorCode::DimMismatch, "alphabet size");

  // A generic real combination separates the joint eigenspaces.
  ComplexMatrix probe(n);
  for (std::size_t k = 0; k < commuting_set.size(); ++k)
    probe += std::sqrt(2.0 + static_cast<double>(k)) * commuting_set[k];
  const EigenSystem eig = hermitian_eig(probe);

  std::vector<ComplexVector> columns(n);
  std::vector<bool> filled(n, false);
  for (std::size_t c = 0; c < n; ++c) {
    const ComplexVector v = eig.eigenvectors.column(c);
    std::vector<double> tuple(commuting_set.size());
    for (std::size_t k = 0; k < commuting_set.size(); ++k) tuple[k] = expectation(commuting_set[k], v).real();
    std::size_t best = n;
    double best_dist = 1e-8;
    for (std::size_t a = 0; a < n; ++a) {
      double d = 0.0;
      for (std::size_t k = 0; k < tuple.size(); ++k) d = std::max(d, std::abs(tuple[k] - alphabet[a][k]));
      if (d <= best_dist) {
        best_dist = d;
        best = a;
      }
    }
    if (best == n || filled[best]) {
      throw Error(ErrorCode::BadInput, "joint eigenvector tuple does not match the outcome alphabet");
    }
    filled[best] = true;
    columns[best] = v;
  }
  ComplexMatrix basis = ComplexMatrix::from_columns(columns);
  normalize_column_phases(basis);
  return basis;
}

}  // namespace mubqpd
