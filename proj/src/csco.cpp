#include "mubqpd/csco.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mubqpd/clebsch.hpp"
#include "mubqpd/error.hpp"
#include "mubqpd/fixtures.hpp"

namespace mubqpd {

namespace {

bool is_diagonal(const ComplexMatrix& m) {
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      if (i != j && std::abs(m(i, j)) > 1e-14) return false;
  return true;
}

ComplexMatrix probe_combination(const std::vector<ComplexMatrix>& set) {
  ComplexMatrix probe(set.front().dim());
  for (std::size_t k = 0; k < set.size(); ++k) probe += std::sqrt(2.0 + static_cast<double>(k)) * set[k];
  return probe;
}

Alphabet extract_alphabet(const std::vector<ComplexMatrix>& set) {
  const std::size_t n = set.front().dim();
  Alphabet alphabet(n, std::vector<double>(set.size()));
  if (std::all_of(set.begin(), set.end(), is_diagonal)) {
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t k = 0; k < set.size(); ++k) alphabet[m][k] = set[k](m, m).real();
    return alphabet;
  }
  const EigenSystem eig = hermitian_eig(probe_combination(set));
  for (std::size_t c = 0; c < n; ++c) {
    const ComplexVector v = eig.eigenvectors.column(c);
    for (std::size_t k = 0; k < set.size(); ++k) alphabet[c][k] = expectation(set[k], v).real();
  }
  std::sort(alphabet.begin(), alphabet.end(), std::greater<>());
  return alphabet;
}

}  // namespace

ComplexMatrix CscoBasis::projector(std::size_t set, std::size_t outcome) const {
  const ComplexVector v = eigenbases.at(set).column(outcome);
  return outer(v, v);
}

CscoBasis make_basis(std::vector<std::vector<ComplexMatrix>> sets) {
  if (sets.empty() || sets.front().empty()) throw Error(ErrorCode::BadInput, "empty operator sets");
  CscoBasis b;
  b.dim = static_cast<int>(sets.front().front().dim());
  b.alphabet = extract_alphabet(sets.front());
  b.sets = std::move(sets);
  for (const auto& set : b.sets) {
    if (set.size() != b.set_size()) throw Error(ErrorCode::BadInput, "ragged operator sets");
    for (const auto& op : set)
      if (static_cast<int>(op.dim()) != b.dim) throw Error(ErrorCode::DimMismatch, "operator dimension");
    b.eigenbases.push_back(joint_eigenbasis(set, b.alphabet));
  }
  return b;
}

CscoBasis build_csco(int n) {
  const MubFamily f = build_mub(n);
  const double j = 0.5 * (n - 1);
  std::vector<ComplexMatrix> diagonal_set;
  for (int k = 1; k <= n - 1; ++k) diagonal_set.push_back(tensor_diag(j, k).matrix);

  CscoBasis b;
  b.dim = n;
  b.alphabet = extract_alphabet(diagonal_set);
  for (int i = 1; i <= n + 1; ++i) {
    const ComplexMatrix& u = basis_unitary(f, i);
    const ComplexMatrix u_dag = u.adjoint();
    std::vector<ComplexMatrix> set;
    for (const auto& d : diagonal_set) set.push_back(u_dag * d * u);
    b.sets.push_back(std::move(set));
    // Column k of basis i is an eigenvector of U^dagger D U with eigenvalue D_kk.
    b.eigenbases.push_back(f.bases[static_cast<std::size_t>(i - 1)]);
  }
  return b;
}

CscoBasis paper_fixture(int n) { return make_basis(fixtures::operator_sets(n)); }

const Alphabet& outcome_alphabet(const CscoBasis& b) { return b.alphabet; }

double alphabet_defect(const Alphabet& alphabet) {
  if (alphabet.empty()) return 0.0;
  const auto n = static_cast<double>(alphabet.size());
  const std::size_t len = alphabet.front().size();
  double worst = 0.0;
  for (std::size_t k = 0; k < len; ++k) {
    double s = 0.0;
    for (const auto& z : alphabet) s += z[k];
    worst = std::max(worst, std::abs(s));
  }
  for (std::size_t a = 0; a < alphabet.size(); ++a)
    for (std::size_t b = a; b < alphabet.size(); ++b) {
      double dot = 0.0;
      for (std::size_t k = 0; k < len; ++k) dot += alphabet[a][k] * alphabet[b][k];
      const double expected = (a == b) ? n - 1.0 : -1.0;
      worst = std::max(worst, std::abs(dot - expected));
    }
  return worst;
}

CscoValidation validate_csco(const CscoBasis& b, const MubFamily& f, const Tolerances& tol) {
  if (b.dim != f.dim) throw Error(ErrorCode::DimMismatch, "basis and MUB family dimensions differ");
  CscoValidation v;
  const std::size_t count = b.operator_count();
  const auto n = static_cast<double>(b.dim);
  for (std::size_t p = 0; p < count; ++p) {
    const ComplexMatrix& op = b.op(p);
    v.hermiticity = std::max(v.hermiticity, hermiticity_defect(op));
    v.trace = std::max(v.trace, std::abs(op.trace()));
    for (std::size_t q = p; q < count; ++q) {
      const Complex g = frobenius_inner(op, b.op(q));
      v.orthonormality = std::max(v.orthonormality, std::abs(g - Complex(p == q ? n : 0.0, 0.0)));
    }
  }
  for (const auto& set : b.sets)
    for (std::size_t x = 0; x < set.size(); ++x)
      for (std::size_t y = x + 1; y < set.size(); ++y)
        v.commutator = std::max(v.commutator, frobenius_norm(commutator(set[x], set[y])));

  // Eigenvectors of a generic combination stand in for the joint eigenbasis;
  // a non-commuting set shows up as a large mismatch here.
  std::vector<RaySet> set_rays;
  for (const auto& set : b.sets) {
    const ComplexMatrix h = probe_combination(set);
    if (hermiticity_defect(h) > tol.hermitian) {
      set_rays.push_back({});
    } else {
      set_rays.push_back(ray_set(hermitian_eig(h, tol).eigenvectors));
    }
  }
  std::vector<bool> taken(f.bases.size(), false);
  v.alignment.assign(b.sets.size(), -1);
  for (std::size_t s = 0; s < b.sets.size(); ++s) {
    double best = std::numeric_limits<double>::infinity();
    int best_basis = -1;
    for (std::size_t k = 0; k < f.bases.size(); ++k) {
      if (taken[k]) continue;
      const double d = ray_set_distance(set_rays[s], ray_set(f.bases[k]));
      if (d < best) {
        best = d;
        best_basis = static_cast<int>(k);
      }
    }
    if (best_basis >= 0) taken[static_cast<std::size_t>(best_basis)] = true;
    v.alignment[s] = best_basis;
    v.ray_mismatch = std::max(v.ray_mismatch, best_basis >= 0 ? best : 1.0);
  }

  for (std::size_t p = 0; p < count; ++p) {
    const ComplexMatrix& op = b.op(p);
    v.spectra.push_back(hermiticity_defect(op) <= tol.hermitian ? hermitian_eig(op, tol).eigenvalues
                                                                 : std::vector<double>{});
  }

  const bool aligned = b.sets.size() == f.bases.size() &&
                       std::none_of(v.alignment.begin(), v.alignment.end(), [](int a) { return a < 0; });
  v.pass = aligned && v.orthonormality < tol.validation && v.hermiticity < tol.validation &&
           v.trace < tol.validation && v.commutator < tol.validation && v.ray_mismatch < tol.validation;
  return v;
}

std::vector<int> align_sets(const CscoBasis& a, const CscoBasis& b) {
  std::vector<int> out(a.sets.size(), -1);
  std::vector<bool> taken(b.sets.size(), false);
  for (std::size_t s = 0; s < a.sets.size(); ++s) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < b.sets.size(); ++t) {
      if (taken[t]) continue;
      const double d = ray_set_distance(ray_set(a.eigenbases[s]), ray_set(b.eigenbases[t]));
      if (d < best) {
        best = d;
        out[s] = static_cast<int>(t);
      }
    }
    if (out[s] >= 0) taken[static_cast<std::size_t>(out[s])] = true;
  }
  return out;
}

double span_residual(const CscoBasis& a, const CscoBasis& b) {
  if (a.dim != b.dim) throw Error(ErrorCode::DimMismatch, "span_residual");
  const std::vector<int> alignment = align_sets(a, b);
  const auto n = static_cast<double>(b.dim);
  double worst = 0.0;
  for (std::size_t s = 0; s < a.sets.size(); ++s) {
    if (alignment[s] < 0) return std::numeric_limits<double>::infinity();
    const auto& target = b.sets[static_cast<std::size_t>(alignment[s])];
    for (const auto& op : a.sets[s]) {
      ComplexMatrix residual = op;
      for (const auto& basis_op : target) residual -= (frobenius_inner(basis_op, op) / n) * basis_op;
      worst = std::max(worst, frobenius_norm(residual));
    }
  }
  return worst;
}

}  // namespace mubqpd
