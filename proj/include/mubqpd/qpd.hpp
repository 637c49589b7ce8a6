#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mubqpd/config.hpp"
#include "mubqpd/csco.hpp"
#include "mubqpd/numerics.hpp"
#include "mubqpd/parallel.hpp"
#include "mubqpd/state.hpp"

namespace mubqpd {

/// Real table over outcome tuples of the sets listed in `subset` (1-based,
/// ascending). Entry order is mixed radix with the first listed set most
/// significant ("k1-major").
struct QpdTable {
  int dim = 0;
  std::vector<int> subset;
  std::vector<double> values;
  Alphabet alphabet;

  std::size_t index(std::span<const std::size_t> outcomes) const;
  std::vector<std::size_t> outcomes(std::size_t index) const;
  double sum() const;
  double min() const;
};

/// Conjugate variables t, laid out like the Bloch vector.
struct FourierPoint {
  std::vector<double> t;
};

/// Full tables are refused above this many entries (n = 7 gives 5.7e6).
inline constexpr std::size_t kMaxTableEntries = std::size_t{1} << 24;

/// p(k_1..k_{n+1}) = (1 + sum_i z_{k_i} . theta_i) / n^{n+1}.
/// Throws DimMismatch, or UnsupportedDimension when the table is too large.
QpdTable qpd_table(const BlochState& s, const CscoBasis& b, Execution exec = Execution::parallel);

/// Closed form restricted to `subset`: (1 + sum_{i in S} z_{k_i} . theta_i) / n^{|S|}.
QpdTable qpd_closed_form(const BlochState& s, const CscoBasis& b, std::vector<int> subset);

/// Sums out every set not in `subset`, which must be a nonempty subset of
/// t.subset. Throws EmptySubset or IndexOutOfRange.
QpdTable qpd_marginal(const QpdTable& t, std::vector<int> subset);

/// Sorted, de-duplicated, range-checked copy of a 1-based set list.
std::vector<int> normalize_subset(std::vector<int> subset, int set_count);
std::vector<int> full_subset(int n);

/// Margenau-Hill characteristic function: the average over every ordering
/// of `subset` of Tr[rho prod_i exp(i M_i)], M_i = sum_k t_{i,k} O_{i,k}.
Complex mh_characteristic(const ComplexMatrix& rho, const CscoBasis& b, const FourierPoint& t,
                          std::vector<int> subset);

/// The same symmetrised quantity evaluated outcome by outcome:
/// q(z_S) = average over orderings of Tr[rho P_{z_a} P_{z_b} ...]. Its
/// Fourier sum equals mh_characteristic exactly.
QpdTable mh_quasi_table(const ComplexMatrix& rho, const CscoBasis& b, std::vector<int> subset);

/// sum over table entries of exp(i sum_{i in subset} z_{k_i} . t_i) p(k).
Complex fourier_from_table(const QpdTable& table, const FourierPoint& p);

struct FourierConsistency {
  std::vector<int> subset;
  std::size_t samples = 0;
  double max_deviation = 0.0;
  double mean_deviation = 0.0;
};

/// Samples t uniformly in [-pi, pi]^(n^2-1) and compares mh_characteristic
/// with the Fourier sum of the closed-form table marginal on `subset`.
FourierConsistency fourier_consistency(const ComplexMatrix& rho, const CscoBasis& b, std::size_t samples,
                                       std::uint64_t seed, std::vector<int> subset,
                                       Execution exec = Execution::parallel);

struct Classification {
  double min_value = 0.0;
  bool non_negative = false;          // min_value >= -boundary band
  std::vector<std::size_t> argmin;    // 0-based outcome index per set
  double margin = 0.0;                // 1 + sum_i min_z z . theta_i
};

/// Enumerates the full table. Throws DimMismatch.
Classification classify(const BlochState& s, const CscoBasis& b, const Tolerances& tol = kTolerances);

}  // namespace mubqpd
