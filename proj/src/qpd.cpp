#include "mubqpd/qpd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>

#include "mubqpd/error.hpp"
#include "mubqpd/kernels.hpp"
#include "mubqpd/rng.hpp"

namespace mubqpd {

namespace {

std::size_t table_size(std::size_t n, std::size_t sets) {
  std::size_t size = 1;
  for (std::size_t i = 0; i < sets; ++i) {
    if (size > kMaxTableEntries / n) {
      throw Error(ErrorCode::UnsupportedDimension,
                  "outcome table n^" + std::to_string(sets) + " exceeds " + std::to_string(kMaxTableEntries));
    }
    size *= n;
  }
  return size;
}

void require_match(const BlochState& s, const CscoBasis& b) {
  if (s.dim != b.dim || s.theta.size() != b.operator_count()) {
    throw Error(ErrorCode::DimMismatch, "Bloch vector does not match basis");
  }
}

double dot(const std::vector<double>& z, std::span<const double> block) {
  double acc = 0.0;
  for (std::size_t k = 0; k < z.size(); ++k) acc += z[k] * block[k];
  return acc;
}

// dots[pos * n + k] = z_k . block(subset[pos]) for a vector laid out like theta.
std::vector<double> block_dots(std::span<const double> v, const CscoBasis& b, const std::vector<int>& subset) {
  const auto n = static_cast<std::size_t>(b.dim);
  const std::size_t len = n - 1;
  std::vector<double> dots(subset.size() * n);
  for (std::size_t pos = 0; pos < subset.size(); ++pos) {
    const auto block = v.subspan(static_cast<std::size_t>(subset[pos] - 1) * len, len);
    for (std::size_t k = 0; k < n; ++k) dots[pos * n + k] = dot(b.alphabet[k], block);
  }
  return dots;
}

ComplexMatrix measurement_exp(const CscoBasis& b, std::span<const double> t, std::size_t set) {
  const std::size_t len = b.set_size();
  ComplexMatrix m(static_cast<std::size_t>(b.dim));
  bool zero = true;
  for (std::size_t k = 0; k < len; ++k) {
    const double tk = t[set * len + k];
    if (tk != 0.0) {
      m += tk * b.sets[set][k];
      zero = false;
    }
  }
  if (zero) return ComplexMatrix::identity(static_cast<std::size_t>(b.dim));
  return unitary_exp(m, 1.0);
}

}  // namespace

std::size_t QpdTable::index(std::span<const std::size_t> outcomes) const {
  if (outcomes.size() != subset.size()) throw Error(ErrorCode::DimMismatch, "outcome tuple length");
  std::size_t idx = 0;
  for (const std::size_t k : outcomes) {
    if (k >= static_cast<std::size_t>(dim)) throw Error(ErrorCode::IndexOutOfRange, "outcome index");
    idx = idx * static_cast<std::size_t>(dim) + k;
  }
  return idx;
}

std::vector<std::size_t> QpdTable::outcomes(std::size_t index) const {
  std::vector<std::size_t> ks(subset.size());
  for (std::size_t i = ks.size(); i-- > 0;) {
    ks[i] = index % static_cast<std::size_t>(dim);
    index /= static_cast<std::size_t>(dim);
  }
  return ks;
}

double QpdTable::sum() const {
  double acc = 0.0;
  for (double v : values) acc += v;
  return acc;
}

double QpdTable::min() const { return values.empty() ? 0.0 : *std::min_element(values.begin(), values.end()); }

std::vector<int> normalize_subset(std::vector<int> subset, int set_count) {
  if (subset.empty()) throw Error(ErrorCode::EmptySubset, "subset of measurement sets is empty");
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  if (subset.front() < 1 || subset.back() > set_count) {
    throw Error(ErrorCode::IndexOutOfRange, "set indices must lie in 1.." + std::to_string(set_count));
  }
  return subset;
}

std::vector<int> full_subset(int n) {
  std::vector<int> all(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) all[static_cast<std::size_t>(i)] = i + 1;
  return all;
}

QpdTable qpd_table(const BlochState& s, const CscoBasis& b, Execution exec) {
  require_match(s, b);
  QpdTable t;
  t.dim = b.dim;
  t.subset = full_subset(b.dim);
  t.alphabet = b.alphabet;
  const auto n = static_cast<std::size_t>(b.dim);
  const std::size_t size = table_size(n, t.subset.size());
  const std::vector<double> dots = block_dots(s.theta, b, t.subset);
  const double prefactor = 1.0 / static_cast<double>(size);
  const int sets = static_cast<int>(t.subset.size());
  t.values = exec == Execution::parallel ? kernels::qpd_values(dots, b.dim, sets, prefactor)
                                         : kernels::serial::qpd_values(dots, b.dim, sets, prefactor);
  return t;
}

QpdTable qpd_closed_form(const BlochState& s, const CscoBasis& b, std::vector<int> subset) {
  require_match(s, b);
  QpdTable t;
  t.dim = b.dim;
  t.subset = normalize_subset(std::move(subset), b.dim + 1);
  t.alphabet = b.alphabet;
  const std::size_t size = table_size(static_cast<std::size_t>(b.dim), t.subset.size());
  const std::vector<double> dots = block_dots(s.theta, b, t.subset);
  t.values = kernels::serial::qpd_values(dots, b.dim, static_cast<int>(t.subset.size()),
                                         1.0 / static_cast<double>(size));
  return t;
}

QpdTable qpd_marginal(const QpdTable& t, std::vector<int> subset) {
  if (subset.empty()) throw Error(ErrorCode::EmptySubset, "marginal over no sets");
  subset = normalize_subset(std::move(subset), std::numeric_limits<int>::max());
  std::vector<std::size_t> keep;
  for (const int s : subset) {
    const auto it = std::find(t.subset.begin(), t.subset.end(), s);
    if (it == t.subset.end()) {
      throw Error(ErrorCode::IndexOutOfRange, "set " + std::to_string(s) + " is not in the table");
    }
    keep.push_back(static_cast<std::size_t>(it - t.subset.begin()));
  }
  QpdTable m;
  m.dim = t.dim;
  m.subset = subset;
  m.alphabet = t.alphabet;
  m.values.assign(table_size(static_cast<std::size_t>(t.dim), subset.size()), 0.0);
  const auto n = static_cast<std::size_t>(t.dim);
  for (std::size_t idx = 0; idx < t.values.size(); ++idx) {
    const std::vector<std::size_t> ks = t.outcomes(idx);
    std::size_t target = 0;
    for (const std::size_t pos : keep) target = target * n + ks[pos];
    m.values[target] += t.values[idx];
  }
  return m;
}

Complex mh_characteristic(const ComplexMatrix& rho, const CscoBasis& b, const FourierPoint& t,
                          std::vector<int> subset) {
  if (static_cast<int>(rho.dim()) != b.dim || t.t.size() != b.operator_count()) {
    throw Error(ErrorCode::DimMismatch, "mh_characteristic");
  }
  subset = normalize_subset(std::move(subset), b.dim + 1);
  std::map<int, ComplexMatrix> exps;
  for (const int s : subset) exps.emplace(s, measurement_exp(b, t.t, static_cast<std::size_t>(s - 1)));

  Complex acc = 0.0;
  std::size_t orderings = 0;
  std::vector<int> order = subset;
  do {
    ComplexMatrix product = rho;
    for (const int s : order) product = product * exps.at(s);
    acc += product.trace();
    ++orderings;
  } while (std::next_permutation(order.begin(), order.end()));
  return acc / static_cast<double>(orderings);
}

QpdTable mh_quasi_table(const ComplexMatrix& rho, const CscoBasis& b, std::vector<int> subset) {
  if (static_cast<int>(rho.dim()) != b.dim) throw Error(ErrorCode::DimMismatch, "mh_quasi_table");
  QpdTable q;
  q.dim = b.dim;
  q.subset = normalize_subset(std::move(subset), b.dim + 1);
  q.alphabet = b.alphabet;
  q.values.assign(table_size(static_cast<std::size_t>(b.dim), q.subset.size()), 0.0);

  for (std::size_t idx = 0; idx < q.values.size(); ++idx) {
    const std::vector<std::size_t> ks = q.outcomes(idx);
    std::vector<std::size_t> positions(ks.size());
    for (std::size_t p = 0; p < positions.size(); ++p) positions[p] = p;
    Complex acc = 0.0;
    std::size_t orderings = 0;
    do {
      ComplexMatrix product = rho;
      for (const std::size_t p : positions)
        product = product * b.projector(static_cast<std::size_t>(q.subset[p] - 1), ks[p]);
      acc += product.trace();
      ++orderings;
    } while (std::next_permutation(positions.begin(), positions.end()));
    q.values[idx] = acc.real() / static_cast<double>(orderings);
  }
  return q;
}

Complex fourier_from_table(const QpdTable& table, const FourierPoint& p) {
  const auto n = static_cast<std::size_t>(table.dim);
  if (n < 2 || table.alphabet.size() != n) throw Error(ErrorCode::DimMismatch, "fourier_from_table alphabet");
  const std::size_t len = n - 1;
  if (p.t.size() != len * (n + 1)) throw Error(ErrorCode::DimMismatch, "Fourier point length");

  std::vector<double> phase(table.subset.size() * n);
  for (std::size_t pos = 0; pos < table.subset.size(); ++pos) {
    const auto block = std::span<const double>(p.t).subspan(static_cast<std::size_t>(table.subset[pos] - 1) * len, len);
    for (std::size_t k = 0; k < n; ++k) phase[pos * n + k] = dot(table.alphabet[k], block);
  }
  Complex acc = 0.0;
  for (std::size_t idx = 0; idx < table.values.size(); ++idx) {
    double angle = 0.0;
    std::size_t rest = idx;
    for (std::size_t pos = table.subset.size(); pos-- > 0;) {
      angle += phase[pos * n + rest % n];
      rest /= n;
    }
    acc += table.values[idx] * std::polar(1.0, angle);
  }
  return acc;
}

FourierConsistency fourier_consistency(const ComplexMatrix& rho, const CscoBasis& b, std::size_t samples,
                                       std::uint64_t seed, std::vector<int> subset, Execution exec) {
  FourierConsistency out;
  out.subset = normalize_subset(std::move(subset), b.dim + 1);
  out.samples = samples;
  const BlochState s = bloch_from_density(rho, b);
  const QpdTable table = qpd_closed_form(s, b, out.subset);

  std::vector<double> deviations(samples);
  const std::size_t len = b.operator_count();
  for_each_index(samples, exec, [&](std::size_t i) {
    CounterRng rng(derive_key(seed, i));
    FourierPoint t;
    t.t.resize(len);
    for (auto& x : t.t) x = rng.uniform(-std::numbers::pi, std::numbers::pi);
    deviations[i] = std::abs(mh_characteristic(rho, b, t, out.subset) - fourier_from_table(table, t));
  });
  double total = 0.0;
  for (double d : deviations) {
    out.max_deviation = std::max(out.max_deviation, d);
    total += d;
  }
  out.mean_deviation = samples > 0 ? total / static_cast<double>(samples) : 0.0;
  return out;
}

Classification classify(const BlochState& s, const CscoBasis& b, const Tolerances& tol) {
  const QpdTable t = qpd_table(s, b);
  Classification c;
  const auto it = std::min_element(t.values.begin(), t.values.end());
  c.min_value = *it;
  c.argmin = t.outcomes(static_cast<std::size_t>(it - t.values.begin()));
  c.non_negative = c.min_value >= -tol.boundary_band;
  c.margin = 1.0;
  for (std::size_t i = 0; i < b.set_count(); ++i) {
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& z : b.alphabet) lo = std::min(lo, dot(z, s.block(i)));
    c.margin += lo;
  }
  return c;
}

}  // namespace mubqpd
