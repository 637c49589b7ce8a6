#include "mubqpd/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mubqpd/error.hpp"
#include "mubqpd/rng.hpp"

namespace mubqpd {

MeasurementRecord simulate_counts(const DensityMatrix& rho, const CscoBasis& b, std::size_t shots,
                                  std::uint64_t seed, const Tolerances& tol) {
  const auto n = static_cast<std::size_t>(b.dim);
  if (rho.matrix.dim() != n) throw Error(ErrorCode::DimMismatch, "density matrix does not match basis");
  if (shots == 0) throw Error(ErrorCode::BadInput, "shots must be at least 1");

  MeasurementRecord r;
  r.dim = b.dim;
  r.shots = shots;
  r.counts.assign(b.set_count(), std::vector<std::size_t>(n, 0));
  for (std::size_t i = 0; i < b.set_count(); ++i) {
    std::vector<double> p(n);
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      p[k] = expectation(rho.matrix, b.eigenbases[i].column(k)).real();
      if (p[k] < -tol.probability_sum) {
        throw Error(ErrorCode::NegativeProbability,
                    "set " + std::to_string(i + 1) + " outcome " + std::to_string(k) + " has p = " + std::to_string(p[k]));
      }
      p[k] = std::max(p[k], 0.0);
      total += p[k];
    }
    if (std::abs(total - 1.0) > tol.probability_sum) {
      throw Error(ErrorCode::NegativeProbability, "outcome probabilities sum to " + std::to_string(total));
    }
    CounterRng rng(derive_key(seed, i));
    for (std::size_t s = 0; s < shots; ++s) {
      const double u = rng.uniform() * total;
      double acc = 0.0;
      std::size_t k = 0;
      for (; k + 1 < n; ++k) {
        acc += p[k];
        if (u < acc) break;
      }
      ++r.counts[i][k];
    }
  }
  return r;
}

BlochEstimate estimate_bloch(const MeasurementRecord& r, const CscoBasis& b) {
  if (r.shots == 0 || r.counts.empty()) throw Error(ErrorCode::EmptyRecord, "no measurements recorded");
  const auto n = static_cast<std::size_t>(b.dim);
  if (r.dim != b.dim || r.counts.size() != b.set_count()) throw Error(ErrorCode::DimMismatch, "record shape");
  const std::size_t len = n - 1;

  BlochEstimate e;
  e.state.dim = b.dim;
  e.state.theta.assign(b.operator_count(), 0.0);
  e.standard_errors.assign(b.operator_count(), 0.0);
  const double shots = static_cast<double>(r.shots);
  double variance = 0.0;
  for (std::size_t i = 0; i < r.counts.size(); ++i) {
    if (r.counts[i].size() != n) throw Error(ErrorCode::DimMismatch, "record row length");
    std::size_t row = 0;
    for (const std::size_t c : r.counts[i]) row += c;
    if (row != r.shots) throw Error(ErrorCode::BadInput, "set " + std::to_string(i + 1) + " counts do not sum to shots");
    for (std::size_t k = 0; k < len; ++k) {
      double mean = 0.0;
      double second = 0.0;
      for (std::size_t z = 0; z < n; ++z) {
        const double f = static_cast<double>(r.counts[i][z]) / shots;
        mean += f * b.alphabet[z][k];
        second += f * b.alphabet[z][k] * b.alphabet[z][k];
      }
      const double var = std::max(second - mean * mean, 0.0) / shots;
      e.state.theta[i * len + k] = mean;
      e.standard_errors[i * len + k] = std::sqrt(var);
      variance += var;
    }
  }
  e.aggregate_error = std::sqrt(variance);
  return e;
}

}  // namespace mubqpd
