#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mubqpd/config.hpp"
#include "mubqpd/csco.hpp"
#include "mubqpd/state.hpp"

namespace mubqpd {

/// counts[i][k]: how often outcome k of set i was seen; each row sums to shots.
struct MeasurementRecord {
  int dim = 0;
  std::size_t shots = 0;
  std::vector<std::vector<std::size_t>> counts;
};

/// Samples `shots` outcomes per set from p(k) = <v_k|rho|v_k>. Set i draws
/// from the stream derive_key(seed, i). Throws NegativeProbability, BadInput.
MeasurementRecord simulate_counts(const DensityMatrix& rho, const CscoBasis& b, std::size_t shots,
                                  std::uint64_t seed, const Tolerances& tol = kTolerances);

struct BlochEstimate {
  BlochState state;
  std::vector<double> standard_errors;  // per component
  double aggregate_error = 0.0;         // sqrt of the summed variances
};

/// Linear inversion: theta_{i,k} = sum_z z_k freq_i(z). Standard errors
/// from the plug-in multinomial variance. Throws EmptyRecord, DimMismatch.
BlochEstimate estimate_bloch(const MeasurementRecord& r, const CscoBasis& b);

}  // namespace mubqpd
