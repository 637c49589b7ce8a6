#include <doctest.h>

#include <cmath>

#include "mubqpd/error.hpp"
#include "mubqpd/polytope.hpp"
#include "mubqpd/tomography.hpp"

using namespace mubqpd;

TEST_CASE("exact frequencies reproduce theta") {
  // Counts proportional to the marginals of a state whose probabilities are multiples of 1/8.
  const CscoBasis b = build_csco(2);
  const BlochState truth{2, {0.25, -0.5, 0.75}};
  const DensityMatrix rho = density_from_bloch(truth, b);
  MeasurementRecord r{2, 8, {}};
  for (std::size_t i = 0; i < 3; ++i) {
    const double p0 = expectation(rho.matrix, b.eigenbases[i].column(0)).real();
    const auto c0 = static_cast<std::size_t>(std::lround(8 * p0));
    r.counts.push_back({c0, 8 - c0});
  }
  const BlochEstimate e = estimate_bloch(r, b);
  for (std::size_t j = 0; j < 3; ++j) CHECK(e.state.theta[j] == doctest::Approx(truth.theta[j]).epsilon(1e-15));
}

TEST_CASE("vertex state concentrates on one outcome") {
  const CscoBasis b = build_csco(3);
  const Vertex v = vertices(b)[1];
  const MeasurementRecord r = simulate_counts(density_from_bloch(v.state, b), b, 1000, 3);
  CHECK(r.counts[0] == std::vector<std::size_t>{0, 1000, 0});
}

TEST_CASE("records are reproducible") {
  const CscoBasis b = build_csco(3);
  const DensityMatrix rho = random_state(3, StateKind::mixed, 1);
  CHECK(simulate_counts(rho, b, 5000, 9).counts == simulate_counts(rho, b, 5000, 9).counts);
  CHECK_FALSE(simulate_counts(rho, b, 5000, 9).counts == simulate_counts(rho, b, 5000, 10).counts);
}

TEST_CASE("maximally mixed state") {
  const CscoBasis b = build_csco(3);
  const DensityMatrix rho = density_from_bloch(BlochState{3, std::vector<double>(8, 0.0)}, b);
  const std::size_t shots = 90000;
  const MeasurementRecord r = simulate_counts(rho, b, shots, 2);
  for (const auto& row : r.counts)
    for (std::size_t c : row) CHECK(std::abs(static_cast<double>(c) / shots - 1.0 / 3) < 0.01);
  const BlochEstimate e = estimate_bloch(r, b);
  // Each tau component has unit variance under the uniform distribution.
  for (double se : e.standard_errors) CHECK(se == doctest::Approx(1.0 / std::sqrt(shots)).epsilon(0.02));
  CHECK(e.aggregate_error == doctest::Approx(std::sqrt(8.0 / shots)).epsilon(0.02));
}

TEST_CASE("sampled counts pass a chi-square test") {
  // 99.9% quantile of chi-square with 2 degrees of freedom.
  const double quantile = 13.8155;
  const CscoBasis b = build_csco(3);
  int failures = 0, runs = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const DensityMatrix rho = random_state(3, StateKind::mixed, seed);
    const MeasurementRecord r = simulate_counts(rho, b, 2000, seed + 500);
    for (std::size_t i = 0; i < 4; ++i) {
      double chi2 = 0.0;
      for (std::size_t k = 0; k < 3; ++k) {
        const double expected = 2000 * expectation(rho.matrix, b.eigenbases[i].column(k)).real();
        chi2 += std::pow(static_cast<double>(r.counts[i][k]) - expected, 2) / expected;
      }
      ++runs;
      if (chi2 > quantile) ++failures;
    }
  }
  CHECK(failures <= runs / 100);
}

TEST_CASE("tomography errors") {
  const CscoBasis b = build_csco(3);
  CHECK_THROWS_AS(estimate_bloch(MeasurementRecord{3, 0, {}}, b), Error);
  CHECK_THROWS_AS(simulate_counts(random_state(3, StateKind::mixed, 1), b, 0, 1), Error);
  BlochState bad{3, std::vector<double>(8, 0.0)};
  bad.theta[0] = 1.0;
  bad.theta[2] = 1.0;
  try {
    simulate_counts(density_from_bloch(bad, b), b, 10, 1);
    FAIL("expected NegativeProbability");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NegativeProbability);
  }
}
