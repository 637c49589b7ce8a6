#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "mubqpd/numerics.hpp"
#include "mubqpd/rng.hpp"

namespace testing {

inline mubqpd::ComplexMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
  mubqpd::CounterRng rng(seed);
  mubqpd::ComplexMatrix m(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r; c < n; ++c) {
      const auto [a, b] = rng.gaussian_pair();
      m(r, c) = {a, r == c ? 0.0 : b};
      m(c, r) = std::conj(m(r, c));
    }
  return m;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

inline const std::vector<int> kDims{2, 3, 4, 5, 7};

}  // namespace testing
