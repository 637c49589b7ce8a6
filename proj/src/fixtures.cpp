#include "mubqpd/fixtures.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mubqpd/error.hpp"

namespace mubqpd::fixtures {

namespace {

using namespace std::complex_literals;

ComplexMatrix make(std::size_t n, std::initializer_list<Complex> entries, double scale = 1.0) {
  std::vector<Complex> v(entries);
  for (auto& z : v) z *= scale;
  return ComplexMatrix(n, std::move(v));
}

const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
const Complex w2 = w * w;

std::vector<std::vector<ComplexMatrix>> spin_half() {
  return {{make(2, {0.0, 1.0, 1.0, 0.0})},
          {make(2, {0.0, -1i, 1i, 0.0})},
          {make(2, {1.0, 0.0, 0.0, -1.0})}};
}

std::vector<std::vector<ComplexMatrix>> spin_one() {
  const double r2 = 1.0 / std::sqrt(2.0);
  const Complex i = 1i;
  return {
      {make(3, {1, 0, 0, 0, 0, 0, 0, 0, -1}, std::sqrt(1.5)),
       make(3, {1, 0, 0, 0, -2, 0, 0, 0, 1}, r2)},
      {make(3, {0, -i * w, i * w2, i * w2, 0, -i * w, -i * w, i * w2, 0}, r2),
       make(3, {0, -w, -w2, -w2, 0, -w, -w, -w2, 0}, r2)},
      {make(3, {0, -i, i * w2, i, 0, -i * w2, -i * w, i * w, 0}, r2),
       make(3, {0, -1, -w2, -1, 0, -w2, -w, -w, 0}, r2)},
      {make(3, {0, -i * w2, i * w2, i * w, 0, -i, -i * w, i, 0}, r2),
       make(3, {0, -w2, -w2, -w, 0, -1, -w, -1, 0}, r2)},
  };
}

std::vector<std::vector<ComplexMatrix>> spin_three_halves() {
  const double r5 = 1.0 / std::sqrt(5.0);
  const Complex i = 1i;
  return {
      {make(4, {3, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1, 0, 0, 0, 0, -3}, r5),
       make(4, {1, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 1}),
       make(4, {1, 0, 0, 0, 0, -3, 0, 0, 0, 0, 3, 0, 0, 0, 0, -1}, r5)},
      {make(4, {0, 1, 2, 0, 1, 0, 0, 2, 2, 0, 0, 1, 0, 2, 1, 0}, r5),
       make(4, {0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0}),
       make(4, {0, 2, -1, 0, 2, 0, 0, -1, -1, 0, 0, 2, 0, -1, 2, 0}, r5)},
      {make(4, {0, -i, -2.0 * i, 0, i, 0, 0, -2.0 * i, 2.0 * i, 0, 0, -i, 0, 2.0 * i, i, 0}, r5),
       make(4, {0, 0, 0, -1, 0, 0, 1, 0, 0, 1, 0, 0, -1, 0, 0, 0}),
       make(4, {0, -2.0 * i, i, 0, 2.0 * i, 0, 0, i, -i, 0, 0, -2.0 * i, 0, -i, 2.0 * i, 0}, r5)},
      {make(4, {0, -i, 2, 0, i, 0, 0, -2, 2, 0, 0, i, 0, -2, -i, 0}, r5),
       make(4, {0, 0, 0, i, 0, 0, i, 0, 0, -i, 0, 0, -i, 0, 0, 0}),
       make(4, {0, -2.0 * i, -1, 0, 2.0 * i, 0, 0, 1, -1, 0, 0, 2.0 * i, 0, 1, -2.0 * i, 0}, r5)},
      {make(4, {0, 1, -2.0 * i, 0, 1, 0, 0, 2.0 * i, 2.0 * i, 0, 0, -1, 0, -2.0 * i, -1, 0}, r5),
       make(4, {0, 0, 0, i, 0, 0, -i, 0, 0, i, 0, 0, -i, 0, 0, 0}),
       make(4, {0, 2, i, 0, 2, 0, 0, -i, -i, 0, 0, -2, 0, i, -2, 0}, r5)},
  };
}

}  // namespace

std::vector<std::vector<ComplexMatrix>> operator_sets(int n) {
  switch (n) {
    case 2: return spin_half();
    case 3: return spin_one();
    case 4: return spin_three_halves();
    default:
      throw Error(ErrorCode::UnsupportedDimension,
                  "no published operator fixture for n = " + std::to_string(n));
  }
}

std::vector<ComplexMatrix> spin1_unitaries() {
  const double r3 = 1.0 / std::sqrt(3.0);
  return {make(3, {1, 1, 1, 1, w, w2, 1, w2, w}, r3),
          make(3, {1, w2, 1, 1, 1, w2, 1, w, w}, r3),
          make(3, {1, w, 1, 1, w2, w2, 1, 1, w}, r3)};
}

}  // namespace mubqpd::fixtures
