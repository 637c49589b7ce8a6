#include "mubqpd/clebsch.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <string>

#include "mubqpd/error.hpp"

namespace mubqpd {

namespace {

constexpr int kMaxFactorial = 40;

const std::array<double, kMaxFactorial + 1>& factorials() {
  static const auto table = [] {
    std::array<double, kMaxFactorial + 1> f{};
    f[0] = 1.0;
    for (int i = 1; i <= kMaxFactorial; ++i) f[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(i - 1)] * i;
    return f;
  }();
  return table;
}

double fact(int n) {
  if (n < 0 || n > kMaxFactorial) {
    throw Error(ErrorCode::InvalidQuantumNumbers, "factorial argument " + std::to_string(n) + " out of table");
  }
  return factorials()[static_cast<std::size_t>(n)];
}

bool is_half_integer_multiple(double x) { return std::abs(2.0 * x - std::round(2.0 * x)) < 1e-12; }

}  // namespace

// Racah's closed sum.
double clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2, int two_j, int two_m) {
  if (two_m1 + two_m2 != two_m) return 0.0;
  if (std::abs(two_m1) > two_j1 || std::abs(two_m2) > two_j2 || std::abs(two_m) > two_j) return 0.0;
  if (two_j < std::abs(two_j1 - two_j2) || two_j > two_j1 + two_j2) return 0.0;
  if ((two_j1 + two_j2 + two_j) % 2 != 0) return 0.0;
  if ((two_j1 + two_m1) % 2 != 0 || (two_j2 + two_m2) % 2 != 0 || (two_j + two_m) % 2 != 0) return 0.0;

  const int a = (two_j1 + two_j2 - two_j) / 2;  // j1 + j2 - J
  const int b = (two_j1 - two_m1) / 2;          // j1 - m1
  const int c = (two_j2 + two_m2) / 2;          // j2 + m2
  const int d = (two_j - two_j2 + two_m1) / 2;  // J - j2 + m1
  const int e = (two_j - two_j1 - two_m2) / 2;  // J - j1 - m2

  const double pre = std::sqrt(static_cast<double>(two_j + 1) * fact((two_j + two_j1 - two_j2) / 2) *
                               fact((two_j - two_j1 + two_j2) / 2) * fact(a) /
                               fact((two_j1 + two_j2 + two_j) / 2 + 1)) *
                     std::sqrt(fact((two_j + two_m) / 2) * fact((two_j - two_m) / 2) * fact(b) *
                               fact((two_j1 + two_m1) / 2) * fact((two_j2 - two_m2) / 2) * fact(c));

  const int kmin = std::max({0, -d, -e});
  const int kmax = std::min({a, b, c});
  double sum = 0.0;
  for (int k = kmin; k <= kmax; ++k) {
    const double term = 1.0 / (fact(k) * fact(a - k) * fact(b - k) * fact(c - k) * fact(d + k) * fact(e + k));
    sum += (k % 2 == 0) ? term : -term;
  }
  return pre * sum;
}

double clebsch_gordan_q0(double j, int k, double m) {
  if (j <= 0.0 || !is_half_integer_multiple(j) || !is_half_integer_multiple(m) ||
      std::abs(std::round(j - m) - (j - m)) > 1e-12) {
    throw Error(ErrorCode::InvalidQuantumNumbers, "j and m must be half-integers with j - m integral");
  }
  const int two_j = static_cast<int>(std::lround(2.0 * j));
  const int two_m = static_cast<int>(std::lround(2.0 * m));
  if (k < 1 || k > two_j || std::abs(two_m) > two_j) {
    throw Error(ErrorCode::InvalidQuantumNumbers,
                "need 1 <= k <= 2j and |m| <= j (j = " + std::to_string(j) + ", k = " + std::to_string(k) + ")");
  }
  return clebsch_gordan(two_j, two_m, 2 * k, 0, two_j, two_m);
}

TensorOperator tensor_diag(double j, int k) {
  TensorOperator t;
  t.j = j;
  t.k = k;
  const int two_j = static_cast<int>(std::lround(2.0 * j));
  std::vector<double> diag(static_cast<std::size_t>(two_j + 1));
  const double scale = std::sqrt(2.0 * k + 1.0);
  for (int row = 0; row <= two_j; ++row) {
    const double m = j - row;
    diag[static_cast<std::size_t>(row)] = scale * clebsch_gordan_q0(j, k, m);
  }
  t.matrix = ComplexMatrix::diagonal(std::span<const double>(diag));
  return t;
}

}  // namespace mubqpd
