#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "mubqpd/error.hpp"
#include "mubqpd/fixtures.hpp"
#include "mubqpd/parallel.hpp"
#include "mubqpd/qpd.hpp"

using namespace mubqpd;

namespace {

BlochState random_bloch(const CscoBasis& b, std::uint64_t seed) {
  return bloch_from_density(random_state(b.dim, StateKind::mixed, seed), b);
}

// Random Fourier point with only the listed (1-based) sets nonzero.
FourierPoint random_point(const CscoBasis& b, std::uint64_t seed) {
  CounterRng rng(seed);
  FourierPoint t;
  t.t.resize(b.operator_count());
  for (auto& x : t.t) x = rng.uniform(-std::numbers::pi, std::numbers::pi);
  return t;
}

}  // namespace

TEST_CASE("theta = 0 gives the uniform table") {
  const CscoBasis b = build_csco(3);
  const QpdTable t = qpd_table(BlochState{3, std::vector<double>(8, 0.0)}, b);
  REQUIRE(t.values.size() == 81);
  for (double v : t.values) CHECK(v == doctest::Approx(1.0 / 81));
}

TEST_CASE("spin-1/2 closed form") {
  // p(k1,k2,k3) = (1 + x1 t1 + x2 t2 + x3 t3) / 8 with x = +-1.
  const CscoBasis b = build_csco(2);
  const BlochState s{2, {0.3, -0.2, 0.5}};
  const QpdTable t = qpd_table(s, b);
  REQUIRE(t.values.size() == 8);
  CHECK(b.alphabet[0][0] == doctest::Approx(1.0));
  CHECK(b.alphabet[1][0] == doctest::Approx(-1.0));
  for (std::size_t idx = 0; idx < 8; ++idx) {
    const auto ks = t.outcomes(idx);
    double p = 1.0;
    for (std::size_t i = 0; i < 3; ++i) p += (ks[i] == 0 ? 1.0 : -1.0) * s.theta[i];
    CHECK(t.values[idx] == doctest::Approx(p / 8).epsilon(1e-15));
  }
}

TEST_CASE("tables sum to one and marginals are projector probabilities") {
  for (int n : {2, 3, 4}) {
    const CscoBasis b = build_csco(n);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const DensityMatrix rho = random_state(n, StateKind::mixed, seed);
      const BlochState s = bloch_from_density(rho, b);
      const QpdTable t = qpd_table(s, b);
      CHECK(t.sum() == doctest::Approx(1.0).epsilon(1e-12));
      for (int i = 1; i <= n + 1; ++i) {
        const QpdTable m = qpd_marginal(t, {i});
        for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k) {
          const double p = expectation(rho.matrix, b.eigenbases[static_cast<std::size_t>(i - 1)].column(k)).real();
          CHECK(std::abs(m.values[k] - p) < 1e-10);
        }
      }
      const QpdTable pair = qpd_marginal(t, {1, 3});
      const QpdTable closed = qpd_closed_form(s, b, {3, 1});
      for (std::size_t idx = 0; idx < pair.values.size(); ++idx)
        CHECK(std::abs(pair.values[idx] - closed.values[idx]) < 1e-12);
    }
  }
}

TEST_CASE("k1-major indexing") {
  QpdTable t;
  t.dim = 3;
  t.subset = {1, 2, 4};
  const std::vector<std::size_t> ks{2, 0, 1};
  CHECK(t.index(ks) == 19);
  CHECK(t.outcomes(19) == ks);
  CHECK_THROWS_AS(t.index(std::vector<std::size_t>{3, 0, 0}), Error);
}

TEST_CASE("serial and parallel tables are identical") {
  set_thread_count(4);
  for (int n : {2, 3, 4, 5, 7}) {
    const CscoBasis b = build_csco(n);
    const BlochState s = random_bloch(b, 77);
    CHECK(qpd_table(s, b, Execution::serial).values == qpd_table(s, b, Execution::parallel).values);
  }
}

TEST_CASE("oversized tables are refused") {
  const CscoBasis b = build_csco(11);
  CHECK_THROWS_AS(qpd_table(BlochState{11, std::vector<double>(b.operator_count(), 0.0)}, b), Error);
  CHECK(qpd_closed_form(BlochState{11, std::vector<double>(b.operator_count(), 0.0)}, b, {1, 5}).values.size() == 121);
}

TEST_CASE("marginal and subset errors") {
  const CscoBasis b = build_csco(3);
  const QpdTable t = qpd_table(random_bloch(b, 1), b);
  CHECK_THROWS_AS(qpd_marginal(t, {}), Error);
  CHECK_THROWS_AS(qpd_marginal(qpd_marginal(t, {1, 2}), {3}), Error);
  CHECK_THROWS_AS(normalize_subset({0, 1}, 4), Error);
  CHECK(normalize_subset({3, 1, 3}, 4) == std::vector<int>{1, 3});
  CHECK_THROWS_AS(qpd_table(BlochState{3, std::vector<double>(3, 0.0)}, b), Error);
}

TEST_CASE("Margenau-Hill oracle matches the closed form for spin 1/2") {
  const CscoBasis b = build_csco(2);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const DensityMatrix rho = random_state(2, StateKind::mixed, seed);
    const QpdTable t = qpd_table(bloch_from_density(rho, b), b);
    const FourierPoint p = random_point(b, 1000 + seed);
    CHECK(std::abs(mh_characteristic(rho.matrix, b, p, full_subset(2)) - fourier_from_table(t, p)) < 1e-12);
  }
}

TEST_CASE("Margenau-Hill equals the Fourier sum of the projector table") {
  for (int n : {3, 4}) {
    const CscoBasis b = build_csco(n);
    const DensityMatrix rho = random_state(n, StateKind::mixed, 5);
    for (const std::vector<int>& subset : {std::vector<int>{1, 2}, std::vector<int>{2, 3, 4}}) {
      const QpdTable q = mh_quasi_table(rho.matrix, b, subset);
      CHECK(q.sum() == doctest::Approx(1.0).epsilon(1e-12));
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const FourierPoint p = random_point(b, seed);
        CHECK(std::abs(mh_characteristic(rho.matrix, b, p, subset) - fourier_from_table(q, p)) < 1e-12);
      }
    }
  }
}

TEST_CASE("frozen spin-1 Margenau-Hill values against the published operators") {
  // rho and t from an independent scipy computation with the published matrices.
  const CscoBasis b = paper_fixture(3);
  const ComplexMatrix rho(3, {{0.11018722523212737, 0.0},
                              {-0.047683942801131696, 0.02954398291404886},
                              {-0.086278835843292, 0.08639767447879465},
                              {-0.047683942801131696, -0.029543982914048864},
                              {0.34388779755849597, 0.0},
                              {0.1397441975255545, -0.20097634009655027},
                              {-0.086278835843292, -0.08639767447879464},
                              {0.1397441975255545, 0.20097634009655027},
                              {0.5459249772093767, 0.0}});
  const FourierPoint t{{0.3, -1.1, 0.7, 0.2, -0.4, 0.9, 1.3, -0.6}};
  const BlochState s = bloch_from_density(rho, b);

  const Complex pair_mh = mh_characteristic(rho, b, t, {1, 2});
  const Complex pair_closed = fourier_from_table(qpd_closed_form(s, b, {1, 2}), t);
  CHECK(std::abs(pair_mh - Complex(0.18881630219564186, -0.22457400661796414)) < 1e-12);
  CHECK(std::abs(pair_closed - Complex(0.22361561263819985, -0.17849227775282106)) < 1e-12);
  CHECK(std::abs(pair_mh - pair_closed) == doctest::Approx(0.05774528329204115).epsilon(1e-9));

  const Complex full_mh = mh_characteristic(rho, b, t, full_subset(3));
  CHECK(std::abs(full_mh - Complex(-0.02646414765909057, 0.06094259833509637)) < 1e-12);
}

TEST_CASE("pairwise agreement holds when theta lives in the pair's blocks") {
  // Re Tr[O P_a P_b] vanishes for O in the pair's own sets, so the closed
  // form is exact once the other blocks are zero.
  for (int n : {3, 4, 5}) {
    const CscoBasis b = build_csco(n);
    const std::size_t len = static_cast<std::size_t>(n - 1);
    BlochState s = random_bloch(b, 31);
    for (std::size_t j = 0; j < s.theta.size(); ++j)
      if (j / len != 0 && j / len != 2) s.theta[j] = 0.0;
    for (double& x : s.theta) x *= 0.3;
    const DensityMatrix rho = density_from_bloch(s, b);
    const FourierConsistency fc = fourier_consistency(rho.matrix, b, 20, 3, {1, 3});
    CHECK(fc.max_deviation < 1e-12);
  }
}

TEST_CASE("pairwise agreement fails for generic spin-1 states") {
  const CscoBasis b = build_csco(3);
  const DensityMatrix rho = random_state(3, StateKind::mixed, 8);
  const FourierConsistency fc = fourier_consistency(rho.matrix, b, 50, 4, {1, 2});
  CHECK(fc.max_deviation > 1e-2);
}

TEST_CASE("fourier_consistency is schedule independent") {
  set_thread_count(3);
  const CscoBasis b = build_csco(3);
  const DensityMatrix rho = random_state(3, StateKind::mixed, 2);
  const auto a = fourier_consistency(rho.matrix, b, 40, 9, {2, 4}, Execution::serial);
  const auto p = fourier_consistency(rho.matrix, b, 40, 9, {2, 4}, Execution::parallel);
  CHECK(a.max_deviation == p.max_deviation);
  CHECK(a.mean_deviation == p.mean_deviation);
}

TEST_CASE("classify") {
  const CscoBasis b = build_csco(3);
  const Classification inside = classify(BlochState{3, std::vector<double>(8, 0.0)}, b);
  CHECK(inside.non_negative);
  CHECK(inside.margin == doctest::Approx(1.0));
  BlochState s{3, std::vector<double>(8, 0.0)};
  s.theta[0] = 1.2;
  s.theta[2] = 1.2;
  const Classification out = classify(s, b);
  CHECK_FALSE(out.non_negative);
  CHECK(out.min_value == doctest::Approx(out.margin / 81).epsilon(1e-12));
  const QpdTable t = qpd_table(s, b);
  CHECK(t.values[t.index(out.argmin)] == out.min_value);
}

TEST_CASE("characteristic function special values") {
  const CscoBasis b2 = build_csco(2);
  const ComplexMatrix half = 0.5 * ComplexMatrix::identity(2);
  const FourierPoint zero{{0.0, 0.0, 0.0}};
  CHECK(std::abs(mh_characteristic(half, b2, zero, full_subset(2)) - Complex(1.0)) == 0.0);
  const FourierPoint t{{0.4, -1.3, 2.2}};
  CHECK(std::abs(mh_characteristic(half, b2, t, full_subset(2)) - std::cos(0.4) * std::cos(1.3) * std::cos(2.2)) <
        1e-14);

  const QpdTable uniform = qpd_table(BlochState{2, {0.0, 0.0, 0.0}}, b2);
  CHECK(std::abs(fourier_from_table(uniform, FourierPoint{{0.9, 0.0, 0.0}}) - std::cos(0.9)) < 1e-14);
  CHECK(std::abs(fourier_from_table(uniform, zero) - Complex(1.0)) < 1e-15);
}

TEST_CASE("fourier_from_table matches a reordered summation") {
  const CscoBasis b = build_csco(3);
  const QpdTable t = qpd_table(random_bloch(b, 21), b);
  const FourierPoint p = random_point(b, 22);
  // Sum with the last set most significant.
  Complex acc = 0.0;
  for (std::size_t k4 = 0; k4 < 3; ++k4)
    for (std::size_t k3 = 0; k3 < 3; ++k3)
      for (std::size_t k2 = 0; k2 < 3; ++k2)
        for (std::size_t k1 = 0; k1 < 3; ++k1) {
          const std::vector<std::size_t> ks{k1, k2, k3, k4};
          double angle = 0.0;
          for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t c = 0; c < 2; ++c) angle += b.alphabet[ks[i]][c] * p.t[i * 2 + c];
          acc += t.values[t.index(ks)] * std::polar(1.0, angle);
        }
  CHECK(std::abs(acc - fourier_from_table(t, p)) < 1e-13);
}

TEST_CASE("pairwise characteristic in the published U2 form") {
  // phi(t1..t4) = sum e^{i(...)} Re{<z2|U2|z1><z1|rho U2^dagger|z2>}
  const CscoBasis b = paper_fixture(3);
  const ComplexMatrix u2 = fixtures::spin1_unitaries()[0];
  const DensityMatrix rho = random_state(3, StateKind::mixed, 40);
  const ComplexMatrix rho_u = rho.matrix * u2.adjoint();
  QpdTable q;
  q.dim = 3;
  q.subset = {1, 2};
  q.alphabet = b.alphabet;
  for (std::size_t k1 = 0; k1 < 3; ++k1)
    for (std::size_t k2 = 0; k2 < 3; ++k2) q.values.push_back((u2(k2, k1) * rho_u(k1, k2)).real());
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    FourierPoint p = random_point(b, 300 + seed);
    CHECK(std::abs(mh_characteristic(rho.matrix, b, p, {1, 2}) - fourier_from_table(q, p)) < 1e-12);
  }
}

TEST_CASE("boundary tables and classification") {
  const CscoBasis b2 = build_csco(2);
  // theta along the first generated set (sigma_z).
  const QpdTable t = qpd_table(BlochState{2, {1.0, 0.0, 0.0}}, b2);
  int quarters = 0, zeros = 0;
  for (double v : t.values) {
    if (std::abs(v - 0.25) < 1e-15) ++quarters;
    if (std::abs(v) < 1e-15) ++zeros;
  }
  CHECK(quarters == 4);
  CHECK(zeros == 4);
  CHECK(qpd_marginal(t, full_subset(2)).values == t.values);
  CHECK_FALSE(classify(BlochState{2, {0.6, 0.6, 0.6}}, b2).non_negative);

  const CscoBasis b3 = paper_fixture(3);
  BlochState vertex{3, std::vector<double>(8, 0.0)};
  vertex.theta[0] = std::sqrt(1.5);
  vertex.theta[1] = std::sqrt(0.5);
  const Classification c = classify(vertex, b3);
  CHECK(std::abs(c.min_value) < 1e-15);
  CHECK(c.non_negative);

  const QpdTable pair = qpd_marginal(qpd_table(vertex, b3), {1, 2});
  CHECK(pair.values.size() == 9);
  CHECK(pair.values[0] == doctest::Approx((1.0 + 2.0) / 9));
}
