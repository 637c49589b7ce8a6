#include <doctest.h>

#include <numbers>

#include "mubqpd/error.hpp"
#include "mubqpd/fixtures.hpp"
#include "mubqpd/mub.hpp"

using namespace mubqpd;

TEST_CASE("supported dimensions") {
  for (int n : {2, 3, 4, 5, 7, 11, 13}) CHECK(is_supported_dimension(n));
  for (int n : {0, 1, 6, 8, 9, 10, 12, 17}) CHECK_FALSE(is_supported_dimension(n));
  CHECK_THROWS_AS(build_mub(6), Error);
}

TEST_CASE("bases are unitary and mutually unbiased") {
  for (int n : {2, 3, 4, 5, 7, 11, 13}) {
    CAPTURE(n);
    const MubFamily f = build_mub(n);
    REQUIRE(f.bases.size() == static_cast<std::size_t>(n + 1));
    for (const auto& b : f.bases) CHECK(unitarity_defect(b) < 1e-12);
    CHECK(verify_unbiased(f) < 1e-10);
  }
}

TEST_CASE("basis_unitary is 1-based") {
  const MubFamily f = build_mub(3);
  CHECK(basis_unitary(f, 1) == ComplexMatrix::identity(3));
  CHECK_THROWS_AS(basis_unitary(f, 0), Error);
  CHECK_THROWS_AS(basis_unitary(f, 5), Error);
}

TEST_CASE("spin-1 unitaries reproduce the published U2, U3, U4") {
  const MubFamily f = build_mub(3);
  const auto published = fixtures::spin1_unitaries();
  for (int i = 0; i < 3; ++i) {
    CAPTURE(i);
    CHECK(max_abs_diff(basis_unitary(f, i + 2), published[static_cast<std::size_t>(i)]) < 1e-12);
  }
}

TEST_CASE("published operators are related by U2") {
  const auto sets = fixtures::operator_sets(3);
  const ComplexMatrix u2 = fixtures::spin1_unitaries()[0];
  CHECK(max_abs_diff(u2.adjoint() * sets[0][0] * u2, sets[1][0]) < 1e-12);
  CHECK(max_abs_diff(u2.adjoint() * sets[0][1] * u2, sets[1][1]) < 1e-12);
}

TEST_CASE("one-axis twisting maps basis 2 to bases 3 and 4") {
  const MubFamily f = build_mub(3);
  const TwistCheck t = twist_map_check(f);
  CHECK(t.ok);
  CHECK(t.residual_third < 1e-12);
  CHECK(t.residual_fourth < 1e-12);
  CHECK(twist_residual(f, 0.4, 3) > 0.01);
  CHECK_THROWS_AS(twist_map_check(build_mub(5)), Error);
}

TEST_CASE("ray sets ignore phases and order") {
  const MubFamily f = build_mub(5);
  ComplexMatrix shuffled(5);
  for (std::size_t c = 0; c < 5; ++c)
    for (std::size_t r = 0; r < 5; ++r) shuffled(r, (c + 2) % 5) = std::polar(1.0, 0.3 * c) * f.bases[2](r, c);
  CHECK(rays_equal(ray_set(f.bases[2]), ray_set(shuffled)));
  CHECK_FALSE(rays_equal(ray_set(f.bases[2]), ray_set(f.bases[3])));
}

TEST_CASE("joint_eigenbasis rejects tuples outside the alphabet") {
  const auto sets = fixtures::operator_sets(3);
  const Alphabet wrong{{1.0, 1.0}, {0.0, 0.0}, {-1.0, 1.0}};
  CHECK_THROWS_AS(joint_eigenbasis(sets[1], wrong), Error);
}
