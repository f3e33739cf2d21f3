#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rigidity/linearize.hpp"
#include "rigidity/model.hpp"
#include "rigidity/polynomial.hpp"
#include "rigidity/reference_forms.hpp"
#include "test_helpers.hpp"

using namespace rigidity;
using rigidity::testing::random_momentum;
using rigidity::testing::random_polynomial;

namespace {

const RigidityPolynomial& j1j2() {
  static const RigidityPolynomial r = reference::j1j2_matrix();
  return r;
}

}  // namespace

TEST_CASE("momentum reduction to (-pi, pi]") {
  CHECK(Momentum({3 * M_PI}).k[0] == doctest::Approx(M_PI).epsilon(1e-12));
  CHECK(Momentum({-M_PI}).k[0] == doctest::Approx(M_PI).epsilon(1e-12));
  CHECK(Momentum({0.5}).k[0] == doctest::Approx(0.5));
  CHECK(Momentum({-2 * M_PI}).k[0] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("evaluation matches direct term-by-term arithmetic") {
  // oracle: complex arithmetic on the two diagonal channels
  auto ch_minus = [](double kx, double ky) {
    return 1.0 - std::polar(1.0, kx) - std::polar(1.0, ky) + std::polar(1.0, kx + ky);
  };
  auto ch_plus = [](double kx, double ky) {
    return 1.0 + std::polar(1.0, kx) + std::polar(1.0, ky) + std::polar(1.0, kx + ky);
  };

  SUBCASE("k = (0,0) gives diag(0, 4)") {
    const Matrix m = j1j2().evaluate(Momentum({0.0, 0.0}));
    CHECK(std::abs(m(0, 0)) < 1e-15);
    CHECK(std::abs(m(1, 1) - Complex(4.0, 0.0)) < 1e-15);
    CHECK(std::abs(m(0, 1)) == 0.0);
    CHECK(std::abs(m(1, 0)) == 0.0);
  }
  SUBCASE("k = (pi,pi) gives diag(4, 0)") {
    const Matrix m = j1j2().evaluate(Momentum({M_PI, M_PI}));
    CHECK(std::abs(m(0, 0) - Complex(4.0, 0.0)) < 1e-12);
    CHECK(std::abs(m(1, 1)) < 1e-12);
  }
  SUBCASE("random momenta agree with the oracle") {
    std::mt19937 rng(42u);
    for (int trial = 0; trial < 50; ++trial) {
      const Momentum k = random_momentum(2, rng);
      const Matrix m = j1j2().evaluate(k);
      CHECK(std::abs(m(0, 0) - ch_minus(k.k[0], k.k[1])) < 1e-13);
      CHECK(std::abs(m(1, 1) - ch_plus(k.k[0], k.k[1])) < 1e-13);
    }
  }
  SUBCASE("strict accumulation agrees") {
    std::mt19937 rng(43u);
    const Momentum k = random_momentum(2, rng);
    CHECK((j1j2().evaluate(k, true) - j1j2().evaluate(k)).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("empty coefficient map evaluates to zero") {
  const RigidityPolynomial zero(3, 2, 1);
  CHECK(zero.evaluate(Momentum({0.7})).isZero(0.0));
}

TEST_CASE("normalized support drops exact-zero coefficients") {
  RigidityPolynomial r(1, 1, 1);
  r.add_entry({0}, 0, 0, 1.0);
  r.add_entry({0}, 0, 0, -1.0);
  CHECK(r.coeffs().empty());
}

TEST_CASE("dagger") {
  SUBCASE("monomial e^{ik} maps to e^{-ik} with adjoint coefficients") {
    RigidityPolynomial r(1, 1, 1);
    r.add_entry({1}, 0, 0, Complex(0.0, 2.0));
    const RigidityPolynomial rd = r.dagger();
    REQUIRE(rd.coeffs().count(Offset{-1}) == 1);
    CHECK(rd.coeffs().at(Offset{-1})(0, 0) == Complex(0.0, -2.0));
  }
  SUBCASE("involution") {
    std::mt19937 rng(7u);
    const RigidityPolynomial r = random_polynomial(2, 2, 2, 4, rng);
    const RigidityPolynomial rdd = r.dagger().dagger();
    CHECK(r.coeffs().size() == rdd.coeffs().size());
    for (const auto& [offset, coeff] : r.coeffs())
      CHECK((rdd.coeffs().at(offset) - coeff).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("pointwise adjoint at 50 momenta") {
    std::mt19937 rng(8u);
    const RigidityPolynomial r = random_polynomial(3, 2, 1, 4, rng);
    const RigidityPolynomial rd = r.dagger();
    for (int trial = 0; trial < 50; ++trial) {
      const Momentum k = random_momentum(1, rng);
      const Matrix lhs = rd.evaluate(k);
      const Matrix rhs = r.evaluate(k).adjoint();
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-13);
    }
  }
}

TEST_CASE("restrict_block") {
  const RigidityPolynomial pyro_channel = reference::pyrochlore_channel_matrix();
  SUBCASE("first channel-ordered 2x4 block") {
    const RigidityPolynomial block = pyro_channel.restrict_block(0, 2, 0, 4);
    CHECK(block.rows() == 2);
    CHECK(block.cols() == 4);
    const Matrix at0 = block.evaluate(Momentum({0.0, 0.0, 0.0}));
    CHECK(at0(0, 0) == Complex(1.0, 0.0));
    CHECK(at0(0, 1) == Complex(-1.0, 0.0));
    CHECK(std::abs(at0(1, 3) - Complex(-1.0, 0.0)) < 1e-15);
  }
  SUBCASE("full range is the identity operation") {
    const RigidityPolynomial same = pyro_channel.restrict_block(0, 4, 0, 8);
    CHECK(same.coeffs().size() == pyro_channel.coeffs().size());
    for (const auto& [offset, coeff] : pyro_channel.coeffs())
      CHECK(same.coeffs().at(offset) == coeff);
  }
  SUBCASE("anisotropic first 6x2 block") {
    const RigidityPolynomial aniso = reference::anisotropic_channel_matrix();
    const RigidityPolynomial block = aniso.restrict_block(0, 6, 0, 2);
    CHECK(block.rows() == 6);
    CHECK(block.cols() == 2);
    // row 4 is 1 - e^{-ik1} on the second column
    const Matrix at = block.evaluate(Momentum({0.9, 0.3}));
    CHECK(std::abs(at(4, 1) - (1.0 - std::polar(1.0, -0.9))) < 1e-14);
  }
  SUBCASE("out of range throws") {
    CHECK_THROWS_AS(pyro_channel.restrict_block(0, 5, 0, 8), input_error);
    CHECK_THROWS_AS(pyro_channel.restrict_block(2, 2, 0, 8), input_error);
  }
}

TEST_CASE("periodicity across reciprocal lattice shifts") {
  std::mt19937 rng(11u);
  const RigidityPolynomial r = random_polynomial(2, 3, 3, 5, rng);
  for (int trial = 0; trial < 20; ++trial) {
    const Momentum k = random_momentum(3, rng);
    for (int axis = 0; axis < 3; ++axis) {
      std::vector<double> shifted = k.k;
      shifted[axis] += 2.0 * M_PI;
      const Matrix a = r.evaluate(k);
      const Matrix b = r.evaluate(Momentum(shifted));
      CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("evaluation is linear in the coefficient map") {
  std::mt19937 rng(13u);
  RigidityPolynomial a = random_polynomial(2, 2, 2, 3, rng);
  RigidityPolynomial b = random_polynomial(2, 2, 2, 3, rng);
  RigidityPolynomial sum(2, 2, 2);
  for (const auto& [offset, coeff] : a.coeffs()) sum.add_term(offset, coeff);
  for (const auto& [offset, coeff] : b.coeffs()) sum.add_term(offset, coeff);
  const Momentum k = random_momentum(2, rng);
  CHECK((sum.evaluate(k) - (a.evaluate(k) + b.evaluate(k))).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("JSON round trip") {
  std::mt19937 rng(17u);
  const RigidityPolynomial r = random_polynomial(3, 4, 2, 5, rng);
  const RigidityPolynomial back = RigidityPolynomial::from_json(r.to_json());
  CHECK(back.rows() == r.rows());
  CHECK(back.cols() == r.cols());
  CHECK(back.dim() == r.dim());
  REQUIRE(back.coeffs().size() == r.coeffs().size());
  for (const auto& [offset, coeff] : r.coeffs())
    CHECK((back.coeffs().at(offset) - coeff).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("JSON rejects malformed input") {
  CHECK_THROWS_AS(RigidityPolynomial::from_json("{"), input_error);
  CHECK_THROWS_AS(RigidityPolynomial::from_json("{\"rows\": 1}"), input_error);
}

TEST_CASE("momentum dimension mismatch") {
  CHECK_THROWS_AS(j1j2().evaluate(Momentum({0.0})), input_error);
}

TEST_CASE("permuted applies row and column reorderings") {
  const RigidityPolynomial aniso = linearize_collinear(builtin_model("square_anisotropic_nnn"));
  const RigidityPolynomial channel =
      aniso.permuted(reference::channel_row_perm(6), reference::channel_col_perm(2));
  std::mt19937 rng(23u);
  const Momentum k = random_momentum(2, rng);
  const Matrix a = aniso.evaluate(k);
  const Matrix b = channel.evaluate(k);
  const auto rp = reference::channel_row_perm(6);
  const auto cp = reference::channel_col_perm(2);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 4; ++j) CHECK(b(i, j) == a(rp[i], cp[j]));
}
