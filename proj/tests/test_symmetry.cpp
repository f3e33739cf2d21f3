#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rigidity/linearize.hpp"
#include "rigidity/model.hpp"
#include "rigidity/symmetry.hpp"
#include "test_helpers.hpp"

using namespace rigidity;
using rigidity::testing::random_momentum;

namespace {

RigidityPolynomial quaternionic_family(std::mt19937& rng) {
  // per-coefficient quaternion form [[p, q], [-conj q, conj p]]
  std::normal_distribution<double> gauss(0.0, 1.0);
  RigidityPolynomial r(2, 2, 1);
  for (int x = -1; x <= 1; ++x) {
    const Complex p(gauss(rng), gauss(rng));
    const Complex q(gauss(rng), gauss(rng));
    Matrix c(2, 2);
    c << p, q, -std::conj(q), std::conj(p);
    r.add_term({x}, c);
  }
  return r;
}

}  // namespace

TEST_CASE("class detection on the builtins") {
  for (const char* name : {"j1j2_square", "pyrochlore", "square_anisotropic_nnn"}) {
    const ClassEvidence ev = detect_class(linearize_collinear(builtin_model(name)));
    CHECK(ev.symmetry_class == SymmetryClass::AIII_BDI);
    CHECK(ev.bdi_residual == 0.0);
  }
}

TEST_CASE("1x1 family with coefficient i at offset 1 is AIII") {
  RigidityPolynomial r(1, 1, 1);
  r.add_entry({1}, 0, 0, Complex(0.0, 1.0));
  const ClassEvidence ev = detect_class(r);
  CHECK(ev.symmetry_class == SymmetryClass::AIII);
  CHECK(ev.bdi_residual == doctest::Approx(1.0));
  CHECK_FALSE(ev.cii_residual.has_value());  // 1x1 is not CII-admissible
}

TEST_CASE("quaternionic coefficients detect as AIII/CII") {
  std::mt19937 rng(31u);
  const RigidityPolynomial r = quaternionic_family(rng);
  const ClassEvidence ev = detect_class(r);
  CHECK(ev.symmetry_class == SymmetryClass::AIII_CII);
  REQUIRE(ev.cii_residual.has_value());
  CHECK(*ev.cii_residual < 1e-15);
}

TEST_CASE("detection is invariant under positive rescaling") {
  RigidityPolynomial r(1, 1, 1);
  r.add_entry({1}, 0, 0, Complex(1.0, 0.3));
  RigidityPolynomial scaled(1, 1, 1);
  scaled.add_entry({1}, 0, 0, Complex(1e-8, 0.3e-8));
  const ClassEvidence a = detect_class(r);
  const ClassEvidence b = detect_class(scaled);
  CHECK(a.symmetry_class == b.symmetry_class);
  CHECK(a.bdi_residual == doctest::Approx(b.bdi_residual).epsilon(1e-12));
}

TEST_CASE("equivariance verification") {
  const RigidityPolynomial j1j2 = linearize_collinear(builtin_model("j1j2_square"));
  SUBCASE("BDI identity spec passes") {
    const VerifyResult result =
        verify_equivariance(j1j2, builtin_equivariance_spec("bdi", 2, 2), 16, 1e-12);
    CHECK(result.pass);
    CHECK(result.max_residual < 1e-14);
  }
  SUBCASE("CII spec on j1j2 fails with residual at least 2") {
    const VerifyResult result =
        verify_equivariance(j1j2, builtin_equivariance_spec("cii", 2, 2), 16, 1e-10);
    CHECK_FALSE(result.pass);
    CHECK(result.max_residual >= 2.0);
    // the sigma_2 conjugation defect at coefficient level is exactly 2
    const ClassEvidence ev = detect_class(j1j2);
    REQUIRE(ev.cii_residual.has_value());
    CHECK(*ev.cii_residual == doctest::Approx(2.0).epsilon(1e-14));
  }
  SUBCASE("dimension mismatch is an error") {
    CHECK_THROWS_AS(
        verify_equivariance(j1j2, builtin_equivariance_spec("bdi", 4, 4), 8, 1e-10),
        input_error);
  }
  SUBCASE("odd shapes refuse a CII spec") {
    CHECK_THROWS_WITH_AS(builtin_equivariance_spec("cii", 3, 3),
                         doctest::Contains("even"), input_error);
  }
}

TEST_CASE("rotation-derived equivariance of the anisotropic builtin") {
  const RigidityPolynomial aniso = linearize_collinear(builtin_model("square_anisotropic_nnn"));
  const VerifyResult variant_a =
      verify_equivariance(aniso, builtin_equivariance_spec("aniso-rotation-a", 12, 4), 16, 1e-12);
  const VerifyResult variant_b =
      verify_equivariance(aniso, builtin_equivariance_spec("aniso-rotation-b", 12, 4), 16, 1e-12);
  CHECK(variant_a.pass);            // the printed sign variant holds
  CHECK_FALSE(variant_b.pass);      // the globally negated variant does not
  CHECK(variant_b.max_residual > 1.0);
}

TEST_CASE("verification residual is symmetric under k <-> -k") {
  const RigidityPolynomial aniso = linearize_collinear(builtin_model("square_anisotropic_nnn"));
  const EquivarianceSpec spec = builtin_equivariance_spec("aniso-rotation-b", 12, 4);
  std::mt19937 rng(37u);
  for (int trial = 0; trial < 20; ++trial) {
    const Momentum k = random_momentum(2, rng);
    auto residual = [&](const Momentum& kk) {
      const Matrix image = spec.antiunitary ? Matrix(aniso.evaluate(kk).conjugate())
                                            : aniso.evaluate(kk);
      return (aniso.evaluate(kk.negated()) - spec.u_m * image * spec.u_n.adjoint()).norm();
    };
    CHECK(residual(k) == doctest::Approx(residual(k.negated())).epsilon(1e-10));
  }
}

TEST_CASE("TRIM enumeration") {
  SUBCASE("d = 1") {
    const auto t = trims(1);
    REQUIRE(t.size() == 2);
    CHECK(t[0].k[0] == 0.0);
    CHECK(t[1].k[0] == doctest::Approx(M_PI));
  }
  SUBCASE("d = 2 lexicographic") {
    const auto t = trims(2);
    REQUIRE(t.size() == 4);
    CHECK((t[0].k[0] == 0.0 && t[0].k[1] == 0.0));
    CHECK((t[1].k[0] == 0.0 && t[1].k[1] == doctest::Approx(M_PI)));
    CHECK((t[2].k[0] == doctest::Approx(M_PI) && t[2].k[1] == 0.0));
    CHECK((t[3].k[0] == doctest::Approx(M_PI) && t[3].k[1] == doctest::Approx(M_PI)));
  }
  SUBCASE("d = 3 has 8 points") { CHECK(trims(3).size() == 8); }
  SUBCASE("d out of range") { CHECK_THROWS_AS(trims(7), input_error); }
}

TEST_CASE("fixed-point form at TRIMs") {
  const RigidityPolynomial j1j2 = linearize_collinear(builtin_model("j1j2_square"));
  SUBCASE("j1j2 at (pi, pi) is real with residual 0") {
    const TrimFormReport report =
        trim_fixed_form(j1j2, Momentum({M_PI, M_PI}), SymmetryClass::AIII_BDI, 1e-10);
    CHECK(report.pass);
    CHECK(report.residual <= 1e-12);
    const Matrix at = j1j2.evaluate(Momentum({M_PI, M_PI}));
    CHECK(std::abs(at(0, 0) - Complex(4.0, 0.0)) < 1e-12);
    CHECK(std::abs(at(1, 1)) < 1e-12);
  }
  SUBCASE("pyrochlore at the origin") {
    const RigidityPolynomial pyro = linearize_collinear(builtin_model("pyrochlore"));
    const TrimFormReport report =
        trim_fixed_form(pyro, Momentum({0.0, 0.0, 0.0}), SymmetryClass::AIII_BDI, 1e-10);
    CHECK(report.pass);
    CHECK(report.residual < 1e-14);
  }
  SUBCASE("AIII has no fixed-point form") {
    CHECK_THROWS_WITH_AS(
        trim_fixed_form(j1j2, Momentum({0.0, 0.0}), SymmetryClass::AIII, 1e-10),
        doctest::Contains("no fixed-point form"), input_error);
  }
  SUBCASE("non-TRIM momentum is rejected") {
    CHECK_THROWS_AS(
        trim_fixed_form(j1j2, Momentum({0.5, 0.0}), SymmetryClass::AIII_BDI, 1e-10),
        input_error);
  }
  SUBCASE("CII quaternionic condition at a TRIM") {
    std::mt19937 rng(41u);
    const RigidityPolynomial q = quaternionic_family(rng);
    const TrimFormReport report =
        trim_fixed_form(q, Momentum({M_PI}), SymmetryClass::AIII_CII, 1e-10);
    CHECK(report.pass);
  }
}

TEST_CASE("equivariance spec JSON round trip") {
  const EquivarianceSpec spec = builtin_equivariance_spec("aniso-rotation-a", 12, 4);
  const EquivarianceSpec back = EquivarianceSpec::from_json(spec.to_json());
  CHECK(back.antiunitary == spec.antiunitary);
  CHECK((back.u_m - spec.u_m).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.u_n - spec.u_n).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("non-unitary spec is rejected") {
  CHECK_THROWS_WITH_AS(EquivarianceSpec::from_json(
                           R"({"u_m": {"re": [[2]], "im": [[0]]},
                               "u_n": {"re": [[1]], "im": [[0]]},
                               "antiunitary": true})"),
                       doctest::Contains("unitary"), input_error);
}
