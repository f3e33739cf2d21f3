#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "rigidity/classify.hpp"
#include "rigidity/linearize.hpp"
#include "rigidity/model.hpp"

using namespace rigidity;

namespace {

std::string verdict_of(SymmetryClass symclass, int nu, int d, int m) {
  return classify({symclass, nu, d, m}).verdict.to_string();
}

}  // namespace

TEST_CASE("spot checks against the stored tables") {
  CHECK(verdict_of(SymmetryClass::AIII_BDI, 0, 2, 4) == "Z");
  CHECK(verdict_of(SymmetryClass::AIII_BDI, 0, 3, 5) == "star");
  CHECK(verdict_of(SymmetryClass::AIII_CII, 2, 3, 6) == "0");
  CHECK(verdict_of(SymmetryClass::AIII, 2, 5, 4) == "Z");
  CHECK(verdict_of(SymmetryClass::AIII, 0, 6, 2) == "Z_12");
  CHECK(verdict_of(SymmetryClass::AIII, 0, 6, 3) == "Z_6");
  CHECK(verdict_of(SymmetryClass::AIII, 0, 6, 5) == "0");
  CHECK(verdict_of(SymmetryClass::AIII, 1, 4, 2) == "Z_2");
  CHECK(verdict_of(SymmetryClass::AIII, 1, 5, 2) == "Z_2");
}

TEST_CASE("rule precedence") {
  SUBCASE("degenerate target n = 0 beats everything") {
    const Classification c = classify({SymmetryClass::AIII_BDI, 2, 3, 2});
    CHECK(c.verdict.kind == GroupOrStar::kDegenerate);
    CHECK(c.verdict.is_trivial_like());
    CHECK(c.provenance.find("degenerate") != std::string::npos);
  }
  SUBCASE("equivariant triviality above half the dimension") {
    const Classification c = classify({SymmetryClass::AIII_BDI, 2, 3, 4});
    CHECK(c.verdict.to_string() == "0");
    CHECK(c.provenance.find("ceil") != std::string::npos);
  }
  SUBCASE("BDI circle rule holds in every dimension, including d > 3") {
    for (int d = 1; d <= 6; ++d) {
      const Classification c = classify({SymmetryClass::AIII_BDI, 0, d, 1});
      CHECK(c.verdict.to_string() == "Z");
      CHECK(c.provenance.find("circle") != std::string::npos);
    }
  }
  SUBCASE("AIII circle caption: pi_d(S^1) = 0 for d >= 2") {
    CHECK(verdict_of(SymmetryClass::AIII, 0, 1, 1) == "Z");
    for (int d = 3; d <= 6; ++d) {
      const Classification c = classify({SymmetryClass::AIII, 0, d, 1});
      CHECK(c.verdict.to_string() == "0");
      CHECK(c.provenance.find("caption") != std::string::npos);
    }
  }
  SUBCASE("the provenance note names exactly one rule or cell") {
    const Classification c = classify({SymmetryClass::AIII_BDI, 0, 2, 4});
    CHECK(c.provenance == "table2a[nu=0,d=2]");
  }
}

TEST_CASE("query validation") {
  CHECK_THROWS_WITH_AS(classify({SymmetryClass::AIII_CII, 3, 2, 6}),
                       doctest::Contains("forces nu even"), input_error);
  CHECK_THROWS_WITH_AS(classify({SymmetryClass::AIII_CII, 2, 2, 5}),
                       doctest::Contains("even frame dimension"), input_error);
  CHECK_THROWS_AS(classify({SymmetryClass::AIII, 0, 7, 2}), input_error);
  CHECK_THROWS_AS(classify({SymmetryClass::AIII, 4, 2, 2}), input_error);  // n < 0
  // BDI above d = 3 with small |nu| is genuinely untabulated
  CHECK_THROWS_WITH_AS(classify({SymmetryClass::AIII_BDI, 1, 4, 3}),
                       doctest::Contains("outside tabulated range"), input_error);
}

TEST_CASE("every stored cell is consistent with the rule pipeline") {
  for (const auto& cell : classification_table_cells()) {
    const SymmetryClass symclass = cell.table == "table2a" ? SymmetryClass::AIII_BDI
                                   : cell.table == "table2b" ? SymmetryClass::AIII_CII
                                                             : SymmetryClass::AIII;
    // one representative (nu, m) per cell
    int nu = cell.nu_selector.rfind(">=", 0) == 0 ? std::stoi(cell.nu_selector.substr(2))
                                                  : std::stoi(cell.nu_selector);
    if (cell.table == "table2b" && nu % 2) ++nu;
    std::vector<int> m_options;
    if (cell.m_selector == "any") m_options = {nu + 1, nu + 2};
    else if (cell.m_selector.rfind(">=", 0) == 0) {
      const int lo = std::stoi(cell.m_selector.substr(2));
      m_options = {lo, lo + 2};
    } else m_options = {std::stoi(cell.m_selector)};
    for (int m : m_options) {
      if (m - nu < 1) continue;
      if (cell.table == "table2b" && m % 2) continue;
      const auto stored = table_cell(cell.table, nu, cell.d, m);
      REQUIRE(stored.has_value());
      const Classification ruled = classify({symclass, nu, cell.d, m});
      const std::string expect = stored->verdict.to_string();
      CHECK(ruled.verdict.to_string() == expect);
    }
  }
}

TEST_CASE("connectivity fallback never contradicts a stored cell") {
  // for every AIII cell, the connectivity regimes must agree where they apply
  for (const auto& cell : classification_table_cells()) {
    if (cell.table != "table3") continue;
    const int nu = cell.nu_selector.rfind(">=", 0) == 0
                       ? std::stoi(cell.nu_selector.substr(2))
                       : std::stoi(cell.nu_selector);
    const std::string value = cell.value;
    if (cell.d <= 2 * nu) CHECK(value == "0");
    if (cell.d == 2 * nu + 1) CHECK(value == "Z");
  }
}

TEST_CASE("tables resource is versioned") { CHECK(tables_version() >= 1); }

TEST_CASE("classify_model") {
  SUBCASE("j1j2: whole-matrix verdict Z, channel blocks split") {
    const ModelClassification mc =
        classify_model(linearize_collinear(builtin_model("j1j2_square")));
    CHECK(mc.whole.symmetry_class == SymmetryClass::AIII_BDI);
    CHECK(mc.whole.abs_nu == 0);
    CHECK(mc.whole.m == 2);
    CHECK(mc.whole.result.verdict.to_string() == "Z");
    CHECK(mc.blocks.size() == 2);  // in-plane and out-of-plane channels decouple
    for (const auto& block : mc.blocks) CHECK(block.result.verdict.to_string() == "Z");
  }
  SUBCASE("pyrochlore: two 2x4 blocks, trivial verdicts") {
    const ModelClassification mc =
        classify_model(linearize_collinear(builtin_model("pyrochlore")));
    REQUIRE(mc.blocks.size() == 2);
    for (const auto& block : mc.blocks) {
      CHECK(block.rows == 2);
      CHECK(block.cols == 4);
      CHECK(block.symmetry_class == SymmetryClass::AIII_BDI);
      CHECK(block.nu_signed == 2);
      CHECK(block.m == 4);
      CHECK(block.result.verdict.is_trivial_like());
    }
    CHECK(mc.whole.result.verdict.is_trivial_like());
  }
  SUBCASE("anisotropic: two 6x2 blocks with |nu| = 4") {
    const ModelClassification mc =
        classify_model(linearize_collinear(builtin_model("square_anisotropic_nnn")));
    REQUIRE(mc.blocks.size() == 2);
    for (const auto& block : mc.blocks) {
      CHECK(block.rows == 6);
      CHECK(block.cols == 2);
      CHECK(block.nu_signed == -4);
      CHECK(block.abs_nu == 4);
      CHECK(block.m == 6);
      CHECK(block.result.verdict.is_trivial_like());
    }
  }
  SUBCASE("isolated columns become degenerate free-mode blocks") {
    RigidityPolynomial r(2, 3, 1);
    r.add_entry({0}, 0, 0, 1.0);
    r.add_entry({1}, 1, 1, 1.0);  // column 2 untouched
    const ModelClassification mc = classify_model(r);
    REQUIRE(mc.blocks.size() == 3);
    CHECK(mc.blocks[2].cols == 1);
    CHECK(mc.blocks[2].rows == 0);
    CHECK(mc.blocks[2].result.provenance.find("isolated-column") != std::string::npos);
  }
}

TEST_CASE("random models: blocks partition the matrix and verdicts resolve") {
  std::mt19937 rng(424242u);
  std::uniform_int_distribution<int> dim_dist(1, 3), subl_dist(1, 3), fam_dist(1, 3);
  std::uniform_int_distribution<int> terms_dist(1, 4), offset_dist(-1, 1), sign_dist(0, 1);
  std::uniform_real_distribution<double> coeff_dist(0.5, 2.0);
  for (int trial = 0; trial < 60; ++trial) {
    SpinModel model;
    model.name = "random";
    model.dim = dim_dist(rng);
    model.sublattices = subl_dist(rng);
    const int families = fam_dist(rng);
    for (int f = 0; f < families; ++f) {
      ConstraintFamily family;
      family.label = "f" + std::to_string(f);
      std::set<std::pair<int, Offset>> used;
      const int terms = terms_dist(rng);
      for (int t = 0; t < terms; ++t) {
        ConstraintTerm term;
        term.sublattice = std::uniform_int_distribution<int>(0, model.sublattices - 1)(rng);
        term.offset.resize(model.dim);
        for (int& x : term.offset) x = offset_dist(rng);
        if (!used.insert({term.sublattice, term.offset}).second) continue;
        term.coeff = coeff_dist(rng);
        term.spin_sign = sign_dist(rng) ? 1 : -1;
        family.terms.push_back(term);
      }
      if (family.terms.empty()) continue;
      model.constraints.push_back(family);
    }
    if (model.constraints.empty()) continue;
    REQUIRE(validate(model).empty());

    const RigidityPolynomial r = linearize_collinear(model);
    const ModelClassification mc = classify_model(r);

    std::vector<int> row_seen(r.rows(), 0), col_seen(r.cols(), 0);
    for (const auto& block : mc.blocks) {
      for (int i : block.row_indices) ++row_seen[i];
      for (int j : block.col_indices) ++col_seen[j];
      CHECK(block.result.provenance.size() > 0);
    }
    for (int c : row_seen) CHECK(c == 1);
    for (int c : col_seen) CHECK(c == 1);
    CHECK(mc.whole.symmetry_class == SymmetryClass::AIII_BDI);
  }
}

TEST_CASE("degenerate verdict is flagged distinctly from a stored 0") {
  const Classification degenerate = classify({SymmetryClass::AIII_BDI, 2, 1, 2});
  const Classification stored = classify({SymmetryClass::AIII_BDI, 2, 1, 3});
  CHECK(degenerate.verdict.kind == GroupOrStar::kDegenerate);
  CHECK(stored.verdict.kind == GroupOrStar::kGroup);
  CHECK(degenerate.verdict.is_trivial_like());
  CHECK(stored.verdict.is_trivial_like());
  CHECK(degenerate.verdict.to_string() != stored.verdict.to_string());
}
