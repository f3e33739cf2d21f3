#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rigidity/cli.hpp"
#include "rigidity/errors.hpp"
#include "rigidity/format.hpp"

namespace {

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = rigidity::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content = "") {
    path = std::string("/tmp/rigidity_test_") + name;
    if (!content.empty()) {
      std::ofstream f(path);
      f << content;
    }
  }
  ~TempFile() { std::remove(path.c_str()); }
  std::string read() const {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }
};

}  // namespace

TEST_CASE("eval on a builtin matches the hand-evaluated matrix") {
  const RunResult r = run({"eval", "--builtin", "j1j2_square", "--k", "0,0", "--quiet"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("0.000000000000e+00+0.000000000000e+00i") != std::string::npos);
  CHECK(r.out.find("4.000000000000e+00+0.000000000000e+00i") != std::string::npos);
}

TEST_CASE("identical invocations are byte-identical") {
  const std::vector<std::string> args = {"report", "--builtin", "pyrochlore"};
  const RunResult a = run(args);
  const RunResult b = run(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("report on pyrochlore states two trivial blocks") {
  const RunResult r = run({"report", "--builtin", "pyrochlore"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("independent blocks: 2") != std::string::npos);
  CHECK(r.out.find("AIII/BDI, nu = 2 (|nu| = 2), d = 3, m = 4") != std::string::npos);
  CHECK(r.out.find("-> ") != std::string::npos);
  // both block verdicts are trivial
  CHECK(r.out.find("Z\n") == std::string::npos);
}

TEST_CASE("report on j1j2 carries the Z verdict") {
  const RunResult r = run({"report", "--builtin", "j1j2_square"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("->  Z ") != std::string::npos);
}

TEST_CASE("classify subcommand prints the verdict literal first") {
  const RunResult r = run({"classify", "--class", "AIII", "--nu", "0", "--d", "6", "--m", "3"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("Z_6\n", 0) == 0);
}

TEST_CASE("classify maps bad queries to exit 2") {
  const RunResult r = run({"classify", "--class", "AIII/CII", "--nu", "3", "--d", "2", "--m", "6"});
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("error: input:") == 0);
}

TEST_CASE("usage errors exit 1") {
  const RunResult r = run({"classify", "--nu", "0"});
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("error: usage:") == 0);
}

TEST_CASE("gap closure on a winding loop exits 3") {
  const RunResult r = run({"invariant", "--builtin", "j1j2_square", "--loop", "axis=0;fixed=0",
                           "--resolution", "64"});
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("error: numerical: gap closure") == 0);
}

TEST_CASE("build then eval round trip through a coefficient file") {
  TempFile coeffs("coeffs.json");
  const RunResult build = run({"build", "--builtin", "pyrochlore", "--out", coeffs.path});
  CHECK(build.exit_code == 0);
  const RunResult eval =
      run({"eval", "--coeffs", coeffs.path, "--k", "0,0,0", "--quiet"});
  CHECK(eval.exit_code == 0);
  CHECK(eval.out.find("1.000000000000e+00") != std::string::npos);
}

TEST_CASE("class subcommand") {
  const RunResult r = run({"class", "--builtin", "pyrochlore"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("class: AIII/BDI") == 0);
  CHECK(r.out.find("bdi_residual: 0.000000000000e+00") != std::string::npos);
}

TEST_CASE("verify with the builtin rotation spec") {
  const RunResult pass = run({"verify", "--builtin", "square_anisotropic_nnn", "--spec",
                              "builtin:aniso-rotation-a", "--grid", "16"});
  CHECK(pass.exit_code == 0);
  CHECK(pass.out.find("verify: PASS") == 0);
  const RunResult fail = run({"verify", "--builtin", "square_anisotropic_nnn", "--spec",
                              "builtin:aniso-rotation-b", "--grid", "16"});
  CHECK(fail.exit_code == 0);
  CHECK(fail.out.find("verify: FAIL") == 0);
}

TEST_CASE("gapmap writes CSV with the unit header") {
  TempFile csv("gap.csv");
  const RunResult r = run({"gapmap", "--builtin", "j1j2_square", "--grid", "8", "--out",
                           csv.path, "--quiet"});
  CHECK(r.exit_code == 0);
  const std::string content = csv.read();
  CHECK(content.find("# momenta in radians") == 0);
  CHECK(content.find("k1,k2,sigma1,sigma2,rank") != std::string::npos);
}

TEST_CASE("gnuplot script generation") {
  TempFile csv("gap2.csv");
  TempFile gp("gap2.gp");
  const RunResult r = run({"gapmap", "--builtin", "j1j2_square", "--grid", "4", "--out",
                           csv.path, "--gnuplot", gp.path});
  CHECK(r.exit_code == 0);
  CHECK(gp.read().find("set datafile separator ','") != std::string::npos);
}

TEST_CASE("zeros subcommand lists the locus") {
  TempFile csv("zeros.csv");
  const RunResult r = run({"zeros", "--builtin", "j1j2_square", "--grid", "16", "--out",
                           csv.path});
  CHECK(r.exit_code == 0);
  // header + comment + 31 rows
  int lines = 0;
  std::stringstream ss(csv.read());
  std::string line;
  while (std::getline(ss, line)) ++lines;
  CHECK(lines == 33);
}

TEST_CASE("flatten refuses the zero locus with exit 3") {
  const RunResult r = run({"flatten", "--builtin", "j1j2_square", "--k", "0,0"});
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("error: numerical:") == 0);
}

TEST_CASE("derive prints a trace and the result") {
  const RunResult r = run({"derive", "--query", "pi0 (Omega^1 V_1(C^1))^Z2 [BDI]"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("lemma:") != std::string::npos);
  CHECK(r.out.find("result: up-to-extension {Z, Z + Z_2}") != std::string::npos);

  const RunResult hinted = run({"derive", "--query", "pi0 (Omega^1 V_1(C^1))^Z2 [BDI]",
                                "--hint", "pair@level0=Z"});
  CHECK(hinted.out.find("result: determined Z") != std::string::npos);
}

TEST_CASE("verify accepts a spec file") {
  TempFile spec("bdi_spec.json", R"({
    "u_m": {"re": [[1,0],[0,1]], "im": [[0,0],[0,0]]},
    "u_n": {"re": [[1,0],[0,1]], "im": [[0,0],[0,0]]},
    "antiunitary": true})");
  const RunResult r = run({"verify", "--builtin", "j1j2_square", "--spec", spec.path,
                           "--grid", "8"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("verify: PASS") == 0);
}

TEST_CASE("derive accepts a user data file") {
  // an intentionally wrong pi1(O(1)) blocks the injectivity flank: the pair
  // slot can no longer be pinned down by exactness alone
  TempFile data("groups_user.json", R"({"entries": [
    {"space": "real", "pi": 1, "match": "n==1 && m==1", "group": "Z",
     "provenance": "user: deliberately nonstandard for testing"},
    {"space": "real", "pi": 0, "match": "n==1 && m==1", "group": "Z_2",
     "group_structure": true, "provenance": "user"}]})");
  const RunResult r = run({"derive", "--query", "pi0 (Omega^1 V_1(C^1))^Z2 [BDI]",
                           "--data", data.path, "--quiet"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("result: unknown") != std::string::npos);
}

TEST_CASE("trim signs through the CLI") {
  TempFile coeffs("mono.json", R"({"rows":1,"cols":1,"dim":1,"coeffs":[
      {"offset":[1],"matrix_re":[[1.0]],"matrix_im":[[0.0]]}]})");
  const RunResult r = run({"invariant", "--coeffs", coeffs.path, "--trim-signs"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("trim (0.000000): +1") != std::string::npos);
  CHECK(r.out.find("trim (3.141593): -1") != std::string::npos);
}

TEST_CASE("config file overrides defaults") {
  TempFile config("config.json", R"({"grid_d2": 4})");
  TempFile csv("gap3.csv");
  const RunResult r = run({"gapmap", "--builtin", "j1j2_square", "--config", config.path,
                           "--out", csv.path});
  CHECK(r.exit_code == 0);
  int lines = 0;
  std::stringstream ss(csv.read());
  std::string line;
  while (std::getline(ss, line)) ++lines;
  CHECK(lines == 2 + 16);  // comment + header + 4x4 grid
}

TEST_CASE("unknown config keys are rejected") {
  TempFile config("bad_config.json", R"({"grid": 4})");
  const RunResult r = run({"class", "--builtin", "j1j2_square", "--config", config.path});
  CHECK(r.exit_code == 2);
}

TEST_CASE("RIGIDITY_CONFIG environment override") {
  TempFile config("env_config.json", R"({"grid_d2": 6})");
  setenv("RIGIDITY_CONFIG", config.path.c_str(), 1);
  TempFile csv("gap_env.csv");
  const RunResult r =
      run({"gapmap", "--builtin", "j1j2_square", "--out", csv.path, "--quiet"});
  unsetenv("RIGIDITY_CONFIG");
  CHECK(r.exit_code == 0);
  int lines = 0;
  std::stringstream ss(csv.read());
  std::string line;
  while (std::getline(ss, line)) ++lines;
  CHECK(lines == 2 + 36);  // comment + header + 6x6 grid
}

TEST_CASE("missing input file is an input error") {
  const RunResult r = run({"eval", "--coeffs", "/nonexistent/path.json", "--k", "0"});
  CHECK(r.exit_code == 2);
}

TEST_CASE("a user model file runs through the whole pipeline") {
  // 1d antiferromagnetic dimer chain: one bond constraint per two-site cell
  TempFile model("dimer.json", R"({
    "name": "dimer_chain", "dim": 1, "sublattices": 2,
    "constraints": [
      { "label": "bond", "terms": [
        { "sublattice": 0, "offset": [0], "coeff": 1.0, "spin_sign": 1 },
        { "sublattice": 1, "offset": [0], "coeff": 1.0, "spin_sign": -1 }
      ]}
    ]})");
  const RunResult r = run({"report", "--model", model.path});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("model: dimer_chain") == 0);
  CHECK(r.out.find("matrix 2x4, nu = N - M = 2") != std::string::npos);
  // two 1x2 channel blocks, each |nu| = 1 >= ceil(1/2): trivial
  CHECK(r.out.find("independent blocks: 2") != std::string::npos);
  CHECK(r.out.find("nu = 1 (|nu| = 1), d = 1, m = 2  ->  0") != std::string::npos);
}

TEST_CASE("report accepts a bare coefficient file") {
  TempFile coeffs("report_coeffs.json");
  CHECK(run({"build", "--builtin", "pyrochlore", "--out", coeffs.path, "--quiet"}).exit_code == 0);
  const RunResult r = run({"report", "--coeffs", coeffs.path});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("independent blocks: 2") != std::string::npos);
}

TEST_CASE("report --json emits a machine-readable mirror") {
  const RunResult r = run({"report", "--builtin", "j1j2_square", "--json"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"verdict\": \"Z\"") != std::string::npos);
  CHECK(r.out.find("\"provenance\"") != std::string::npos);
  const RunResult again = run({"report", "--builtin", "j1j2_square", "--json"});
  CHECK(r.out == again.out);
}

TEST_CASE("momentum grammar accepts pi expressions") {
  using rigidity::parse_momentum_list;
  const auto k = parse_momentum_list("pi, -pi/2, 0.25, 2pi/3");
  REQUIRE(k.size() == 4);
  CHECK(k[0] == doctest::Approx(M_PI));
  CHECK(k[1] == doctest::Approx(-M_PI / 2));
  CHECK(k[2] == doctest::Approx(0.25));
  CHECK(k[3] == doctest::Approx(2 * M_PI / 3));
  CHECK_THROWS_AS(parse_momentum_list("pie"), rigidity::input_error);
  CHECK_THROWS_AS(parse_momentum_list(""), rigidity::input_error);
}

TEST_CASE("selftest subcommand runs the acceptance suite") {
  const RunResult r = run({"selftest"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("criterion 1 PASS") != std::string::npos);
  CHECK(r.out.find("all criteria passed") != std::string::npos);
}
