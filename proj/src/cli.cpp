#include "rigidity/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "rigidity/classify.hpp"
#include "rigidity/config.hpp"
#include "rigidity/errors.hpp"
#include "rigidity/exactseq.hpp"
#include "rigidity/format.hpp"
#include "rigidity/invariants.hpp"
#include "rigidity/linearize.hpp"
#include "rigidity/model.hpp"
#include "rigidity/report.hpp"
#include "rigidity/selftest.hpp"
#include "rigidity/spectral.hpp"
#include "rigidity/symmetry.hpp"

namespace rigidity::cli {

namespace {

struct CommonOpts {
  std::string coeffs_path;
  std::string model_path;
  std::string builtin;
  std::string out_path;
  std::string config_path;
  bool quiet = false;
  bool json = false;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

RigidityPolynomial load_polynomial(const CommonOpts& opts) {
  const int sources = (!opts.coeffs_path.empty()) + (!opts.model_path.empty()) +
                      (!opts.builtin.empty());
  if (sources != 1)
    throw input_error("specify exactly one of --coeffs, --model, --builtin");
  if (!opts.coeffs_path.empty())
    return RigidityPolynomial::from_json(slurp(opts.coeffs_path));
  if (!opts.model_path.empty())
    return linearize_collinear(parse_model(slurp(opts.model_path)));
  return linearize_collinear(builtin_model(opts.builtin));
}

SpinModel load_model(const CommonOpts& opts) {
  const int sources = (!opts.model_path.empty()) + (!opts.builtin.empty());
  if (sources != 1) throw input_error("specify exactly one of --model, --builtin");
  if (!opts.model_path.empty()) return parse_model(slurp(opts.model_path));
  return builtin_model(opts.builtin);
}

// writes to --out when given, otherwise to the session stream
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_.emplace(path);
      if (!*file_) throw input_error("cannot write file: " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : fallback_; }

 private:
  std::optional<std::ofstream> file_;
  std::ostream& fallback_;
};

void add_source_options(CLI::App* cmd, CommonOpts& opts, bool with_coeffs = true) {
  if (with_coeffs) cmd->add_option("--coeffs", opts.coeffs_path, "coefficient JSON file");
  cmd->add_option("--model", opts.model_path, "model JSON file");
  cmd->add_option("--builtin", opts.builtin, "builtin model name");
}

void print_matrix(std::ostream& out, const Matrix& m) {
  for (int i = 0; i < m.rows(); ++i) {
    std::vector<std::string> cells;
    for (int j = 0; j < m.cols(); ++j) cells.push_back(fmt_complex(m(i, j)));
    out << join(cells, " ") << "\n";
  }
}

EquivarianceSpec load_spec(const std::string& spec_arg, const RigidityPolynomial& r) {
  const std::string prefix = "builtin:";
  if (spec_arg.rfind(prefix, 0) == 0)
    return builtin_equivariance_spec(spec_arg.substr(prefix.size()), r.rows(), r.cols());
  return EquivarianceSpec::from_json(slurp(spec_arg));
}

LoopSpec parse_loop(const std::string& text, int resolution) {
  int axis = -1;
  std::vector<double> fixed;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';')) {
    auto eq = part.find('=');
    if (eq == std::string::npos) throw input_error("bad loop spec part '" + part + "'");
    const std::string key = part.substr(0, eq);
    const std::string value = part.substr(eq + 1);
    if (key == "axis")
      axis = std::stoi(value);
    else if (key == "fixed")
      fixed = parse_momentum_list(value);
    else
      throw input_error("unknown loop spec key '" + key + "' (use axis=, fixed=)");
  }
  if (axis < 0) throw input_error("loop spec needs axis=<index>");
  return LoopSpec::axis_cycle(axis, fixed, resolution);
}

void write_gnuplot(const std::string& path, const std::string& csv, int dim, int n_sigmas) {
  std::ofstream gp(path);
  if (!gp) throw input_error("cannot write file: " + path);
  const int min_col = dim + n_sigmas;  // 1-based column of the smallest sigma
  gp << "# generated by rigidity gapmap; momenta in radians\n";
  gp << "set datafile separator ','\n";
  if (dim == 1) {
    gp << "set xlabel 'k1'\nset ylabel 'sigma_min'\n";
    gp << "plot '" << csv << "' using 1:" << min_col << " with lines title 'sigma_min'\n";
  } else {
    gp << "set xlabel 'k1'\nset ylabel 'k2'\n";
    if (dim > 2) gp << "# d > 2: slice or project the remaining axes before plotting\n";
    gp << "plot '" << csv << "' using 1:2:" << min_col
       << " with points palette pointtype 7 title 'sigma_min'\n";
  }
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"rigidity: spectra, symmetry classes and topological classification of "
               "lattice constraint matrices"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  CommonOpts opts;
  app.add_option("--config", opts.config_path, "JSON config file (see README)");
  app.add_flag("--quiet", opts.quiet, "suppress informational lines");
  app.add_flag("--json", opts.json, "machine-readable JSON output where supported");

  // build
  auto* cmd_build = app.add_subcommand("build", "linearize a model into coefficients");
  add_source_options(cmd_build, opts, false);
  cmd_build->add_option("--out", opts.out_path, "output coefficient JSON");

  // eval
  auto* cmd_eval = app.add_subcommand("eval", "evaluate the matrix at one momentum");
  add_source_options(cmd_eval, opts);
  std::string k_text;
  bool strict = false;
  cmd_eval->add_option("--k", k_text, "momentum, e.g. \"0.5,1.0\" or \"pi,0\"")->required();
  cmd_eval->add_flag("--strict", strict, "compensated accumulation");
  cmd_eval->add_option("--out", opts.out_path, "output file");

  // class
  auto* cmd_class = app.add_subcommand("class", "detect the symmetry class");
  add_source_options(cmd_class, opts);
  cmd_class->add_option("--out", opts.out_path, "output file");

  // verify
  auto* cmd_verify = app.add_subcommand("verify", "check an equivariance condition on a grid");
  add_source_options(cmd_verify, opts);
  std::string spec_arg;
  int verify_grid = 0;
  double verify_tol = -1.0;
  cmd_verify->add_option("--spec", spec_arg, "spec JSON file or builtin:<name>")->required();
  cmd_verify->add_option("--grid", verify_grid, "grid points per axis");
  cmd_verify->add_option("--tol", verify_tol, "residual tolerance");
  cmd_verify->add_option("--out", opts.out_path, "output file");

  // gapmap / zeros
  auto* cmd_gapmap = app.add_subcommand("gapmap", "singular spectra over a momentum grid (CSV)");
  add_source_options(cmd_gapmap, opts);
  int grid = 0;
  std::string gnuplot_path;
  cmd_gapmap->add_option("--grid", grid, "grid points per axis");
  cmd_gapmap->add_option("--out", opts.out_path, "output CSV");
  cmd_gapmap->add_option("--gnuplot", gnuplot_path, "also write a gnuplot script");

  auto* cmd_zeros = app.add_subcommand("zeros", "rank-deficient grid momenta (CSV)");
  add_source_options(cmd_zeros, opts);
  cmd_zeros->add_option("--grid", grid, "grid points per axis");
  cmd_zeros->add_option("--out", opts.out_path, "output CSV");

  // flatten
  auto* cmd_flatten = app.add_subcommand("flatten", "orthonormal frame at one momentum");
  add_source_options(cmd_flatten, opts);
  cmd_flatten->add_option("--k", k_text, "momentum")->required();
  cmd_flatten->add_option("--out", opts.out_path, "output file");

  // invariant
  auto* cmd_invariant = app.add_subcommand("invariant", "winding and TRIM-sign diagnostics");
  add_source_options(cmd_invariant, opts);
  std::string loop_text, basepoint_text;
  int resolution = 0;
  bool do_cycles = false, do_trim_signs = false;
  cmd_invariant->add_option("--loop", loop_text, "loop spec, e.g. \"axis=0;fixed=pi\"");
  cmd_invariant->add_option("--resolution", resolution, "samples per loop");
  cmd_invariant->add_flag("--cycles", do_cycles, "windings along all axis cycles");
  cmd_invariant->add_option("--basepoint", basepoint_text, "base point for --cycles");
  cmd_invariant->add_flag("--trim-signs", do_trim_signs, "signs at the TRIMs (1x1 BDI)");
  cmd_invariant->add_option("--out", opts.out_path, "output file");

  // classify
  auto* cmd_classify = app.add_subcommand("classify", "table/rule lookup");
  std::string class_text;
  int q_nu = 0, q_d = 0, q_m = 0;
  cmd_classify->add_option("--class", class_text, "AIII, AIII/BDI or AIII/CII")->required();
  cmd_classify->add_option("--nu", q_nu, "|nu| = |N - M|")->required();
  cmd_classify->add_option("--d", q_d, "lattice dimension")->required();
  cmd_classify->add_option("--m", q_m, "frame ambient dimension max(M, N)")->required();
  cmd_classify->add_option("--out", opts.out_path, "output file");

  // derive
  auto* cmd_derive = app.add_subcommand("derive", "exact-sequence derivation with trace");
  std::string query, data_path;
  std::vector<std::string> hint_texts;
  cmd_derive->add_option("--query", query, "e.g. \"pi0 (Omega^1 V_1(C^1))^Z2 [BDI]\"")->required();
  cmd_derive->add_option("--data", data_path, "group data JSON (defaults to the shipped data)");
  cmd_derive->add_option("--hint", hint_texts, "resolution hint, e.g. \"pair@level0=Z\"");
  cmd_derive->add_option("--out", opts.out_path, "output file");

  // report
  auto* cmd_report = app.add_subcommand("report", "full pipeline report");
  add_source_options(cmd_report, opts);
  cmd_report->add_option("--out", opts.out_path, "output file");

  // selftest
  auto* cmd_selftest = app.add_subcommand("selftest", "run the acceptance suite");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  }

  const Config config = Config::resolve(opts.config_path);

  if (cmd_build->parsed()) {
    const SpinModel model = load_model(opts);
    const RigidityPolynomial r = linearize_collinear(model);
    Sink sink(opts.out_path, out);
    sink.stream() << r.to_json();
    if (!opts.quiet && !opts.out_path.empty())
      out << "wrote " << opts.out_path << " (" << r.rows() << "x" << r.cols() << ", d = "
          << r.dim() << ")\n";
    return 0;
  }

  if (cmd_eval->parsed()) {
    const RigidityPolynomial r = load_polynomial(opts);
    const Momentum k{parse_momentum_list(k_text)};
    const Matrix value = r.evaluate(k, strict);
    Sink sink(opts.out_path, out);
    if (opts.json) {
      sink.stream() << "{\"rows\": " << value.rows() << ", \"cols\": " << value.cols()
                    << ", \"entries\": [";
      bool first = true;
      for (int i = 0; i < value.rows(); ++i)
        for (int j = 0; j < value.cols(); ++j) {
          if (!first) sink.stream() << ", ";
          first = false;
          sink.stream() << "\"" << fmt_complex(value(i, j)) << "\"";
        }
      sink.stream() << "]}\n";
    } else {
      if (!opts.quiet)
        sink.stream() << "# matrix " << value.rows() << "x" << value.cols() << " at k = "
                      << k.to_string() << " (radians)\n";
      print_matrix(sink.stream(), value);
    }
    return 0;
  }

  if (cmd_class->parsed()) {
    const RigidityPolynomial r = load_polynomial(opts);
    const ClassEvidence evidence = detect_class(r, config.class_tol);
    Sink sink(opts.out_path, out);
    sink.stream() << "class: " << to_string(evidence.symmetry_class) << "\n";
    sink.stream() << "bdi_residual: " << fmt_real(evidence.bdi_residual) << "\n";
    if (evidence.cii_residual)
      sink.stream() << "cii_residual: " << fmt_real(*evidence.cii_residual) << "\n";
    else
      sink.stream() << "cii_residual: n/a (M or N odd)\n";
    return 0;
  }

  if (cmd_verify->parsed()) {
    const RigidityPolynomial r = load_polynomial(opts);
    const EquivarianceSpec spec = load_spec(spec_arg, r);
    const int g = verify_grid > 0 ? verify_grid : config.grid_for_dim(r.dim());
    const double tol = verify_tol > 0 ? verify_tol : config.verify_tol;
    const VerifyResult result = verify_equivariance(r, spec, g, tol);
    Sink sink(opts.out_path, out);
    sink.stream() << "verify: " << (result.pass ? "PASS" : "FAIL") << "\n";
    sink.stream() << "max_residual: " << fmt_real(result.max_residual) << "\n";
    sink.stream() << "worst_k: " << result.worst_k.to_string() << "\n";
    return 0;
  }

  if (cmd_gapmap->parsed() || cmd_zeros->parsed()) {
    const RigidityPolynomial r = load_polynomial(opts);
    const int g = grid > 0 ? grid : config.grid_for_dim(r.dim());
    const ExecMode mode = config.parallel ? ExecMode::kParallel : ExecMode::kSerial;
    Sink sink(opts.out_path, out);
    if (cmd_gapmap->parsed()) {
      const GapTable table = gap_map(r, g, config.rank_tol_rel, mode);
      table.write_csv(sink.stream());
      if (!gnuplot_path.empty()) {
        if (opts.out_path.empty())
          throw input_error("--gnuplot needs --out so the script can reference the CSV");
        write_gnuplot(gnuplot_path, opts.out_path, table.dim, table.n_sigmas);
      }
    } else {
      const auto locus = zero_locus(r, g, config.rank_tol_rel, mode);
      GapTable table;
      table.dim = r.dim();
      table.per_axis = g;
      table.n_sigmas = std::min(r.rows(), r.cols());
      table.rows = locus;
      table.write_csv(sink.stream());
    }
    return 0;
  }

  if (cmd_flatten->parsed()) {
    const RigidityPolynomial r = load_polynomial(opts);
    const Momentum k{parse_momentum_list(k_text)};
    const StiefelFrame frame = flatten(r.evaluate(k), config.rank_tol_rel);
    Sink sink(opts.out_path, out);
    if (!opts.quiet)
      sink.stream() << "# frame " << frame.q.rows() << "x" << frame.q.cols() << " at k = "
                    << k.to_string() << " (radians)"
                    << (frame.from_adjoint ? " (from adjoint)" : "") << "\n";
    print_matrix(sink.stream(), frame.q);
    return 0;
  }

  if (cmd_invariant->parsed()) {
    const RigidityPolynomial r = load_polynomial(opts);
    const ExecMode mode = config.parallel ? ExecMode::kParallel : ExecMode::kSerial;
    const int res = resolution > 0 ? resolution : config.winding_resolution;
    Sink sink(opts.out_path, out);
    bool did_something = false;
    if (!loop_text.empty()) {
      const LoopSpec loop = parse_loop(loop_text, res);
      sink.stream() << "winding: " << det_winding(r, loop, config.loop_tol, mode) << "\n";
      did_something = true;
    }
    if (do_cycles) {
      std::vector<double> base;
      if (!basepoint_text.empty()) base = parse_momentum_list(basepoint_text);
      const std::vector<int> windings = cycle_windings(r, res, base, config.loop_tol, mode);
      sink.stream() << "cycle_windings:";
      for (int w : windings) sink.stream() << " " << w;
      sink.stream() << "\n";
      did_something = true;
    }
    if (do_trim_signs) {
      for (const auto& [trim, sign] : trim_signs(r, config.loop_tol))
        sink.stream() << "trim " << trim.to_string() << ": " << (sign > 0 ? "+1" : "-1")
                      << "\n";
      did_something = true;
    }
    if (!did_something)
      throw input_error("invariant: nothing to do (use --loop, --cycles or --trim-signs)");
    return 0;
  }

  if (cmd_classify->parsed()) {
    ClassificationQuery query;
    query.symmetry_class = parse_symmetry_class(class_text);
    query.abs_nu = q_nu;
    query.d = q_d;
    query.m = q_m;
    const Classification result = classify(query);
    Sink sink(opts.out_path, out);
    sink.stream() << result.verdict.to_string() << "\n";
    if (!opts.quiet) sink.stream() << "provenance: " << result.provenance << "\n";
    return 0;
  }

  if (cmd_derive->parsed()) {
    GroupDataFile data = data_path.empty()
                             ? GroupDataFile::builtin()
                             : GroupDataFile::parse(slurp(data_path));
    std::vector<Hint> hints;
    for (const auto& text : hint_texts) hints.push_back(parse_hint(text));
    const ResolutionReport report = derive_query(query, data, hints);
    Sink sink(opts.out_path, out);
    if (!opts.quiet)
      for (const auto& line : report.trace) sink.stream() << line << "\n";
    const char* status = report.answer.status == SlotStatus::kDetermined ? "determined"
                         : report.answer.status == SlotStatus::kUpToExtension
                             ? "up-to-extension"
                             : "unknown";
    sink.stream() << "result: " << status << " " << report.answer.value.to_string() << "\n";
    return 0;
  }

  if (cmd_report->parsed()) {
    const ReportDocument doc =
        !opts.coeffs_path.empty()
            ? build_report(RigidityPolynomial::from_json(slurp(opts.coeffs_path)), config,
                           opts.coeffs_path)
            : build_report(load_model(opts), config);
    Sink sink(opts.out_path, out);
    if (opts.json)
      sink.stream() << doc.to_json();
    else
      doc.write_text(sink.stream());
    return 0;
  }

  if (cmd_selftest->parsed()) {
    const int failures = run_selftest(out);
    return failures == 0 ? 0 : 3;
  }

  err << "error: usage: no subcommand\n";
  return 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << e.what() << "\n";
    return 1;
  } catch (const input_error& e) {
    err << "error: input: " << e.what() << "\n";
    return 2;
  } catch (const numerical_error& e) {
    err << "error: numerical: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace rigidity::cli
