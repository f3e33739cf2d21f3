#include "rigidity/symmetry.hpp"

#include <nlohmann/json.hpp>

#include "rigidity/sweep.hpp"

namespace rigidity {

using nlohmann::json;

std::string to_string(SymmetryClass c) {
  switch (c) {
    case SymmetryClass::AIII: return "AIII";
    case SymmetryClass::AIII_BDI: return "AIII/BDI";
    case SymmetryClass::AIII_CII: return "AIII/CII";
  }
  return "?";
}

SymmetryClass parse_symmetry_class(const std::string& text) {
  if (text == "AIII" || text == "A3") return SymmetryClass::AIII;
  if (text == "AIII/BDI" || text == "BDI" || text == "AIII_BDI") return SymmetryClass::AIII_BDI;
  if (text == "AIII/CII" || text == "CII" || text == "AIII_CII") return SymmetryClass::AIII_CII;
  throw input_error("unknown symmetry class '" + text + "' (expected AIII, AIII/BDI or AIII/CII)");
}

namespace {

Matrix kron_sigma2(int size) {
  // I_{size/2} (x) sigma_2
  Matrix j = Matrix::Zero(size, size);
  const Complex i_unit(0.0, 1.0);
  for (int b = 0; b < size / 2; ++b) {
    j(2 * b, 2 * b + 1) = -i_unit;
    j(2 * b + 1, 2 * b) = i_unit;
  }
  return j;
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

ClassEvidence detect_class(const RigidityPolynomial& r, double tol) {
  if (tol <= 0) throw input_error("tolerance must be positive");
  ClassEvidence ev;
  ev.scale = r.coefficient_scale();
  const double scale = ev.scale > 0 ? ev.scale : 1.0;

  double bdi = 0.0;
  for (const auto& [offset, coeff] : r.coeffs())
    bdi = std::max(bdi, coeff.imag().cwiseAbs().maxCoeff());
  ev.bdi_residual = bdi / scale;

  const bool even_shape = r.rows() % 2 == 0 && r.cols() % 2 == 0;
  if (even_shape) {
    const Matrix jm = kron_sigma2(r.rows());
    const Matrix jn = kron_sigma2(r.cols());
    double cii = 0.0;
    for (const auto& [offset, coeff] : r.coeffs())
      cii = std::max(cii, max_abs(jm * coeff.conjugate() * jn - coeff));
    ev.cii_residual = cii / scale;
  }

  if (ev.bdi_residual <= tol)
    ev.symmetry_class = SymmetryClass::AIII_BDI;
  else if (even_shape && *ev.cii_residual <= tol)
    ev.symmetry_class = SymmetryClass::AIII_CII;
  else
    ev.symmetry_class = SymmetryClass::AIII;
  return ev;
}

std::string EquivarianceSpec::to_json() const {
  json doc;
  auto dump = [](const Matrix& m) {
    json re = json::array(), im = json::array();
    for (int i = 0; i < m.rows(); ++i) {
      json re_row = json::array(), im_row = json::array();
      for (int j = 0; j < m.cols(); ++j) {
        re_row.push_back(m(i, j).real());
        im_row.push_back(m(i, j).imag());
      }
      re.push_back(re_row);
      im.push_back(im_row);
    }
    return json{{"re", re}, {"im", im}};
  };
  doc["u_m"] = dump(u_m);
  doc["u_n"] = dump(u_n);
  doc["antiunitary"] = antiunitary;
  return doc.dump(2) + "\n";
}

EquivarianceSpec EquivarianceSpec::from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error(std::string("equivariance spec: ") + e.what());
  }
  auto load = [](const json& jm) {
    const auto& re = jm.at("re");
    const auto& im = jm.at("im");
    int rows = static_cast<int>(re.size());
    int cols = rows ? static_cast<int>(re.at(0).size()) : 0;
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        m(i, j) = Complex(re.at(i).at(j).get<double>(), im.at(i).at(j).get<double>());
    return m;
  };
  EquivarianceSpec spec;
  try {
    spec.u_m = load(doc.at("u_m"));
    spec.u_n = load(doc.at("u_n"));
    spec.antiunitary = doc.at("antiunitary").get<bool>();
  } catch (const json::exception& e) {
    throw input_error(std::string("equivariance spec schema: ") + e.what());
  }
  auto check_unitary = [](const Matrix& u, const char* name) {
    if (u.rows() != u.cols()) throw input_error(std::string(name) + " is not square");
    Matrix defect = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
    if (defect.cwiseAbs().maxCoeff() > 1e-12)
      throw input_error(std::string(name) + " is not unitary within 1e-12");
  };
  check_unitary(spec.u_m, "u_m");
  check_unitary(spec.u_n, "u_n");
  return spec;
}

namespace {

Matrix sigma1_block(int copies, double sign) {
  Matrix m = Matrix::Zero(2 * copies, 2 * copies);
  for (int b = 0; b < copies; ++b) {
    m(2 * b, 2 * b + 1) = sign;
    m(2 * b + 1, 2 * b) = sign;
  }
  return m;
}

Matrix sigma1_kron_sigma1(double sign) {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 3) = sign;
  m(1, 2) = sign;
  m(2, 1) = sign;
  m(3, 0) = sign;
  return m;
}

// Rotation-derived condition for the anisotropic builtin, stated in the
// channel-major basis (in-plane rows first, then out-of-plane; q columns then
// p columns) and conjugated into the library's sublattice-major ordering.
EquivarianceSpec aniso_rotation_spec(double global_sign) {
  Matrix um_channel = Matrix::Zero(12, 12);
  um_channel.block(0, 0, 2, 2) = sigma1_block(1, -1.0);
  um_channel.block(2, 2, 4, 4) = sigma1_kron_sigma1(1.0);
  um_channel.block(6, 6, 2, 2) = sigma1_block(1, 1.0);
  um_channel.block(8, 8, 4, 4) = sigma1_kron_sigma1(-1.0);
  um_channel *= global_sign;
  Matrix un_channel = sigma1_block(2, 1.0);

  auto channel_row = [](int mine) {  // family-major -> channel-major index
    return (mine % 2) * 6 + mine / 2;
  };
  auto channel_col = [](int mine) { return (mine % 2) * 2 + mine / 2; };

  EquivarianceSpec spec;
  spec.antiunitary = false;
  spec.u_m = Matrix::Zero(12, 12);
  spec.u_n = Matrix::Zero(4, 4);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j) spec.u_m(i, j) = um_channel(channel_row(i), channel_row(j));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) spec.u_n(i, j) = un_channel(channel_col(i), channel_col(j));
  return spec;
}

}  // namespace

EquivarianceSpec builtin_equivariance_spec(const std::string& name, int m_rows, int n_cols) {
  if (name == "bdi") {
    EquivarianceSpec spec;
    spec.u_m = Matrix::Identity(m_rows, m_rows);
    spec.u_n = Matrix::Identity(n_cols, n_cols);
    spec.antiunitary = true;
    return spec;
  }
  if (name == "cii") {
    if (m_rows % 2 != 0 || n_cols % 2 != 0)
      throw input_error("CII requires even M and N");
    EquivarianceSpec spec;
    spec.u_m = kron_sigma2(m_rows);
    spec.u_n = kron_sigma2(n_cols);
    spec.antiunitary = true;
    return spec;
  }
  if (name == "aniso-rotation-a" || name == "aniso-rotation-b") {
    if (m_rows != 12 || n_cols != 4)
      throw input_error("spec '" + name + "' applies to the 12x4 anisotropic builtin");
    return aniso_rotation_spec(name == "aniso-rotation-a" ? 1.0 : -1.0);
  }
  throw input_error("unknown builtin equivariance spec '" + name +
                    "' (known: bdi, cii, aniso-rotation-a, aniso-rotation-b)");
}

VerifyResult verify_equivariance(const RigidityPolynomial& r, const EquivarianceSpec& spec,
                                 int grid, double tol) {
  if (grid < 2) throw input_error("verification grid must be >= 2 per axis");
  if (spec.u_m.rows() != r.rows() || spec.u_n.rows() != r.cols())
    throw input_error("equivariance spec dimension mismatch: U_M is " +
                      std::to_string(spec.u_m.rows()) + "x" + std::to_string(spec.u_m.cols()) +
                      ", U_N is " + std::to_string(spec.u_n.rows()) + "x" +
                      std::to_string(spec.u_n.cols()) + ", matrix is " +
                      std::to_string(r.rows()) + "x" + std::to_string(r.cols()));

  // full-period sampling: the condition is checked over the whole torus
  VerifyResult result;
  result.max_residual = -1.0;
  const std::size_t total = grid_size(r.dim(), grid);
  std::vector<double> residuals(total);
  grid_sweep(
      r.dim(), grid, ExecMode::kParallel,
      [&](std::size_t flat, const Momentum& k) {
        Matrix at_k = r.evaluate(k);
        Matrix at_minus = r.evaluate(k.negated());
        Matrix image = spec.antiunitary ? Matrix(at_k.conjugate()) : at_k;
        residuals[flat] = (at_minus - spec.u_m * image * spec.u_n.adjoint()).norm();
      },
      GridRange::kFullPeriod);
  for (std::size_t flat = 0; flat < total; ++flat)
    if (residuals[flat] > result.max_residual) {
      result.max_residual = residuals[flat];
      result.worst_k = Momentum(grid_point(r.dim(), grid, flat, GridRange::kFullPeriod));
    }
  result.pass = result.max_residual <= tol;
  return result;
}

std::vector<Momentum> trims(int dim) {
  if (dim < 1 || dim > 6) throw input_error("TRIM enumeration supports 1 <= d <= 6");
  std::vector<Momentum> out;
  const int count = 1 << dim;
  out.reserve(count);
  for (int mask = 0; mask < count; ++mask) {
    std::vector<double> k(dim, 0.0);
    for (int axis = 0; axis < dim; ++axis)
      if (mask & (1 << (dim - 1 - axis))) k[axis] = M_PI;
    out.push_back(Momentum(std::move(k)));
  }
  return out;
}

TrimFormReport trim_fixed_form(const RigidityPolynomial& r, const Momentum& trim,
                               SymmetryClass symmetry_class, double tol) {
  if (symmetry_class == SymmetryClass::AIII)
    throw input_error("no fixed-point form for AIII");
  if (trim.dim() != r.dim()) throw input_error("TRIM dimension mismatch");
  for (double component : trim.k) {
    double c = std::abs(component);
    if (std::min(c, std::abs(c - M_PI)) > 1e-9)
      throw input_error("momentum " + trim.to_string() + " is not a TRIM");
  }

  const Matrix a = r.evaluate(trim);
  TrimFormReport report;
  if (symmetry_class == SymmetryClass::AIII_BDI) {
    report.residual = a.imag().cwiseAbs().maxCoeff();
  } else {
    if (r.rows() % 2 != 0 || r.cols() % 2 != 0)
      throw input_error("CII requires even M and N");
    const Matrix jm = kron_sigma2(r.rows());
    const Matrix jn = kron_sigma2(r.cols());
    report.residual = max_abs(jm * a.conjugate() * jn - a);
  }
  report.pass = report.residual <= tol;
  return report;
}

}  // namespace rigidity
