#include "rigidity/polynomial.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace rigidity {

using nlohmann::json;

double reduce_to_torus(double k) {
  double r = std::fmod(k + M_PI, 2.0 * M_PI);
  if (r <= 0.0) r += 2.0 * M_PI;
  return r - M_PI;  // (-pi, pi]
}

Momentum::Momentum(std::vector<double> components) : k(std::move(components)) {
  for (double& x : k) x = reduce_to_torus(x);
}

Momentum Momentum::negated() const {
  std::vector<double> neg(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) neg[i] = -k[i];
  return Momentum(std::move(neg));
}

std::string Momentum::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (i) out += ", ";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", k[i]);
    out += buf;
  }
  return out + ")";
}

RigidityPolynomial::RigidityPolynomial(int rows, int cols, int dim)
    : rows_(rows), cols_(cols), dim_(dim) {
  if (rows < 1 || cols < 1) throw input_error("rigidity polynomial needs M >= 1 and N >= 1");
  if (dim < 1) throw input_error("rigidity polynomial needs d >= 1");
}

void RigidityPolynomial::add_term(const Offset& offset, const Matrix& coefficient) {
  if (static_cast<int>(offset.size()) != dim_)
    throw input_error("offset dimension " + std::to_string(offset.size()) +
                      " does not match lattice dimension " + std::to_string(dim_));
  if (coefficient.rows() != rows_ || coefficient.cols() != cols_)
    throw input_error("coefficient shape does not match polynomial shape");
  auto it = coeffs_.find(offset);
  if (it == coeffs_.end()) {
    if (!coefficient.isZero(0.0)) coeffs_.emplace(offset, coefficient);
    return;
  }
  it->second += coefficient;
  if (it->second.isZero(0.0)) coeffs_.erase(it);
}

void RigidityPolynomial::add_entry(const Offset& offset, int row, int col, Complex value) {
  Matrix m = Matrix::Zero(rows_, cols_);
  m(row, col) = value;
  add_term(offset, m);
}

namespace {

// Neumaier-compensated accumulation, used by the --strict evaluation path.
struct CompensatedSum {
  double sum = 0.0, comp = 0.0;
  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace

Matrix RigidityPolynomial::evaluate(const Momentum& k, bool strict) const {
  if (k.dim() != dim_)
    throw input_error("momentum dimension " + std::to_string(k.dim()) +
                      " does not match lattice dimension " + std::to_string(dim_));
  if (!strict) {
    Matrix out = Matrix::Zero(rows_, cols_);
    for (const auto& [offset, coeff] : coeffs_) {
      double phase = 0.0;
      for (int j = 0; j < dim_; ++j) phase += k.k[j] * offset[j];
      out += coeff * std::polar(1.0, phase);
    }
    return out;
  }
  Matrix out(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      CompensatedSum re, im;
      for (const auto& [offset, coeff] : coeffs_) {
        double phase = 0.0;
        for (int a = 0; a < dim_; ++a) phase += k.k[a] * offset[a];
        Complex term = coeff(i, j) * std::polar(1.0, phase);
        re.add(term.real());
        im.add(term.imag());
      }
      out(i, j) = Complex(re.value(), im.value());
    }
  return out;
}

RigidityPolynomial RigidityPolynomial::dagger() const {
  RigidityPolynomial out(cols_, rows_, dim_);
  for (const auto& [offset, coeff] : coeffs_) {
    Offset neg(offset.size());
    for (std::size_t i = 0; i < offset.size(); ++i) neg[i] = -offset[i];
    out.add_term(neg, coeff.adjoint());
  }
  return out;
}

RigidityPolynomial RigidityPolynomial::restrict_block(int row_begin, int row_end,
                                                      int col_begin, int col_end) const {
  if (row_begin < 0 || row_end > rows_ || row_begin >= row_end || col_begin < 0 ||
      col_end > cols_ || col_begin >= col_end)
    throw input_error("block range out of bounds");
  RigidityPolynomial out(row_end - row_begin, col_end - col_begin, dim_);
  for (const auto& [offset, coeff] : coeffs_)
    out.add_term(offset, coeff.block(row_begin, col_begin, row_end - row_begin,
                                     col_end - col_begin));
  return out;
}

RigidityPolynomial RigidityPolynomial::permuted(const std::vector<int>& row_perm,
                                                const std::vector<int>& col_perm) const {
  if (static_cast<int>(row_perm.size()) != rows_ || static_cast<int>(col_perm.size()) != cols_)
    throw input_error("permutation size mismatch");
  RigidityPolynomial out(rows_, cols_, dim_);
  for (const auto& [offset, coeff] : coeffs_) {
    Matrix m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m(i, j) = coeff(row_perm[i], col_perm[j]);
    out.add_term(offset, m);
  }
  return out;
}

RigidityPolynomial RigidityPolynomial::extract(const std::vector<int>& row_idx,
                                               const std::vector<int>& col_idx) const {
  if (row_idx.empty() || col_idx.empty()) throw input_error("empty block extraction");
  RigidityPolynomial out(static_cast<int>(row_idx.size()), static_cast<int>(col_idx.size()), dim_);
  for (const auto& [offset, coeff] : coeffs_) {
    Matrix m(row_idx.size(), col_idx.size());
    for (std::size_t i = 0; i < row_idx.size(); ++i)
      for (std::size_t j = 0; j < col_idx.size(); ++j) m(i, j) = coeff(row_idx[i], col_idx[j]);
    out.add_term(offset, m);
  }
  return out;
}

double RigidityPolynomial::coefficient_scale() const {
  double scale = 0.0;
  for (const auto& [offset, coeff] : coeffs_)
    scale = std::max(scale, coeff.cwiseAbs().maxCoeff());
  return scale;
}

std::string RigidityPolynomial::to_json() const {
  json doc;
  doc["rows"] = rows_;
  doc["cols"] = cols_;
  doc["dim"] = dim_;
  json terms = json::array();
  for (const auto& [offset, coeff] : coeffs_) {
    json term;
    term["offset"] = offset;
    json re = json::array(), im = json::array();
    for (int i = 0; i < rows_; ++i) {
      json re_row = json::array(), im_row = json::array();
      for (int j = 0; j < cols_; ++j) {
        re_row.push_back(coeff(i, j).real());
        im_row.push_back(coeff(i, j).imag());
      }
      re.push_back(re_row);
      im.push_back(im_row);
    }
    term["matrix_re"] = re;
    term["matrix_im"] = im;
    terms.push_back(term);
  }
  doc["coeffs"] = terms;
  return doc.dump(2) + "\n";
}

RigidityPolynomial RigidityPolynomial::from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error(std::string("coefficient file: ") + e.what());
  }
  try {
    RigidityPolynomial out(doc.at("rows").get<int>(), doc.at("cols").get<int>(),
                           doc.at("dim").get<int>());
    for (const auto& term : doc.at("coeffs")) {
      Offset offset = term.at("offset").get<Offset>();
      const auto& re = term.at("matrix_re");
      const auto& im = term.at("matrix_im");
      Matrix m(out.rows(), out.cols());
      for (int i = 0; i < out.rows(); ++i)
        for (int j = 0; j < out.cols(); ++j)
          m(i, j) = Complex(re.at(i).at(j).get<double>(), im.at(i).at(j).get<double>());
      out.add_term(offset, m);
    }
    return out;
  } catch (const json::exception& e) {
    throw input_error(std::string("coefficient file schema: ") + e.what());
  }
}

RigidityPolynomial convolve(const RigidityPolynomial& a, const RigidityPolynomial& b) {
  if (a.cols() != b.rows() || a.dim() != b.dim())
    throw input_error("convolution shape mismatch");
  RigidityPolynomial out(a.rows(), b.cols(), a.dim());
  for (const auto& [xa, ca] : a.coeffs())
    for (const auto& [xb, cb] : b.coeffs()) {
      Offset sum(xa.size());
      for (std::size_t i = 0; i < xa.size(); ++i) sum[i] = xa[i] + xb[i];
      out.add_term(sum, ca * cb);
    }
  return out;
}

}  // namespace rigidity
