#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "rigidity/errors.hpp"

namespace rigidity {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Offset = std::vector<int>;

/// Momentum on the Brillouin torus, components reduced to (-pi, pi].
struct Momentum {
  std::vector<double> k;

  Momentum() = default;
  explicit Momentum(std::vector<double> components);

  int dim() const { return static_cast<int>(k.size()); }
  Momentum negated() const;
  std::string to_string() const;
};

double reduce_to_torus(double k);

/// Matrix-valued Laurent polynomial: a finite map offset -> complex MxN
/// coefficient, evaluated on the torus as sum_x r(x) e^{i k.x}.
class RigidityPolynomial {
 public:
  RigidityPolynomial(int rows, int cols, int dim);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int dim() const { return dim_; }
  const std::map<Offset, Matrix>& coeffs() const { return coeffs_; }

  /// Accumulate a coefficient; exact-zero matrices are dropped (normalized
  /// support).
  void add_term(const Offset& offset, const Matrix& coefficient);
  void add_entry(const Offset& offset, int row, int col, Complex value);

  Matrix evaluate(const Momentum& k, bool strict = false) const;
  RigidityPolynomial dagger() const;
  RigidityPolynomial restrict_block(int row_begin, int row_end, int col_begin,
                                    int col_end) const;
  /// Reorder rows/columns: result(i,j) = this(row_perm[i], col_perm[j]).
  RigidityPolynomial permuted(const std::vector<int>& row_perm,
                              const std::vector<int>& col_perm) const;
  /// Arbitrary row/column subset (block extraction by index lists).
  RigidityPolynomial extract(const std::vector<int>& row_idx,
                             const std::vector<int>& col_idx) const;

  double coefficient_scale() const;  // max abs entry over all coefficients
  bool is_square() const { return rows_ == cols_; }

  std::string to_json() const;
  static RigidityPolynomial from_json(const std::string& text);

 private:
  int rows_, cols_, dim_;
  std::map<Offset, Matrix> coeffs_;
};

/// Pointwise product of two 1x1 (or compatible square) polynomials:
/// coefficient convolution, so evaluate(p*q, k) = evaluate(p,k)*evaluate(q,k).
RigidityPolynomial convolve(const RigidityPolynomial& a, const RigidityPolynomial& b);

}  // namespace rigidity
