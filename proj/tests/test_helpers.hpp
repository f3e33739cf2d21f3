#pragma once

#include <random>

#include "rigidity/polynomial.hpp"

namespace rigidity::testing {

inline Eigen::MatrixXcd random_complex(int rows, int cols, std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
  return m;
}

inline RigidityPolynomial random_polynomial(int rows, int cols, int dim, int terms,
                                            std::mt19937& rng, bool real_coeffs = false) {
  RigidityPolynomial r(rows, cols, dim);
  std::uniform_int_distribution<int> offset_dist(-2, 2);
  for (int t = 0; t < terms; ++t) {
    Offset offset(dim);
    for (int& x : offset) x = offset_dist(rng);
    Eigen::MatrixXcd coeff = random_complex(rows, cols, rng);
    if (real_coeffs) coeff = coeff.real().cast<Complex>();
    r.add_term(offset, coeff);
  }
  return r;
}

inline Momentum random_momentum(int dim, std::mt19937& rng) {
  std::uniform_real_distribution<double> uniform(-M_PI, M_PI);
  std::vector<double> k(dim);
  for (double& x : k) x = uniform(rng);
  return Momentum(std::move(k));
}

}  // namespace rigidity::testing
