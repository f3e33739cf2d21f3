#pragma once

#include <Eigen/Dense>

namespace rigidity {

/// Thin SVD a = u * sigma.asDiagonal() * v.adjoint() with u (m x r),
/// v (n x r), r = min(m, n), singular values descending.
struct SvdResult {
  Eigen::MatrixXcd u;
  Eigen::VectorXd sigma;
  Eigen::MatrixXcd v;
};

/// One-sided Jacobi SVD for small complex matrices. Fixed cyclic sweep order,
/// no pivoting; results are bit-reproducible across runs and thread counts.
SvdResult jacobi_svd(const Eigen::MatrixXcd& a);

Eigen::VectorXd singular_values(const Eigen::MatrixXcd& a);

}  // namespace rigidity
