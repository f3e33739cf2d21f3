#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rigidity/polynomial.hpp"
#include "rigidity/svd.hpp"
#include "rigidity/sweep.hpp"

namespace rigidity {

struct SingularSpectrum {
  Momentum k;
  std::vector<double> sigmas;  // descending, length min(M, N)
  int rank = 0;                // count of sigmas > rel_tol * sigma_max
};

SingularSpectrum singular_spectrum(const RigidityPolynomial& r, const Momentum& k,
                                   double rel_tol = 1e-9);

struct MaxwellReport {
  int nu = 0;            // N - M
  int samples_checked = 0;
};

/// Maxwell counting index nu = N - M, cross-checked by the rank-nullity
/// identity nul r(k) - nul r^dag(k) = N - M at random momenta (exact integer
/// identity; a violation indicates an SVD bug and throws).
MaxwellReport maxwell_index(const RigidityPolynomial& r, int samples = 10,
                            double rel_tol = 1e-9);

struct GapTable {
  int dim = 0;
  int per_axis = 0;
  int n_sigmas = 0;
  std::vector<SingularSpectrum> rows;  // grid order, axis 0 slowest

  void write_csv(std::ostream& out) const;
};

GapTable gap_map(const RigidityPolynomial& r, int per_axis, double rel_tol = 1e-9,
                 ExecMode mode = ExecMode::kParallel);

/// Grid momenta whose rank falls below the maximum over the grid.
std::vector<SingularSpectrum> zero_locus(const RigidityPolynomial& r, int per_axis,
                                         double rel_tol = 1e-9,
                                         ExecMode mode = ExecMode::kParallel);

/// Orthonormal frame in V_n(C^m), m = max(M,N), n = min(M,N). When the input
/// is wide (M < N) the adjoint is flattened and from_adjoint records it.
struct StiefelFrame {
  Eigen::MatrixXcd q;
  bool from_adjoint = false;
};

/// Polar factor of a full-rank matrix: replaces every positive singular value
/// by 1. Throws numerical_error on rank-deficient input (sigma_min <= tol).
StiefelFrame flatten(const Eigen::MatrixXcd& a, double tol = 1e-9);

/// U (Sigma + t(I - Sigma)) V^dag: t = 0 is the input, t = 1 the flattening.
Eigen::MatrixXcd retraction_path(const Eigen::MatrixXcd& a, double t,
                                 double tol = 1e-9);

/// Eigenvalues of h(k) = r(k)^dag r(k), descending (squared singular values;
/// computed by an independent Hermitian eigensolver).
std::vector<double> spinwave_spectrum(const RigidityPolynomial& r, const Momentum& k);

}  // namespace rigidity
