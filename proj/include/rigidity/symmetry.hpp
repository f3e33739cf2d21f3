#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rigidity/polynomial.hpp"

namespace rigidity {

enum class SymmetryClass { AIII, AIII_BDI, AIII_CII };

std::string to_string(SymmetryClass c);
SymmetryClass parse_symmetry_class(const std::string& text);

/// Coefficient-level class detection evidence. Residuals are normalized by
/// the largest coefficient magnitude, so detection is invariant under
/// positive rescaling of the polynomial.
struct ClassEvidence {
  SymmetryClass symmetry_class;
  double bdi_residual = 0.0;                // ||Im r(x)|| / scale, max over x
  std::optional<double> cii_residual;       // only when M, N both even
  double scale = 0.0;
};

ClassEvidence detect_class(const RigidityPolynomial& r, double tol = 1e-10);

/// Antiunitary (or plain unitary) equivariance datum: the condition checked
/// is r(-k) = U_M * C(r(k)) * U_N^dagger with C = conj when antiunitary.
struct EquivarianceSpec {
  Matrix u_m;
  Matrix u_n;
  bool antiunitary = true;

  std::string to_json() const;
  static EquivarianceSpec from_json(const std::string& text);
};

/// Named specs: "bdi" (U = I, antiunitary), "cii" (U = I (x) sigma_2,
/// antiunitary), "aniso-rotation-a"/"aniso-rotation-b" (the two sign variants
/// of the rotation-derived condition for the anisotropic builtin, linear).
EquivarianceSpec builtin_equivariance_spec(const std::string& name, int m_rows,
                                           int n_cols);

struct VerifyResult {
  bool pass = false;
  double max_residual = 0.0;  // Frobenius norm of the defect
  Momentum worst_k;
};

VerifyResult verify_equivariance(const RigidityPolynomial& r,
                                 const EquivarianceSpec& spec, int grid,
                                 double tol);

/// Time-reversal invariant momenta: all 2^d vectors with components in
/// {0, pi}, lexicographic (0 before pi, leading axis most significant).
std::vector<Momentum> trims(int dim);

struct TrimFormReport {
  double residual = 0.0;
  bool pass = false;
};

/// Fixed-point-form check at a TRIM: BDI demands a real matrix, CII the
/// quaternionic condition A = (I (x) sigma_2) conj(A) (I (x) sigma_2).
TrimFormReport trim_fixed_form(const RigidityPolynomial& r, const Momentum& trim,
                               SymmetryClass symmetry_class, double tol);

}  // namespace rigidity
