#pragma once

#include <utility>
#include <vector>

#include "rigidity/polynomial.hpp"
#include "rigidity/sweep.hpp"

namespace rigidity {

/// A closed loop on the Brillouin torus: either an axis-aligned fundamental
/// cycle (full 2*pi period along one axis, transverse components fixed) or an
/// explicit closed polyline. resolution = samples per traversal.
struct LoopSpec {
  static LoopSpec axis_cycle(int axis, std::vector<double> fixed_transverse,
                             int resolution);
  /// Vertices are unreduced path coordinates in R^d (a cycle may cross the
  /// 2*pi period); the loop must close mod 2*pi.
  static LoopSpec polyline(std::vector<std::vector<double>> vertices, int resolution);

  std::vector<Momentum> sample(int dim) const;
  int resolution = 256;

  // axis form
  bool is_axis = true;
  int axis = 0;
  std::vector<double> fixed;  // d-1 transverse components, in axis order
  // polyline form
  std::vector<std::vector<double>> vertices;  // closed: first == last mod 2*pi
};

/// Winding accumulated over a cyclically sampled determinant: sum of
/// unwrapped phase increments / 2*pi (pre-rounding). Throws numerical_error
/// when a step exceeds pi/2.
double phase_winding(const std::vector<Complex>& samples);

/// Determinant winding of a square family along a closed loop. Requires
/// sigma_min > tol on every sample (gap closure otherwise). Resolution is
/// doubled automatically up to 2^14 samples before failing.
int det_winding(const RigidityPolynomial& r, const LoopSpec& loop,
                double tol = 1e-9, ExecMode mode = ExecMode::kParallel);

/// det_winding along each axis cycle through the base point.
std::vector<int> cycle_windings(const RigidityPolynomial& r, int resolution,
                                const std::vector<double>& basepoint = {},
                                double tol = 1e-9,
                                ExecMode mode = ExecMode::kParallel);

/// Signs of the (real) values of a 1x1 AIII/BDI family at the TRIMs, in
/// trims() order.
std::vector<std::pair<Momentum, int>> trim_signs(const RigidityPolynomial& r,
                                                 double tol = 1e-9);

}  // namespace rigidity
