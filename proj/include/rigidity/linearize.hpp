#pragma once

#include "rigidity/model.hpp"
#include "rigidity/polynomial.hpp"

namespace rigidity {

/// Linearize collinear ground-state constraints.
///
/// Output shape: N = 2*S columns (two transverse degrees per sublattice) and
/// M = 2*F rows (two channels per constraint family). Each family emits an
/// in-plane row with per-term weight coeff*spin_sign and an out-of-plane row
/// with weight coeff; each term lands on the monomial with exponent equal to
/// its cell offset, phase convention e^{+i k.x}.
///
/// Orderings (fixed convention, permutations to other conventions are the
/// caller's business): columns sublattice-major with (dq, dp) minor, so
/// column 2s is the in-plane degree of sublattice s; rows family-major with
/// (in-plane, out-of-plane) minor, so row 2f is the in-plane channel of
/// family f.
RigidityPolynomial linearize_collinear(const SpinModel& model);

}  // namespace rigidity
