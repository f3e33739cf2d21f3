#pragma once

#include <vector>

#include "rigidity/polynomial.hpp"

namespace rigidity::reference {

// Channel-ordered reference forms of the builtin models: in-plane rows first,
// then out-of-plane rows; in-plane columns first, then out-of-plane columns.
// This is the ordering the matrices are usually printed in; the library's
// linearizer uses family-major rows and sublattice-major columns, related by
// the recorded permutations below.

RigidityPolynomial j1j2_matrix();                 // 2x2, d = 2 (orderings coincide)
RigidityPolynomial anisotropic_channel_matrix();  // 12x4, d = 2
RigidityPolynomial pyrochlore_channel_matrix();   // 4x8, d = 3

/// perm[i] = library row index holding channel-ordered row i.
std::vector<int> channel_row_perm(int families);
/// perm[j] = library column index holding channel-ordered column j.
std::vector<int> channel_col_perm(int sublattices);

}  // namespace rigidity::reference
