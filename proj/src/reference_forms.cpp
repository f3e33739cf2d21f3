#include "rigidity/reference_forms.hpp"

namespace rigidity::reference {

RigidityPolynomial j1j2_matrix() {
  RigidityPolynomial r(2, 2, 2);
  r.add_entry({0, 0}, 0, 0, 1.0);
  r.add_entry({1, 0}, 0, 0, -1.0);
  r.add_entry({0, 1}, 0, 0, -1.0);
  r.add_entry({1, 1}, 0, 0, 1.0);
  r.add_entry({0, 0}, 1, 1, 1.0);
  r.add_entry({1, 0}, 1, 1, 1.0);
  r.add_entry({0, 1}, 1, 1, 1.0);
  r.add_entry({1, 1}, 1, 1, 1.0);
  return r;
}

RigidityPolynomial anisotropic_channel_matrix() {
  RigidityPolynomial r(12, 4, 2);
  // in-plane block, columns (q0, q1)
  r.add_entry({0, 0}, 0, 0, 1.0);   // 1 + e^{ik1}
  r.add_entry({1, 0}, 0, 0, 1.0);
  r.add_entry({0, 0}, 0, 1, -1.0);  // -1 - e^{-ik2}
  r.add_entry({0, -1}, 0, 1, -1.0);
  r.add_entry({0, 0}, 1, 0, 1.0);   // 1 + e^{ik2}
  r.add_entry({0, 1}, 1, 0, 1.0);
  r.add_entry({0, 0}, 1, 1, -1.0);  // -1 - e^{-ik1}
  r.add_entry({-1, 0}, 1, 1, -1.0);
  r.add_entry({0, -1}, 2, 1, 1.0);  // e^{-ik2} - 1
  r.add_entry({0, 0}, 2, 1, -1.0);
  r.add_entry({0, 0}, 3, 0, 1.0);   // 1 - e^{ik1}
  r.add_entry({1, 0}, 3, 0, -1.0);
  r.add_entry({0, 0}, 4, 1, 1.0);   // 1 - e^{-ik1}
  r.add_entry({-1, 0}, 4, 1, -1.0);
  r.add_entry({0, 1}, 5, 0, 1.0);   // e^{ik2} - 1
  r.add_entry({0, 0}, 5, 0, -1.0);
  // out-of-plane block, columns (p0, p1)
  r.add_entry({0, 0}, 6, 2, 1.0);   // 1 + e^{ik1}
  r.add_entry({1, 0}, 6, 2, 1.0);
  r.add_entry({0, 0}, 6, 3, 1.0);   // 1 + e^{-ik2}
  r.add_entry({0, -1}, 6, 3, 1.0);
  r.add_entry({0, 0}, 7, 2, 1.0);   // 1 + e^{ik2}
  r.add_entry({0, 1}, 7, 2, 1.0);
  r.add_entry({0, 0}, 7, 3, 1.0);   // 1 + e^{-ik1}
  r.add_entry({-1, 0}, 7, 3, 1.0);
  r.add_entry({0, 0}, 8, 3, 1.0);   // 1 - e^{-ik2}
  r.add_entry({0, -1}, 8, 3, -1.0);
  r.add_entry({0, 0}, 9, 2, 1.0);   // 1 - e^{ik1}
  r.add_entry({1, 0}, 9, 2, -1.0);
  r.add_entry({-1, 0}, 10, 3, 1.0); // e^{-ik1} - 1
  r.add_entry({0, 0}, 10, 3, -1.0);
  r.add_entry({0, 1}, 11, 2, 1.0);  // e^{ik2} - 1
  r.add_entry({0, 0}, 11, 2, -1.0);
  return r;
}

RigidityPolynomial pyrochlore_channel_matrix() {
  RigidityPolynomial r(4, 8, 3);
  // in-plane rows, columns (q0..q3)
  r.add_entry({0, 0, 0}, 0, 0, 1.0);
  r.add_entry({0, 0, 0}, 0, 1, -1.0);
  r.add_entry({0, 0, 0}, 0, 2, 1.0);
  r.add_entry({0, 0, 0}, 0, 3, -1.0);
  r.add_entry({0, 0, 0}, 1, 0, 1.0);
  r.add_entry({0, 1, -1}, 1, 1, -1.0);
  r.add_entry({0, 0, -1}, 1, 2, 1.0);
  r.add_entry({1, 0, -1}, 1, 3, -1.0);
  // out-of-plane rows, columns (p0..p3)
  r.add_entry({0, 0, 0}, 2, 4, 1.0);
  r.add_entry({0, 0, 0}, 2, 5, 1.0);
  r.add_entry({0, 0, 0}, 2, 6, 1.0);
  r.add_entry({0, 0, 0}, 2, 7, 1.0);
  r.add_entry({0, 0, 0}, 3, 4, 1.0);
  r.add_entry({0, 1, -1}, 3, 5, 1.0);
  r.add_entry({0, 0, -1}, 3, 6, 1.0);
  r.add_entry({1, 0, -1}, 3, 7, 1.0);
  return r;
}

std::vector<int> channel_row_perm(int families) {
  std::vector<int> perm(2 * families);
  for (int i = 0; i < families; ++i) {
    perm[i] = 2 * i;                  // in-plane channel of family i
    perm[families + i] = 2 * i + 1;   // out-of-plane channel
  }
  return perm;
}

std::vector<int> channel_col_perm(int sublattices) {
  std::vector<int> perm(2 * sublattices);
  for (int j = 0; j < sublattices; ++j) {
    perm[j] = 2 * j;
    perm[sublattices + j] = 2 * j + 1;
  }
  return perm;
}

}  // namespace rigidity::reference
